#pragma once

#include "diagram.hpp"
#include "homotopy.hpp"

#include <optional>
#include <vector>

namespace homkit {

/// A free module surjecting onto m, one cover generator per generator of m.
struct FreeCover {
    FpModule cover;
    ModuleHom onto;
};

inline FreeCover free_cover(const FpModule& m) {
    FpModule p = FpModule::free_module(m.ring(), m.generators());
    ModuleHom onto(p, m, Matrix::identity(m.ring(), m.generators()));
    return {std::move(p), std::move(onto)};
}

/**
 * Lift f: P -> N through a surjection phi: M -> N, i.e. find h: P -> M
 * with phi h = f.  Throws NotSurjective when phi is not onto; returns
 * nullopt when no lift exists (possible when P is not projective).
 */
inline std::optional<ModuleHom> lift_through_surjection(const ModuleHom& f, const ModuleHom& phi) {
    if (f.codomain() != phi.codomain()) throw UsageError("lift: codomains differ");
    if (!is_surjective(phi)) throw NotSurjective("cannot lift through a non-surjection");
    const Ring& ring = f.domain().ring();
    const FpModule& p = f.domain();
    const FpModule& m = phi.domain();
    const FpModule& n = phi.codomain();

    detail::BlockSystem sys(ring);
    int gp = p.generators(), gm = m.generators(), gn = n.generators();
    int h = sys.add_unknowns(gm * gp);
    if (gn > 0 && gp > 0) {
        // phi h = f modulo the relations of N.
        int eq = sys.add_equations(f.matrix().vec());
        sys.set(eq, h, Matrix::kronecker(Matrix::identity(ring, gp), phi.matrix()));
        const Matrix& reln = n.relations();
        if (reln.cols() > 0) {
            int w = sys.add_unknowns(reln.cols() * gp);
            sys.set(eq, w, Matrix::kronecker(Matrix::identity(ring, gp), reln));
        }
    }
    // Well-definedness of h: h R_P = R_M X.
    const Matrix& relp = p.relations();
    if (relp.cols() > 0 && gm > 0) {
        int eq = sys.add_equations(Matrix::zero(ring, gm * relp.cols(), 1));
        sys.set(eq, h, Matrix::kronecker(relp.transpose(), Matrix::identity(ring, gm)));
        const Matrix& relm = m.relations();
        if (relm.cols() > 0) {
            int x = sys.add_unknowns(relm.cols() * relp.cols());
            sys.set(eq, x, -Matrix::kronecker(Matrix::identity(ring, relp.cols()), relm));
        }
    }
    auto sol = sys.solve_all();
    if (!sol) return std::nullopt;
    ModuleHom lift(p, m, Matrix::unvec(ring, gm, gp, sys.extract(*sol, h)));
    if (!hom_equal(compose(lift, phi), f)) throw std::logic_error("lift failed verification");
    return lift;
}

/// Projective iff the identity lifts through the free cover's surjection.
inline bool is_projective(const FpModule& m) {
    return lift_through_surjection(ModuleHom::identity(m), free_cover(m).onto).has_value();
}

/**
 * A splitting of 0 -> A -> B -g-> C -> 0: a section h: C -> B with
 * g h = id_C, when one exists.
 */
inline std::optional<ModuleHom> find_splitting_ses(const ShortExactSeqModules& ses) {
    return lift_through_surjection(ModuleHom::identity(ses.c), ses.g);
}

/**
 * Free resolution ... -> P_2 -> P_1 -> P_0 -> M -> 0 of bounded depth.
 *
 * P_0 is the free cover on M's generators (never pruned), and each map's
 * columns generate the kernel of the previous one.  complete() reports
 * whether the last kernel computed was zero, i.e. whether extending the
 * resolution further would only add zero modules.  Over Z completion at
 * depth <= 1 is automatic; over Z/m resolutions may run forever and are
 * cut off at the requested depth.
 */
class Resolution {
public:
    /**
     * Wrap and validate resolution data: every module must be free, the
     * augmented sequence P_depth -> ... -> P_0 -> M must be a complex and
     * exact at every degree below the top, and when `complete` is claimed
     * the top map must be injective too.
     */
    Resolution(FpModule target, ModuleHom augmentation, std::vector<ModuleHom> maps, bool complete)
        : target_(std::move(target)), aug_(std::move(augmentation)), maps_(std::move(maps)),
          complete_(complete) {
        if (aug_.codomain() != target_) throw UsageError("augmentation must land in the target");
        require_free(aug_.domain());
        for (const ModuleHom& f : maps_) require_free(f.domain());
        ChainComplex c = augmented_complex();  // validates composites are zero
        for (int n = -1; n < depth(); ++n)
            if (!is_exact_at(c, n)) throw RowNotExact("resolution degree " + std::to_string(n));
        if (complete_ && !is_exact_at(c, depth()))
            throw RowNotExact("resolution claimed complete but top map has kernel");
    }

    const FpModule& target() const { return target_; }
    int depth() const { return int(maps_.size()); }
    bool complete() const { return complete_; }

    const ModuleHom& augmentation() const { return aug_; }

    /// phi_i: P_i -> P_{i-1}, 1 <= i <= depth().
    const ModuleHom& map(int i) const {
        if (i < 1 || i > depth()) throw UsageError("resolution map index out of range");
        return maps_[size_t(i) - 1];
    }

    /// Rank of P_i (0 beyond depth).
    int rank(int i) const {
        if (i < 0) throw UsageError("negative resolution index");
        if (i == 0) return aug_.domain().generators();
        return i <= depth() ? maps_[size_t(i) - 1].domain().generators() : 0;
    }

    /// P_depth -> ... -> P_0 in degrees [0, depth].
    ChainComplex as_complex() const {
        std::vector<FpModule> mods{aug_.domain()};
        for (const ModuleHom& f : maps_) mods.push_back(f.domain());
        return ChainComplex(target_.ring(), 0, std::move(mods), maps_);
    }

    /// Same with M adjoined in degree -1 via the augmentation.
    ChainComplex augmented_complex() const {
        std::vector<FpModule> mods{target_, aug_.domain()};
        for (const ModuleHom& f : maps_) mods.push_back(f.domain());
        std::vector<ModuleHom> diffs{aug_};
        for (const ModuleHom& f : maps_) diffs.push_back(f);
        return ChainComplex(target_.ring(), -1, std::move(mods), std::move(diffs));
    }

private:
    static void require_free(const FpModule& p) {
        if (p.relations().cols() != 0) throw UsageError("resolution modules must be free");
    }

    FpModule target_;
    ModuleHom aug_;
    std::vector<ModuleHom> maps_;
    bool complete_;
};

namespace detail {

/// Lattice basis of the kernel of the augmentation P_0 -> M, i.e. of M's
/// relation span, straight from the cached Smith form of the lattice.
inline Matrix augmentation_kernel_basis(const FpModule& m) {
    const SmithForm& s = m.lattice_snf();
    Matrix k(Ring::integers(), m.generators(), s.rank);
    for (int j = 0; j < s.rank; ++j)
        for (int i = 0; i < m.generators(); ++i)
            k.set(i, j, s.u_inv.at(i, j) * s.d.at(j, j));
    if (m.ring().is_integers()) return canonical_column_signs(k);
    return k.with_ring(m.ring()).drop_zero_cols();
}

}  // namespace detail

/// Synthesize a free resolution of m to the requested depth.
inline Resolution free_resolution(const FpModule& m, int depth) {
    if (depth < 0) throw UsageError("negative resolution depth");
    const Ring& ring = m.ring();
    FreeCover cover = free_cover(m);
    std::vector<ModuleHom> maps;
    Matrix k = detail::augmentation_kernel_basis(m);
    FpModule prev = cover.cover;
    bool complete = false;
    for (int i = 1; i <= depth; ++i) {
        if (k.cols() == 0) {
            complete = true;
            break;
        }
        FpModule pi = FpModule::free_module(ring, k.cols());
        maps.emplace_back(pi, prev, k);
        k = kernel_basis(k);
        prev = std::move(pi);
    }
    if (!complete && k.cols() == 0) complete = true;
    return Resolution(m, cover.onto, std::move(maps), complete);
}

/**
 * Lift f: M -> N to a chain map between resolutions of M and N.  Levels
 * are produced degree by degree up to the shorter depth; the failure mode
 * when the target resolution is cut off too early while the source still
 * has maps surfaces as SquareFails from the chain-map validation.
 */
inline ChainMap lift_between_resolutions(const ModuleHom& f, const Resolution& p,
                                         const Resolution& q) {
    if (f.domain() != p.target() || f.codomain() != q.target())
        throw UsageError("lift_between_resolutions: f must map p's target to q's target");
    std::map<int, Matrix> levels;
    // Degree 0: lift f . aug_p through the surjection aug_q.
    Matrix prev = detail::solve_mod(q.augmentation().matrix(), q.target().relations(),
                                    f.matrix() * p.augmentation().matrix(), "resolution lift 0");
    levels.emplace(0, prev);
    int d = p.depth() < q.depth() ? p.depth() : q.depth();
    for (int i = 1; i <= d; ++i) {
        // Free targets: solve psi_i x = F_{i-1} phi_i exactly.
        auto x = solve(q.map(i).matrix(), prev * p.map(i).matrix());
        if (!x)
            throw std::logic_error("resolution lift failed at degree " + std::to_string(i));
        levels.emplace(i, *x);
        prev = *x;
    }
    return make_chain_map(p.as_complex(), q.as_complex(), levels);
}

}  // namespace homkit
