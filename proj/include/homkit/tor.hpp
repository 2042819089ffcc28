#pragma once

#include "resolution.hpp"

namespace homkit {

/**
 * Tensor product of finitely presented modules, presented on the pairwise
 * generator products: generator (i, j) of m (x) n has index i * gens(n) + j,
 * with relations R_m (x) I and I (x) R_n.
 */
inline FpModule tensor(const FpModule& m, const FpModule& n) {
    if (m.ring() != n.ring()) throw UsageError("tensor: mixed rings");
    const Ring& ring = m.ring();
    Matrix left = Matrix::kronecker(m.relations(), Matrix::identity(ring, n.generators()));
    Matrix right = Matrix::kronecker(Matrix::identity(ring, m.generators()), n.relations());
    return FpModule(ring, m.generators() * n.generators(), left.hstack(right));
}

/// f (x) id_n.
inline ModuleHom tensor_hom(const ModuleHom& f, const FpModule& n) {
    Matrix map = Matrix::kronecker(f.matrix(), Matrix::identity(n.ring(), n.generators()));
    return ModuleHom(tensor(f.domain(), n), tensor(f.codomain(), n), map);
}

/// id_m (x) f.
inline ModuleHom tensor_hom(const FpModule& m, const ModuleHom& f) {
    Matrix map = Matrix::kronecker(Matrix::identity(m.ring(), m.generators()), f.matrix());
    return ModuleHom(tensor(m, f.domain()), tensor(m, f.codomain()), map);
}

/// Apply  - (x) n  degreewise to a complex.
inline ChainComplex apply_tensor_to_complex(const ChainComplex& c, const FpModule& n) {
    std::vector<FpModule> mods;
    std::vector<ModuleHom> diffs;
    for (int k = c.lo(); k <= c.hi(); ++k) mods.push_back(tensor(c.module_at(k), n));
    for (int k = c.lo() + 1; k <= c.hi(); ++k) {
        Matrix m = Matrix::kronecker(c.boundary_at(k).matrix(),
                                     Matrix::identity(n.ring(), n.generators()));
        diffs.emplace_back(mods[size_t(k - c.lo())], mods[size_t(k - c.lo() - 1)], m);
    }
    return ChainComplex(c.ring(), c.lo(), std::move(mods), std::move(diffs));
}

/// Apply  m (x) -  degreewise to a complex.
inline ChainComplex apply_tensor_to_complex(const FpModule& m, const ChainComplex& c) {
    std::vector<FpModule> mods;
    std::vector<ModuleHom> diffs;
    for (int k = c.lo(); k <= c.hi(); ++k) mods.push_back(tensor(m, c.module_at(k)));
    for (int k = c.lo() + 1; k <= c.hi(); ++k) {
        Matrix mm = Matrix::kronecker(Matrix::identity(m.ring(), m.generators()),
                                      c.boundary_at(k).matrix());
        diffs.emplace_back(mods[size_t(k - c.lo())], mods[size_t(k - c.lo() - 1)], mm);
    }
    return ChainComplex(c.ring(), c.lo(), std::move(mods), std::move(diffs));
}

/// Which argument of Tor to resolve.
enum class ResolveSide { Left, Right };

/**
 * Tor_i(m, n), computed by resolving one argument freely (the right one by
 * default), tensoring with the other and taking homology at degree i.
 * Degree 0 is the plain tensor product.  The two sides agree up to
 * isomorphism (balancing); the returned presentations differ.
 */
inline FpModule tor(const FpModule& m, const FpModule& n, int degree,
                    ResolveSide side = ResolveSide::Right) {
    if (degree < 0) throw UsageError("negative Tor degree");
    if (degree == 0) return tensor(m, n);
    if (side == ResolveSide::Right) {
        Resolution q = free_resolution(n, degree + 1);
        return homology(apply_tensor_to_complex(m, q.as_complex()), degree);
    }
    Resolution p = free_resolution(m, degree + 1);
    return homology(apply_tensor_to_complex(p.as_complex(), n), degree);
}

/**
 * Map Tor_i(f, n): Tor_i(A, n) -> Tor_i(B, n) induced by f: A -> B:
 * resolve both ends, lift f between the resolutions, tensor with n, and
 * take the induced map on homology.
 */
inline ModuleHom tor_hom(const ModuleHom& f, const FpModule& n, int degree) {
    if (degree < 0) throw UsageError("negative Tor degree");
    if (degree == 0) return tensor_hom(f, n);
    Resolution p = free_resolution(f.domain(), degree + 1);
    Resolution q = free_resolution(f.codomain(), degree + 1);
    ChainMap lift = lift_between_resolutions(f, p, q);
    ChainComplex tp = apply_tensor_to_complex(p.as_complex(), n);
    ChainComplex tq = apply_tensor_to_complex(q.as_complex(), n);
    std::map<int, Matrix> levels;
    for (int k = 0; k <= (p.depth() < q.depth() ? p.depth() : q.depth()); ++k)
        levels.emplace(k, Matrix::kronecker(lift.level(k).matrix(),
                                            Matrix::identity(n.ring(), n.generators())));
    return induced_on_homology(make_chain_map(tp, tq, levels), degree);
}

/**
 * The x-torsion submodule of m: the kernel of multiplication by x.
 */
inline ModulePart torsion_part(const FpModule& m, const Int& x) {
    return kernel(ModuleHom::scalar(m, x));
}

/**
 * Long exact sequence of Tor groups
 *
 *   Tor_k(A,N) -> Tor_k(B,N) -> Tor_k(C,N) -> Tor_{k-1}(A,N) -> ...
 *                                    ... -> A(x)N -> B(x)N -> C(x)N
 *
 * for a short exact sequence 0 -> A -> B -> C -> 0, running from degree
 * `up_to` down to 0.  Built by the horseshoe construction: resolutions of
 * A and C assemble to one of B, the tensored split columns form a short
 * exact sequence of complexes, and its homology long exact sequence is the
 * result (trimmed of the top artifact row).  Exactness is machine-checked.
 */
inline LongExactSequence tor_les(const ShortExactSeqModules& ses, const FpModule& n, int up_to) {
    if (up_to < 0) throw UsageError("negative Tor degree");
    const Ring& ring = ses.a.ring();
    const int d = up_to + 1;  // synthesize one degree beyond what we report
    Resolution pa = free_resolution(ses.a, d);
    Resolution pc = free_resolution(ses.c, d);

    // Horseshoe: theta_i = [[phi_i, gamma_i], [0, psi_i]] on P_i (+) Q_i.
    // beta lifts C's augmentation through g; each gamma_i corrects the
    // failure of the naive block map to be a complex, one degree at a time.
    Matrix beta = detail::solve_mod(ses.g.matrix(), ses.c.relations(),
                                    pc.augmentation().matrix(), "horseshoe: lift of augmentation");
    std::vector<Matrix> gamma(size_t(d) + 1, Matrix(ring, 0, 0));
    for (int i = 1; i <= d; ++i) {
        int rows = pa.rank(i - 1), cols = pc.rank(i);
        Matrix psi = i <= pc.depth() ? pc.map(i).matrix() : Matrix::zero(ring, pc.rank(i - 1), 0);
        if (rows == 0 || cols == 0) {
            gamma[size_t(i)] = Matrix::zero(ring, rows, cols);
            continue;
        }
        Matrix rhs = i == 1 ? Matrix(-(beta * psi)) : Matrix(-(gamma[size_t(i) - 1] * psi));
        if (i == 1) {
            // f eps_A gamma_1 = -beta psi_1 modulo B's relations.
            Matrix lhs = ses.f.matrix() * pa.augmentation().matrix();
            gamma[1] = detail::solve_mod(lhs, ses.b.relations(), rhs, "horseshoe: gamma_1");
        } else {
            auto x = solve(pa.map(i - 1).matrix(), rhs);
            if (!x) throw std::logic_error("horseshoe: gamma failed at degree " + std::to_string(i));
            gamma[size_t(i)] = *x;
        }
    }

    // Tensored split columns 0 -> P (x) N -> (P(+)Q) (x) N -> Q (x) N -> 0,
    // all padded to the window [0, d] (zero modules beyond actual depth).
    auto free_tensored = [&](int r) {
        return FpModule(ring, r * n.generators(),
                        Matrix::kronecker(Matrix::identity(ring, r), n.relations()));
    };
    std::vector<FpModule> ma, mb, mc;
    std::vector<ModuleHom> da, db, dc;
    std::map<int, Matrix> fl, gl;
    Matrix id_n = Matrix::identity(ring, n.generators());
    for (int i = 0; i <= d; ++i) {
        int ra = pa.rank(i), rc = pc.rank(i);
        ma.push_back(free_tensored(ra));
        mc.push_back(free_tensored(rc));
        mb.push_back(free_tensored(ra + rc));
        Matrix inc = Matrix::identity(ring, ra).vstack(Matrix::zero(ring, rc, ra));
        Matrix prj = Matrix::zero(ring, rc, ra).hstack(Matrix::identity(ring, rc));
        fl.emplace(i, Matrix::kronecker(inc, id_n));
        gl.emplace(i, Matrix::kronecker(prj, id_n));
    }
    for (int i = 1; i <= d; ++i) {
        Matrix phi = i <= pa.depth() ? pa.map(i).matrix() : Matrix::zero(ring, pa.rank(i - 1), 0);
        Matrix psi = i <= pc.depth() ? pc.map(i).matrix() : Matrix::zero(ring, pc.rank(i - 1), 0);
        Matrix theta = phi.hstack(gamma[size_t(i)]).vstack(
            Matrix::zero(ring, pc.rank(i - 1), pa.rank(i)).hstack(psi));
        da.emplace_back(ma[size_t(i)], ma[size_t(i) - 1], Matrix::kronecker(phi, id_n));
        db.emplace_back(mb[size_t(i)], mb[size_t(i) - 1], Matrix::kronecker(theta, id_n));
        dc.emplace_back(mc[size_t(i)], mc[size_t(i) - 1], Matrix::kronecker(psi, id_n));
    }
    ChainComplex ta(ring, 0, std::move(ma), std::move(da));
    ChainComplex tb(ring, 0, std::move(mb), std::move(db));
    ChainComplex tc(ring, 0, std::move(mc), std::move(dc));
    ShortExactSeqComplexes sesc(ta, tb, tc, make_chain_map(ta, tb, fl), make_chain_map(tb, tc, gl));

    LongExactSequence les = long_exact_sequence(sesc);
    // Degree d exists only to make the connecting map into degree up_to
    // correct; drop its row (H_d entries and the three leading maps).
    les.modules.erase(les.modules.begin(), les.modules.begin() + 3);
    les.maps.erase(les.maps.begin(), les.maps.begin() + 3);
    les.labels.erase(les.labels.begin(), les.labels.begin() + 3);
    for (size_t i = 0; i < les.labels.size(); ++i) {
        int deg = up_to - int(i) / 3;
        const char* names[3] = {"A", "B", "C"};
        const char* name = names[i % 3];
        les.labels[i] = deg == 0 ? std::string(name) + "(x)N"
                                 : "Tor_" + std::to_string(deg) + "(" + name + ",N)";
    }
    return les;
}

}  // namespace homkit
