#pragma once

#include "module.hpp"

#include <map>
#include <vector>

namespace homkit {

/**
 * Bounded chain complex ... -> C_{n+1} -> C_n -> C_{n-1} -> ... supported
 * on the window [lo(), hi()]; modules outside the window are zero and the
 * boundary lowers degree by one.  Construction verifies that consecutive
 * boundaries compose to zero and throws NotAComplex otherwise.
 */
class ChainComplex {
public:
    /**
     * modules[i] sits in degree lo + i; boundaries[i] is
     * d_{lo+i+1}: modules[i+1] -> modules[i].
     */
    ChainComplex(Ring ring, int lo, std::vector<FpModule> modules, std::vector<ModuleHom> boundaries)
        : ring_(std::move(ring)), lo_(lo), mods_(std::move(modules)), diffs_(std::move(boundaries)) {
        if (mods_.empty()) throw UsageError("complex needs at least one degree");
        if (diffs_.size() + 1 != mods_.size())
            throw UsageError("complex needs exactly one boundary per adjacent pair");
        for (const FpModule& m : mods_)
            if (m.ring() != ring_) throw UsageError("complex module ring mismatch");
        for (size_t i = 0; i < diffs_.size(); ++i) {
            if (diffs_[i].domain() != mods_[i + 1] || diffs_[i].codomain() != mods_[i])
                throw UsageError("boundary at degree " + std::to_string(lo_ + int(i) + 1) +
                                 " does not match adjacent modules");
        }
        for (size_t i = 0; i + 1 < diffs_.size(); ++i)
            if (!compose(diffs_[i + 1], diffs_[i]).is_zero_hom()) throw NotAComplex(lo_ + int(i) + 2);
    }

    static ChainComplex zero_complex(Ring ring, int lo, int hi) {
        if (hi < lo) throw UsageError("empty window");
        std::vector<FpModule> mods(size_t(hi - lo + 1), FpModule::zero(ring));
        std::vector<ModuleHom> diffs(size_t(hi - lo), ModuleHom::zero(mods[0], mods[0]));
        return ChainComplex(std::move(ring), lo, std::move(mods), std::move(diffs));
    }

    /// One module concentrated in a single degree.
    static ChainComplex concentrated(const FpModule& m, int degree) {
        return ChainComplex(m.ring(), degree, {m}, {});
    }

    const Ring& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + int(mods_.size()) - 1; }
    bool in_window(int n) const { return n >= lo() && n <= hi(); }

    /// Module at degree n; the zero module outside the window.
    FpModule module_at(int n) const {
        return in_window(n) ? mods_[size_t(n - lo_)] : FpModule::zero(ring_);
    }

    /// d_n: C_n -> C_{n-1}; a zero map when either side is outside the window.
    ModuleHom boundary_at(int n) const {
        if (n >= lo_ + 1 && n <= hi()) return diffs_[size_t(n - lo_ - 1)];
        return ModuleHom::zero(module_at(n), module_at(n - 1));
    }

private:
    Ring ring_;
    int lo_;
    std::vector<FpModule> mods_;
    std::vector<ModuleHom> diffs_;
};

/**
 * Homology at one degree, with enough witnesses to express cycles in
 * homology coordinates and lift homology generators back to chains.
 */
struct HomologyData {
    FpModule cycles;           ///< kernel of d_n on its own generators
    ModuleHom cycle_incl;      ///< cycles -> C_n
    Matrix boundary_in_cycles; ///< d_{n+1} generators written in cycle coordinates
    FpModule homology;         ///< cycles with boundaries adjoined as relations
    Matrix express;            ///< [cycle gens | relations of C_n]: solve to map chains to cycles

    /**
     * Coordinates in homology of cycle columns given in C_n coordinates.
     * The columns must be cycles; throws AlgebraError otherwise.
     */
    Matrix cycles_to_homology(const Matrix& zs) const {
        auto sol = solve(express, zs);
        if (!sol) throw AlgebraError("column is not a cycle at this degree");
        return sol->rows_slice(0, cycles.generators());
    }

    /// Chain representative in C_n of a homology coordinate column.
    Matrix homology_to_chain(const Matrix& h) const { return cycle_incl.matrix() * h; }
};

inline HomologyData homology_data(const ChainComplex& c, int n) {
    ModuleHom dn = c.boundary_at(n);
    ModulePart z = kernel(dn);
    Matrix dn1 = c.boundary_at(n + 1).matrix();
    Matrix express = z.map.matrix().hstack(c.module_at(n).relations());
    auto y = solve(express, dn1);
    if (!y) throw AlgebraError("boundaries do not land in cycles (not a complex)");
    Matrix boundaries = y->rows_slice(0, z.module.generators());
    FpModule h(c.ring(), z.module.generators(), z.module.relations().hstack(boundaries));
    return {std::move(z.module), std::move(z.map), std::move(boundaries), std::move(h),
            std::move(express)};
}

/// H_n(c) as a finitely presented module (zero module outside the window).
inline FpModule homology(const ChainComplex& c, int n) { return homology_data(c, n).homology; }

/**
 * Exactness at degree n, decided two independent ways that are asserted to
 * agree: H_n = 0, and image(d_{n+1}) = kernel(d_n) as submodules of C_n.
 */
inline bool is_exact_at(const ChainComplex& c, int n) {
    bool by_homology = homology(c, n).is_zero_module();
    bool by_images = same_image(image(c.boundary_at(n + 1)).map, kernel(c.boundary_at(n)).map);
    if (by_homology != by_images)
        throw std::logic_error("exactness checks disagree at degree " + std::to_string(n));
    return by_homology;
}

/// Exact at every degree of the window (and trivially outside).
inline bool is_exact(const ChainComplex& c) {
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (!is_exact_at(c, n)) return false;
    return true;
}

/**
 * Map of chain complexes: one ModuleHom per degree, commuting with the
 * boundaries.  Degrees absent from `levels` carry the zero map.
 * Construction checks every square and throws SquareFails on violation.
 */
class ChainMap {
public:
    ChainMap(ChainComplex source, ChainComplex target, std::map<int, ModuleHom> levels)
        : src_(std::move(source)), tgt_(std::move(target)), levels_(std::move(levels)) {
        if (src_.ring() != tgt_.ring()) throw UsageError("chain map ring mismatch");
        for (const auto& [n, f] : levels_) {
            if (f.domain() != src_.module_at(n) || f.codomain() != tgt_.module_at(n))
                throw UsageError("chain map level " + std::to_string(n) +
                                 " does not match the complexes");
        }
        int a = src_.lo() < tgt_.lo() ? src_.lo() : tgt_.lo();
        int b = src_.hi() > tgt_.hi() ? src_.hi() : tgt_.hi();
        for (int n = a; n <= b + 1; ++n) {
            ModuleHom lhs = compose(level(n), tgt_.boundary_at(n));
            ModuleHom rhs = compose(src_.boundary_at(n), level(n - 1));
            if (!hom_equal(lhs, rhs)) throw SquareFails(n);
        }
    }

    const ChainComplex& source() const { return src_; }
    const ChainComplex& target() const { return tgt_; }

    /// Level map at degree n (zero where unspecified or outside windows).
    ModuleHom level(int n) const {
        auto it = levels_.find(n);
        if (it != levels_.end()) return it->second;
        return ModuleHom::zero(src_.module_at(n), tgt_.module_at(n));
    }

    const std::map<int, ModuleHom>& levels() const { return levels_; }

private:
    ChainComplex src_, tgt_;
    std::map<int, ModuleHom> levels_;
};

/// Build a chain map from raw per-degree matrices (validated throughout).
inline ChainMap make_chain_map(const ChainComplex& src, const ChainComplex& tgt,
                               const std::map<int, Matrix>& levels) {
    std::map<int, ModuleHom> homs;
    for (const auto& [n, m] : levels)
        homs.emplace(n, ModuleHom(src.module_at(n), tgt.module_at(n), m));
    return ChainMap(src, tgt, std::move(homs));
}

inline ChainMap identity_chain_map(const ChainComplex& c) {
    std::map<int, ModuleHom> levels;
    for (int n = c.lo(); n <= c.hi(); ++n) levels.emplace(n, ModuleHom::identity(c.module_at(n)));
    return ChainMap(c, c, std::move(levels));
}

inline ChainMap zero_chain_map(const ChainComplex& src, const ChainComplex& tgt) {
    return ChainMap(src, tgt, {});
}

/// v after u, degreewise.
inline ChainMap compose_chain(const ChainMap& u, const ChainMap& v) {
    std::map<int, ModuleHom> levels;
    int a = u.source().lo(), b = u.source().hi();
    for (int n = a; n <= b; ++n) levels.emplace(n, compose(u.level(n), v.level(n)));
    return ChainMap(u.source(), v.target(), std::move(levels));
}

inline ChainMap add_chain(const ChainMap& u, const ChainMap& v) {
    std::map<int, ModuleHom> levels;
    int a = u.source().lo() < v.source().lo() ? u.source().lo() : v.source().lo();
    int b = u.source().hi() > v.source().hi() ? u.source().hi() : v.source().hi();
    for (int n = a; n <= b; ++n) levels.emplace(n, u.level(n) + v.level(n));
    return ChainMap(u.source(), u.target(), std::move(levels));
}

inline ChainMap sub_chain(const ChainMap& u, const ChainMap& v) {
    std::map<int, ModuleHom> levels;
    int a = u.source().lo() < v.source().lo() ? u.source().lo() : v.source().lo();
    int b = u.source().hi() > v.source().hi() ? u.source().hi() : v.source().hi();
    for (int n = a; n <= b; ++n) levels.emplace(n, u.level(n) - v.level(n));
    return ChainMap(u.source(), u.target(), std::move(levels));
}

namespace detail {

/// Induced map on homology from precomputed degree data (no revalidation).
inline ModuleHom induced_with(const HomologyData& hs, const HomologyData& ht,
                              const Matrix& level_matrix) {
    Matrix z = level_matrix * hs.cycle_incl.matrix();
    Matrix y = ht.cycles_to_homology(z);
    return ModuleHom(hs.homology, ht.homology, y).canonicalized();
}

}  // namespace detail

/**
 * Map induced by u on homology at degree n.  Well defined independently of
 * the choices inside (cycle coordinates are canonicalized on output).
 */
inline ModuleHom induced_on_homology(const ChainMap& u, int n) {
    HomologyData hs = homology_data(u.source(), n);
    HomologyData ht = homology_data(u.target(), n);
    return detail::induced_with(hs, ht, u.level(n).matrix());
}

/// Quasi-isomorphism: induced map iso at every degree of both windows.
inline bool is_quasi_iso(const ChainMap& u) {
    int a = u.source().lo() < u.target().lo() ? u.source().lo() : u.target().lo();
    int b = u.source().hi() > u.target().hi() ? u.source().hi() : u.target().hi();
    for (int n = a; n <= b; ++n)
        if (!is_isomorphism(induced_on_homology(u, n))) return false;
    return true;
}

/// Degreewise direct sum on the union of the windows.
inline ChainComplex direct_sum_complex(const ChainComplex& c, const ChainComplex& d) {
    if (c.ring() != d.ring()) throw UsageError("direct_sum_complex: mixed rings");
    int a = c.lo() < d.lo() ? c.lo() : d.lo();
    int b = c.hi() > d.hi() ? c.hi() : d.hi();
    std::vector<FpModule> mods;
    std::vector<ModuleHom> diffs;
    for (int n = a; n <= b; ++n) mods.push_back(direct_sum(c.module_at(n), d.module_at(n)).module);
    for (int n = a + 1; n <= b; ++n) {
        Matrix m = Matrix::block_diag(c.boundary_at(n).matrix(), d.boundary_at(n).matrix());
        diffs.emplace_back(mods[size_t(n - a)], mods[size_t(n - a - 1)], m);
    }
    return ChainComplex(c.ring(), a, std::move(mods), std::move(diffs));
}

/**
 * The three-term complex 0 -> A -> B -> C -> 0 placed in degrees 2, 1, 0.
 * Exactness of the result is precisely exactness of the sequence.
 */
inline ChainComplex ses_to_complex(const FpModule& a, const FpModule& b, const FpModule& c,
                                   const ModuleHom& f, const ModuleHom& g) {
    if (f.domain() != a || f.codomain() != b || g.domain() != b || g.codomain() != c)
        throw UsageError("ses_to_complex: maps do not match modules");
    return ChainComplex(a.ring(), 0, {c, b, a}, {g, f});
}

}  // namespace homkit
