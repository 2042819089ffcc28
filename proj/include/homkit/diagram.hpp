#pragma once

#include "complex.hpp"

#include <string>
#include <vector>

namespace homkit {

namespace detail {

/// Solve lhs * x = rhs modulo the column span of slack; returns the x part.
/// Throws logic_error when unsolvable — callers use it only where solvability
/// is guaranteed by an invariant already checked.
inline Matrix solve_mod(const Matrix& lhs, const Matrix& slack, const Matrix& rhs,
                        const char* what) {
    auto sol = solve(lhs.hstack(slack), rhs);
    if (!sol) throw std::logic_error(std::string("internal solve failed: ") + what);
    return sol->rows_slice(0, lhs.cols());
}

}  // namespace detail

/**
 * Short exact sequence of modules 0 -> A -f-> B -g-> C -> 0.
 * Construction verifies injectivity of f, exactness at B, and surjectivity
 * of g, throwing RowNotExact at the first failure.
 */
struct ShortExactSeqModules {
    FpModule a, b, c;
    ModuleHom f, g;

    ShortExactSeqModules(FpModule a_, FpModule b_, FpModule c_, ModuleHom f_, ModuleHom g_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), f(std::move(f_)), g(std::move(g_)) {
        if (f.domain() != a || f.codomain() != b || g.domain() != b || g.codomain() != c)
            throw UsageError("short exact sequence maps do not match modules");
        if (!kernel(f).module.is_zero_module()) throw RowNotExact("A (first map not injective)");
        if (!same_image(image(f).map, kernel(g).map)) throw RowNotExact("B (image f != kernel g)");
        if (!cokernel(g).module.is_zero_module()) throw RowNotExact("C (last map not surjective)");
    }
};

/**
 * Input of the snake lemma: a commuting ladder
 *
 *     M1 --tf--> M2 --tg--> M3 --> 0      (exact at M2 and M3)
 *      |a         |b         |c
 *      v          v          v
 * 0 -> N1 --bf--> N2 --bg--> N3           (exact at N1 and N2)
 *
 * Construction checks both squares (NotCommutative) and the four exactness
 * requirements (RowNotExact).
 */
struct SnakeInput {
    ModuleHom top_f, top_g;
    ModuleHom bot_f, bot_g;
    ModuleHom a, b, c;

    SnakeInput(ModuleHom tf, ModuleHom tg, ModuleHom bf, ModuleHom bg, ModuleHom a_, ModuleHom b_,
               ModuleHom c_)
        : top_f(std::move(tf)), top_g(std::move(tg)), bot_f(std::move(bf)), bot_g(std::move(bg)),
          a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (top_f.codomain() != top_g.domain() || bot_f.codomain() != bot_g.domain())
            throw UsageError("snake rows do not compose");
        if (a.domain() != top_f.domain() || b.domain() != top_g.domain() ||
            c.domain() != top_g.codomain())
            throw UsageError("snake verticals do not match the top row");
        if (a.codomain() != bot_f.domain() || b.codomain() != bot_g.domain() ||
            c.codomain() != bot_g.codomain())
            throw UsageError("snake verticals do not match the bottom row");
        if (!hom_equal(compose(top_f, b), compose(a, bot_f)))
            throw NotCommutative("left square");
        if (!hom_equal(compose(top_g, c), compose(b, bot_g)))
            throw NotCommutative("right square");
        if (!same_image(image(top_f).map, kernel(top_g).map))
            throw RowNotExact("top row at middle");
        if (!cokernel(top_g).module.is_zero_module())
            throw RowNotExact("top row at right (not surjective)");
        if (!kernel(bot_f).module.is_zero_module())
            throw RowNotExact("bottom row at left (not injective)");
        if (!same_image(image(bot_f).map, kernel(bot_g).map))
            throw RowNotExact("bottom row at middle");
    }
};

/**
 * Output of the snake lemma: the six modules with their structure maps,
 * the connecting map delta, and the whole six-term sequence packaged as a
 * chain complex (degrees 5..0), machine-verified exact at the four
 * interior positions.
 */
struct SnakeOutput {
    ModulePart ker_a, ker_b, ker_c;
    ModulePart coker_a, coker_b, coker_c;
    ModuleHom k_f, k_g;  ///< induced maps on kernels
    ModuleHom delta;     ///< ker c -> coker a
    ModuleHom c_f, c_g;  ///< induced maps on cokernels
    ChainComplex six_term;
};

/**
 * The snake lemma.  delta lifts a kernel generator through the surjection
 * top_g, pushes it down the middle, pulls it back through the injection
 * bot_f and projects to coker a; the construction solves those steps
 * columnwise, and the resulting six-term sequence is verified exact.
 */
inline SnakeOutput snake(const SnakeInput& in) {
    ModulePart ka = kernel(in.a), kb = kernel(in.b), kc = kernel(in.c);
    ModulePart ca = cokernel(in.a), cb = cokernel(in.b), cc = cokernel(in.c);

    // Kernel generators pushed along the row land in the next kernel;
    // express them in its generators (modulo ambient relations).
    Matrix kf = detail::solve_mod(kb.map.matrix(), in.top_g.domain().relations(),
                                  in.top_f.matrix() * ka.map.matrix(), "ker a -> ker b");
    ModuleHom k_f = ModuleHom(ka.module, kb.module, kf).canonicalized();
    Matrix kg = detail::solve_mod(kc.map.matrix(), in.top_g.codomain().relations(),
                                  in.top_g.matrix() * kb.map.matrix(), "ker b -> ker c");
    ModuleHom k_g = ModuleHom(kb.module, kc.module, kg).canonicalized();

    // The chase: z in ker c  ->  x with g(x) = z  ->  b(x)  ->  w with f'(w) = b(x).
    Matrix x = detail::solve_mod(in.top_g.matrix(), in.top_g.codomain().relations(),
                                 kc.map.matrix(), "lift through g");
    Matrix w = detail::solve_mod(in.bot_f.matrix(), in.bot_g.domain().relations(),
                                 in.b.matrix() * x, "pull back through f'");
    ModuleHom delta = ModuleHom(kc.module, ca.module, w).canonicalized();

    ModuleHom c_f = ModuleHom(ca.module, cb.module, in.bot_f.matrix()).canonicalized();
    ModuleHom c_g = ModuleHom(cb.module, cc.module, in.bot_g.matrix()).canonicalized();

    ChainComplex six(in.a.domain().ring(), 0,
                     {cc.module, cb.module, ca.module, kc.module, kb.module, ka.module},
                     {c_g, c_f, delta, k_g, k_f});
    for (int n = 1; n <= 4; ++n)
        if (!is_exact_at(six, n))
            throw std::logic_error("snake six-term sequence failed exactness at degree " +
                                   std::to_string(n));
    return {std::move(ka), std::move(kb), std::move(kc), std::move(ca), std::move(cb),
            std::move(cc), std::move(k_f), std::move(k_g), std::move(delta), std::move(c_f),
            std::move(c_g), std::move(six)};
}

/**
 * Short exact sequence of chain complexes: 0 -> A -f-> B -g-> C -> 0,
 * exact at every degree of the combined window (checked on construction).
 */
struct ShortExactSeqComplexes {
    ChainComplex a, b, c;
    ChainMap f, g;

    ShortExactSeqComplexes(ChainComplex a_, ChainComplex b_, ChainComplex c_, ChainMap f_,
                           ChainMap g_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), f(std::move(f_)), g(std::move(g_)) {
        int n0 = lo(), n1 = hi();
        for (int n = n0; n <= n1; ++n) {
            ModuleHom fn = f.level(n), gn = g.level(n);
            if (!kernel(fn).module.is_zero_module())
                throw RowNotExact("degree " + std::to_string(n) + " (f not injective)");
            if (!same_image(image(fn).map, kernel(gn).map))
                throw RowNotExact("degree " + std::to_string(n) + " (image f != kernel g)");
            if (!cokernel(gn).module.is_zero_module())
                throw RowNotExact("degree " + std::to_string(n) + " (g not surjective)");
        }
    }

    int lo() const {
        int n = a.lo();
        if (b.lo() < n) n = b.lo();
        if (c.lo() < n) n = c.lo();
        return n;
    }
    int hi() const {
        int n = a.hi();
        if (b.hi() > n) n = b.hi();
        if (c.hi() > n) n = c.hi();
        return n;
    }
};

namespace detail {

/// Connecting map from precomputed homology data at the two ends.
inline ModuleHom connecting_with(const ShortExactSeqComplexes& s, int n, const HomologyData& hc,
                                 const HomologyData& ha1) {
    // Representative cycles of H_n(C), lifted through g_n into B_n.
    Matrix x = solve_mod(s.g.level(n).matrix(), s.c.module_at(n).relations(),
                         hc.cycle_incl.matrix(), "connecting: lift through g");
    // Push down the boundary of B and pull back through f_{n-1}.
    Matrix w = s.b.boundary_at(n).matrix() * x;
    Matrix y = solve_mod(s.f.level(n - 1).matrix(), s.b.module_at(n - 1).relations(), w,
                         "connecting: pull back through f");
    // The pullbacks are cycles in A_{n-1}; read off homology coordinates.
    Matrix h = ha1.cycles_to_homology(y);
    return ModuleHom(hc.homology, ha1.homology, h).canonicalized();
}

}  // namespace detail

/// Connecting homomorphism H_n(C) -> H_{n-1}(A) of a SES of complexes.
inline ModuleHom connecting_hom(const ShortExactSeqComplexes& s, int n) {
    HomologyData hc = homology_data(s.c, n);
    HomologyData ha1 = homology_data(s.a, n - 1);
    return detail::connecting_with(s, n, hc, ha1);
}

/**
 * A long exact sequence presented as parallel lists of modules, maps and
 * labels, together with the same data packaged as a chain complex whose
 * exactness has been verified.
 */
struct LongExactSequence {
    std::vector<FpModule> modules;         ///< in reading order
    std::vector<ModuleHom> maps;           ///< maps[i]: modules[i] -> modules[i+1]
    std::vector<std::string> labels;       ///< one per module, e.g. "H_1(B)"
    bool exact = false;                    ///< always true on return (else we throw)
};

/**
 * The homology long exact sequence of a short exact sequence of complexes:
 * ... -> H_n(A) -> H_n(B) -> H_n(C) -> H_{n-1}(A) -> ...  running from the
 * top of the window down to its bottom.  Exactness of the whole sequence
 * is machine-verified; failure is an internal error, not a user error.
 */
inline LongExactSequence long_exact_sequence(const ShortExactSeqComplexes& s) {
    int n0 = s.lo(), n1 = s.hi();
    // Cache homology data once per complex and degree.
    std::map<int, HomologyData> da, db, dc;
    for (int n = n0 - 1; n <= n1; ++n) {
        da.emplace(n, homology_data(s.a, n));
        db.emplace(n, homology_data(s.b, n));
        dc.emplace(n, homology_data(s.c, n));
    }

    LongExactSequence les;
    for (int n = n1; n >= n0; --n) {
        les.modules.push_back(da.at(n).homology);
        les.labels.push_back("H_" + std::to_string(n) + "(A)");
        les.maps.push_back(detail::induced_with(da.at(n), db.at(n), s.f.level(n).matrix()));
        les.modules.push_back(db.at(n).homology);
        les.labels.push_back("H_" + std::to_string(n) + "(B)");
        les.maps.push_back(detail::induced_with(db.at(n), dc.at(n), s.g.level(n).matrix()));
        les.modules.push_back(dc.at(n).homology);
        les.labels.push_back("H_" + std::to_string(n) + "(C)");
        if (n > n0)
            les.maps.push_back(detail::connecting_with(s, n, dc.at(n), da.at(n - 1)));
    }

    // Exactness of the whole sequence, ends included: package as a complex
    // (degrees descending along the list) and test every degree.
    size_t k = les.modules.size();
    std::vector<FpModule> mods(les.modules.rbegin(), les.modules.rend());
    std::vector<ModuleHom> diffs(les.maps.rbegin(), les.maps.rend());
    ChainComplex packaged(s.a.ring(), 0, std::move(mods), std::move(diffs));
    for (size_t i = 0; i < k; ++i)
        if (!is_exact_at(packaged, int(i)))
            throw std::logic_error("long exact sequence failed exactness at position " +
                                   std::to_string(k - 1 - i));
    les.exact = true;
    return les;
}

}  // namespace homkit
