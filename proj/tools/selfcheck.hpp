#pragma once

// Acceptance battery: every library-level guarantee exercised end to end,
// one result line per criterion.  Shared by the CLI `report` verb and the
// standalone acceptance binary so the shipped self-test and the CI gate
// are literally the same code.  The randomized corpora reuse the test
// generators, keeping the distributions identical everywhere.

#include <homkit/homkit.hpp>

#include "../tests/helpers.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace homkit::selfcheck {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;  // stats on pass, first failure on fail
    double seconds = 0.0;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

inline const Ring Z = Ring::integers();

inline ModuleHom times(const Int& k) {
    FpModule f = FpModule::free_module(Z, 1);
    return ModuleHom(f, f, Matrix::from_rows(Z, {{k}}));
}

inline ChainComplex scaling_complex(long k, long mod) {
    // Z -> Z -> Z/mod in degrees 2, 1, 0 with d_2 = *k.
    FpModule f = FpModule::free_module(Z, 1);
    FpModule q = FpModule::cyclic(Z, mod);
    return ChainComplex(Z, 0, {q, f, f},
                        {ModuleHom(f, q, Matrix::from_rows(Z, {{1}})),
                         ModuleHom(f, f, Matrix::from_rows(Z, {{k}}))});
}

// --- criterion 1: the doubling sequence and its broken x6 sibling --------

inline std::string check_short_exactness() {
    FpModule f1 = FpModule::free_module(Z, 1);
    FpModule z2 = FpModule::cyclic(Z, 2);
    ModuleHom quot(f1, z2, Matrix::from_rows(Z, {{1}}));
    // Constructing the sequence runs the full battery: injectivity,
    // image = kernel, surjectivity.
    ShortExactSeqModules ses(f1, f1, z2, times(2), quot);
    require(kernel(ses.f).module.is_zero_module(), "doubling: first map has a kernel");
    require(same_image(image(ses.f).map, kernel(ses.g).map), "doubling: image != kernel");
    require(cokernel(ses.g).module.is_zero_module(), "doubling: quotient not onto");

    ChainComplex good = scaling_complex(2, 2);
    for (int n = 0; n <= 2; ++n)
        require(is_exact_at(good, n), "doubling complex not exact at " + std::to_string(n));

    ChainComplex bad = scaling_complex(6, 3);
    require(is_exact_at(bad, 0) && is_exact_at(bad, 2), "x6: wrong degrees flagged");
    require(!is_exact_at(bad, 1), "x6: middle wrongly certified exact");
    FpModule h1 = homology(bad, 1);
    require(h1.decomposition().to_string() == "Z/2", "x6: middle homology is not Z/2");

    FpModule z3 = FpModule::cyclic(Z, 3);
    try {
        ShortExactSeqModules bad_ses(f1, f1, z3, times(6),
                                     ModuleHom(f1, z3, Matrix::from_rows(Z, {{1}})));
        throw std::runtime_error("x6 sequence wrongly accepted as exact");
    } catch (const RowNotExact&) {
    }
    return "doubling certified, x6 rejected at the middle";
}

// --- criterion 2: exact <=> zero homology <=> quasi-iso from zero --------

inline std::string check_exactness_equivalences() {
    auto gen = testutil::rng(0xac2);
    int n_checked = 0;
    for (int t = 0; t < 200; ++t) {
        const Ring ring = (t % 3 == 0) ? Z : Ring::mod(t % 3 == 1 ? 4 : 6);
        bool label = t % 2 == 0;
        ChainComplex c = testutil::random_complex(gen, ring, 4, label);
        bool e1 = is_exact(c);
        bool e2 = true;
        for (int n = c.lo(); n <= c.hi(); ++n)
            if (!homology(c, n).is_zero_module()) e2 = false;
        ChainComplex zero = ChainComplex::zero_complex(ring, c.lo(), c.hi());
        bool e3 = is_quasi_iso(zero_chain_map(zero, c));
        require(e1 == e2 && e2 == e3,
                "equivalence disagreement on instance " + std::to_string(t));
        require(e1 == label, "constructed label wrong on instance " + std::to_string(t));
        ++n_checked;
    }
    return std::to_string(n_checked) + "/200 instances agreed three ways";
}

// --- criterion 3: connecting maps and long exact sequences ---------------

inline std::string check_long_exact_sequences() {
    FpModule f1 = FpModule::free_module(Z, 1);
    FpModule z2 = FpModule::cyclic(Z, 2);
    FpModule zero = FpModule::zero(Z);
    ChainComplex b(Z, 0, {f1, f1}, {times(2)});

    {
        // Quotient presentation: Z included at degree 0 by x2; the quotient
        // complex has Z and Z/2 with zero boundary.  The sequence of
        // homologies reads 0 -> Z -> Z -> Z/2 -> Z/2 -> 0 and is exact.
        ChainComplex a(Z, 0, {f1, zero}, {ModuleHom::zero(zero, f1)});
        ChainComplex c(Z, 0, {z2, f1}, {ModuleHom::zero(f1, z2)});
        ChainMap f = make_chain_map(a, b, {{0, Matrix::from_rows(Z, {{2}})}});
        ChainMap g = make_chain_map(b, c, {{0, Matrix::from_rows(Z, {{1}})},
                                           {1, Matrix::from_rows(Z, {{1}})}});
        LongExactSequence les = long_exact_sequence(ShortExactSeqComplexes(a, b, c, f, g));
        require(les.exact, "doubling LES not exact");
        std::vector<std::string> want{"0", "0", "Z", "Z", "Z/2", "Z/2"};
        for (size_t i = 0; i < want.size(); ++i)
            require(les.modules[i].decomposition().to_string() == want[i],
                    "doubling LES module " + std::to_string(i) + " wrong");
        require(is_isomorphism(les.maps[2]), "doubling LES connecting map not iso");
    }
    {
        // Subcomplex presentation: kill degree 0 instead; the connecting
        // map must literally recover multiplication by two.
        ChainComplex a(Z, 0, {f1, zero}, {ModuleHom::zero(zero, f1)});
        ChainComplex c(Z, 0, {zero, f1}, {ModuleHom::zero(f1, zero)});
        ChainMap f = make_chain_map(a, b, {{0, Matrix::from_rows(Z, {{1}})}});
        ChainMap g = make_chain_map(b, c, {{1, Matrix::from_rows(Z, {{1}})}});
        ShortExactSeqComplexes ses(a, b, c, f, g);
        ModuleHom d1 = connecting_hom(ses, 1);
        Int e = d1.matrix().at(0, 0);
        require(e == 2 || e == -2, "connecting map is not x2 up to sign");
        require(long_exact_sequence(ses).exact, "subcomplex LES not exact");
    }

    auto gen = testutil::rng(0xa3a);
    int exact_les = 0;
    for (int t = 0; t < 100; ++t) {
        const Ring ring = (t % 3 == 0) ? Z : Ring::mod(t % 3 == 1 ? 4 : 6);
        ChainComplex a = testutil::random_complex(gen, ring, 3, t % 2 == 0);
        ChainComplex c = testutil::random_complex(gen, ring, 3, t % 5 == 0);
        auto rs = testutil::random_ses_complexes(gen, a, c);
        LongExactSequence les =
            long_exact_sequence(ShortExactSeqComplexes(rs.a, rs.b, rs.c, rs.f, rs.g));
        require(les.exact, "random LES " + std::to_string(t) + " not exact");
        ++exact_les;
    }

    int all_three = 0;
    for (int t = 0; t < 100; ++t) {
        bool ea = (t & 1) != 0, ec = (t & 2) != 0;
        const Ring ring = (t % 2 == 0) ? Z : Ring::mod(4);
        ChainComplex a = testutil::random_complex(gen, ring, 3, ea);
        ChainComplex c = testutil::random_complex(gen, ring, 3, ec);
        auto rs = testutil::random_ses_complexes(gen, a, c);
        int count = int(is_exact(rs.a)) + int(is_exact(rs.b)) + int(is_exact(rs.c));
        require(count != 2, "exactly two of three exact on instance " + std::to_string(t));
        if (ea && ec) {
            require(count == 3, "two exact ends failed to force the middle");
            ++all_three;
        }
    }
    return std::to_string(exact_les) + "/100 random LES exact, two-of-three held (" +
           std::to_string(all_three) + " fully exact)";
}

// --- criterion 4: null-homotopy decisions --------------------------------

inline std::string check_null_homotopy() {
    auto gen = testutil::rng(0x404);
    int contracted = 0, refused = 0;
    for (int t = 0; t < 100; ++t) {
        const Ring ring = (t % 3 == 0) ? Z : Ring::mod(t % 3 == 1 ? 4 : 6);
        bool exact = t % 2 == 0;
        ChainComplex c = testutil::random_complex(gen, ring, 3, exact);
        auto s = find_null_homotopy(identity_chain_map(c));
        bool split = is_split_exact(c);
        require(s.has_value() == split,
                "contraction decision disagrees with split-exactness on instance " +
                    std::to_string(t));
        if (s) {
            require(verify_null_homotopy(identity_chain_map(c), *s),
                    "returned contraction fails verification on instance " + std::to_string(t));
            ++contracted;
        } else {
            require(!exact, "split staircase complex refused a contraction");
            ++refused;
        }
    }
    {
        // Exact but not split: Z/2 -> Z/4 -> Z/2 over the integers is exact
        // everywhere yet admits no contraction of the identity.
        FpModule z2 = FpModule::cyclic(Z, 2), z4 = FpModule::cyclic(Z, 4);
        ChainComplex c(Z, 0, {z2, z4, z2},
                       {ModuleHom(z4, z2, Matrix::from_rows(Z, {{1}})),
                        ModuleHom(z2, z4, Matrix::from_rows(Z, {{2}}))});
        require(is_exact(c), "torsion extension should be exact");
        require(!find_null_homotopy(identity_chain_map(c)).has_value(),
                "non-split exact complex wrongly contracted");
        require(!is_split_exact(c), "non-split exact complex wrongly declared split");
    }
    int homotopic_checked = 0;
    for (int t = 0; t < 30; ++t) {
        const Ring ring = (t % 2 == 0) ? Z : Ring::mod(6);
        ChainComplex c = testutil::random_complex(gen, ring, 3, t % 3 == 0);
        ChainMap h = testutil::random_null_homotopic(gen, c);
        ChainMap z = zero_chain_map(c, c);
        require(are_chain_homotopic(h, z).has_value(),
                "ds+sd map not recognized as null-homotopic");
        for (int n = c.lo(); n <= c.hi(); ++n)
            require(hom_equal(induced_on_homology(h, n), induced_on_homology(z, n)),
                    "homotopic maps with different induced matrices");
        ++homotopic_checked;
    }
    return std::to_string(contracted) + " contracted, " + std::to_string(refused) +
           " refused, " + std::to_string(homotopic_checked) + " homotopy-invariance checks";
}

// --- criterion 5: resolutions and comparison lifts ------------------------

inline std::string check_resolutions() {
    FpModule z2 = FpModule::cyclic(Z, 2);
    Resolution res = free_resolution(z2, 5);
    require(res.complete() && res.depth() == 1, "Z/2 over Z: wrong shape");
    Int e = res.map(1).matrix().at(0, 0);
    require(e == 2 || e == -2, "Z/2 over Z: map is not x2");

    const Ring z4 = Ring::mod(4);
    Resolution periodic = free_resolution(FpModule::cyclic(z4, 2), 10);
    require(!periodic.complete() && periodic.depth() == 10, "Z/2 over Z/4: wrong shape");
    for (int i = 1; i <= 10; ++i)
        require(periodic.rank(i) == 1 && periodic.map(i).matrix().at(0, 0) == 2,
                "Z/2 over Z/4: map " + std::to_string(i) + " is not x2");

    FpModule three = FpModule::cyclic(Ring::mod(6), 3);
    require(is_projective(three), "Z/3 over Z/6 should be projective");
    require(three.decomposition().free_rank == 0, "Z/3 over Z/6 should not be free");

    FpModule f2 = FpModule::free_module(Z, 2);
    Resolution padded(z2, ModuleHom(f2, z2, Matrix::from_rows(Z, {{1, 0}})),
                      {ModuleHom(f2, f2, Matrix::from_rows(Z, {{2, 0}, {0, 1}}))}, true);
    ChainMap up = lift_between_resolutions(ModuleHom::identity(z2), res, padded);
    ChainMap down = lift_between_resolutions(ModuleHom::identity(z2), padded, res);
    require(is_isomorphism(induced_on_homology(up, 0)), "minimal->padded lift not iso on H_0");
    require(is_isomorphism(induced_on_homology(down, 0)), "padded->minimal lift not iso on H_0");
    return "doubling and periodic resolutions reproduced, comparison lifts verified";
}

// --- criterion 6: the Tor battery -----------------------------------------

inline std::string check_tor() {
    // Full gcd table, three independent routes: resolve the left argument,
    // resolve the right argument, and the arithmetic intersection module
    // (aZ "+" bZ language: (aZ cap bZ)/abZ is cyclic of order ab/lcm = gcd).
    for (long a = 2; a <= 30; ++a)
        for (long b = 2; b <= 30; ++b) {
            FpModule za = FpModule::cyclic(Z, a), zb = FpModule::cyclic(Z, b);
            long g = std::gcd(a, b);
            FpModule intersection_mod = FpModule::cyclic(Z, (a * b) / std::lcm(a, b));
            FpModule left = tor(za, zb, 1, ResolveSide::Left);
            FpModule right = tor(za, zb, 1, ResolveSide::Right);
            require(is_isomorphic(left, right) && is_isomorphic(left, intersection_mod) &&
                        is_isomorphic(left, FpModule::cyclic(Z, g)),
                    "gcd table mismatch at (" + std::to_string(a) + ", " + std::to_string(b) +
                        ")");
        }

    auto gen = testutil::rng(0x706);
    for (int t = 0; t < 100; ++t) {
        FpModule m = testutil::random_module(gen, Z, 3);
        long x = 2 + t % 6;
        require(is_isomorphic(tor(FpModule::cyclic(Z, x), m, 1), torsion_part(m, x).module),
                "torsion equivalence failed on instance " + std::to_string(t));
    }

    for (int t = 0; t < 10; ++t) {
        FpModule m = testutil::random_module(gen, Z, 2);
        FpModule fr = FpModule::free_module(Z, 1 + t % 3);
        for (int i = 1; i <= 3; ++i)
            require(tor(fr, m, i).is_zero_module() && tor(m, fr, i).is_zero_module(),
                    "free module has nonzero higher Tor");
        for (int i = 2; i <= 4; ++i)
            require(tor(m, testutil::random_module(gen, Z, 2), i).is_zero_module(),
                    "Tor above degree 1 over Z is nonzero");
    }

    const Ring z4 = Ring::mod(4);
    FpModule two = FpModule::cyclic(z4, 2);
    for (int i = 1; i <= 10; ++i)
        require(tor(two, two, i).decomposition().to_string() == "Z/2",
                "periodic Tor over Z/4 wrong at degree " + std::to_string(i));

    int les_count = 0;
    for (int t = 0; t < 50; ++t) {
        LongExactSequence les;
        if (t % 2 == 0) {
            long k = 2 + t % 7;
            FpModule f1 = FpModule::free_module(Z, 1);
            FpModule zk = FpModule::cyclic(Z, k);
            ShortExactSeqModules ses(f1, f1, zk, times(k),
                                     ModuleHom(f1, zk, Matrix::from_rows(Z, {{1}})));
            les = tor_les(ses, testutil::random_module(gen, Z, 2), 2);
        } else {
            const Ring ring = (t % 4 == 1) ? Z : Ring::mod(6);
            FpModule a = testutil::random_module(gen, ring, 2);
            FpModule c = testutil::random_module(gen, ring, 2);
            DirectSum s = direct_sum(a, c);
            ShortExactSeqModules ses(a, s.module, c, s.inj_left, s.proj_right);
            les = tor_les(ses, testutil::random_module(gen, ring, 2), 2);
        }
        require(les.exact, "Tor LES " + std::to_string(t) + " not exact");
        ++les_count;
    }
    return "841-entry gcd table three ways, 100 torsion checks, " + std::to_string(les_count) +
           " Tor LES exact";
}

// --- criterion 7: simplicial fixtures and universal coefficients ----------

inline std::string check_simplicial() {
    auto facets_of = [](int which) -> std::vector<std::vector<int>> {
        switch (which) {
            case 0: {  // hollow tetrahedron
                std::vector<std::vector<int>> f;
                for (int a = 0; a < 4; ++a)
                    for (int b = a + 1; b < 4; ++b)
                        for (int c = b + 1; c < 4; ++c) f.push_back({a, b, c});
                return f;
            }
            case 1:  // hollow triangle
                return {{0, 1}, {0, 2}, {1, 2}};
            case 2:  // 6-vertex projective plane
                return {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                        {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
            default:  // 8-vertex Klein bottle
                return {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 4}, {1, 2, 5}, {1, 3, 6},
                        {1, 4, 5}, {1, 4, 6}, {2, 3, 5}, {2, 3, 7}, {2, 4, 6}, {2, 6, 7},
                        {3, 4, 7}, {3, 5, 6}, {4, 5, 7}, {5, 6, 7}};
        }
    };
    const std::vector<std::vector<std::string>> expected{
        {"Z", "0", "Z"}, {"Z", "Z"}, {"Z", "Z/2", "0"}, {"Z", "Z ⊕ Z/2", "0"}};
    const char* names[4] = {"hollow tetrahedron", "circle", "projective plane", "Klein bottle"};

    FpModule z2 = FpModule::cyclic(Z, 2);
    for (int which = 0; which < 4; ++which) {
        SimplicialComplex k = SimplicialComplex::from_facets(facets_of(which));
        auto report = homology_report(k);
        require(report.size() == expected[size_t(which)].size(),
                std::string(names[which]) + ": wrong dimension range");
        for (size_t n = 0; n < report.size(); ++n)
            require(report[n].decomposition.to_string() == expected[size_t(which)][n],
                    std::string(names[which]) + ": H_" + std::to_string(n) + " = " +
                        report[n].decomposition.to_string());

        // Universal coefficients with Z/2: H_n(C (x) Z/2) decomposes as
        // H_n(C) (x) Z/2 plus the torsion interaction one degree down.
        ChainComplex c = k.chain_complex(Z);
        ChainComplex tc = apply_tensor_to_complex(c, z2);
        for (int n = 0; n <= k.dim(); ++n) {
            FpModule lhs = homology(tc, n);
            FpModule rhs =
                direct_sum(tensor(homology(c, n), z2), tor(homology(c, n - 1), z2, 1)).module;
            require(is_isomorphic(lhs, rhs), std::string(names[which]) +
                                                 ": universal coefficients fail at degree " +
                                                 std::to_string(n));
        }
    }
    return "four surface fixtures exact, universal coefficients verified mod 2";
}

// --- criterion 8: Smith form stress ----------------------------------------

inline std::string check_smith_stress() {
    auto gen = testutil::rng(0x517f);
    int oracle_checked = 0;
    for (int t = 0; t < 1000; ++t) {
        int rows = 1 + int(gen() % 12), cols = 1 + int(gen() % 12);
        Matrix a = testutil::random_matrix(gen, Z, rows, cols, 50);
        SmithForm s = snf(a);
        require(s.u * a * s.v == s.d, "transform identity fails on instance " + std::to_string(t));
        require(s.u * s.u_inv == Matrix::identity(Z, rows) &&
                    s.u_inv * s.u == Matrix::identity(Z, rows),
                "row transform not invertible on instance " + std::to_string(t));
        require(s.v * s.v_inv == Matrix::identity(Z, cols) &&
                    s.v_inv * s.v == Matrix::identity(Z, cols),
                "column transform not invertible on instance " + std::to_string(t));
        int r = 0;
        for (int i = 0; i < std::min(rows, cols); ++i) {
            const Int& di = s.d.at(i, i);
            if (di != 0) ++r;
            if (i + 1 < std::min(rows, cols) && s.d.at(i + 1, i + 1) != 0)
                require(di != 0 && s.d.at(i + 1, i + 1) % di == 0,
                        "divisibility chain broken on instance " + std::to_string(t));
        }
        require(r == s.rank, "rank disagrees with diagonal on instance " + std::to_string(t));
        for (int i = 0; i < s.d.rows(); ++i)
            for (int j = 0; j < s.d.cols(); ++j)
                require(i == j || s.d.at(i, j) == 0,
                        "off-diagonal entry on instance " + std::to_string(t));
        if (rows <= 6 && cols <= 6) {
            std::vector<Int> expect = testutil::determinant_divisors(a);
            for (int i = 0; i < std::min(rows, cols); ++i) {
                Int want = size_t(i) < expect.size() ? expect[size_t(i)] : Int(0);
                Int got = s.d.at(i, i) < 0 ? Int(-s.d.at(i, i)) : s.d.at(i, i);
                require(got == want,
                        "diagonal disagrees with minor-gcd oracle on instance " +
                            std::to_string(t));
            }
            ++oracle_checked;
        }
    }
    return "1000 transform certificates, " + std::to_string(oracle_checked) +
           " minor-gcd oracle agreements";
}

}  // namespace detail

/// Run the whole battery; never throws, failures come back in the results.
/// A positive budget is a hard wall-clock limit for that criterion.
inline std::vector<CheckResult> run_all() {
    struct Check {
        const char* name;
        std::string (*fn)();
        double budget;  // seconds; <= 0 means untimed
    };
    const std::vector<Check> checks{
        {"short-exactness certification (doubling and x6 sequences)",
         &detail::check_short_exactness, 1.0},
        {"exactness equivalences on 200 random complexes", &detail::check_exactness_equivalences,
         0.0},
        {"connecting maps and long exact sequences", &detail::check_long_exact_sequences, 0.0},
        {"null-homotopy decisions on a 100-complex corpus", &detail::check_null_homotopy, 0.0},
        {"free resolutions and comparison lifts", &detail::check_resolutions, 0.0},
        {"Tor: gcd table, torsion, vanishing, periodicity, LES", &detail::check_tor, 30.0},
        {"simplicial homology fixtures and universal coefficients", &detail::check_simplicial,
         0.0},
        {"Smith form stress on 1000 random matrices", &detail::check_smith_stress, 60.0},
    };
    std::vector<CheckResult> out;
    for (const Check& c : checks) {
        CheckResult r{c.name, true, "", 0.0};
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.detail = c.fn();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.pass && c.budget > 0 && r.seconds > c.budget) {
            r.pass = false;
            std::ostringstream os;
            os << "exceeded the " << c.budget << "s budget (took " << r.seconds << "s)";
            r.detail = os.str();
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Print "PASS — name (detail; time)" lines; returns true when all passed.
inline bool print_report(const std::vector<CheckResult>& results, std::ostream& out) {
    bool all = true;
    for (const CheckResult& r : results) {
        std::ostringstream sec;
        sec.precision(2);
        sec << std::fixed << r.seconds << "s";
        out << (r.pass ? "PASS" : "FAIL") << " — " << r.name;
        out << (r.pass ? " (" : ": ") << (r.detail.empty() ? "ok" : r.detail) << "; "
            << sec.str() << (r.pass ? ")" : "");
        out << "\n";
        all = all && r.pass;
    }
    out << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return all;
}

}  // namespace homkit::selfcheck
