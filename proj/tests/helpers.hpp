#pragma once

// Shared test utilities: deterministic RNG wrappers, randomized object
// generators, and independent oracles (cofactor determinants, determinant
// divisors, Hermite-form element enumeration) used to cross-check the
// library without relying on the code under test.

#include <homkit/homkit.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace testutil {

using homkit::ChainComplex;
using homkit::ChainMap;
using homkit::FpModule;
using homkit::Int;
using homkit::Matrix;
using homkit::ModuleHom;
using homkit::Ring;

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline long rand_long(std::mt19937_64& gen, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(gen);
}

inline Matrix random_matrix(std::mt19937_64& gen, const Ring& ring, int rows, int cols,
                            long bound) {
    Matrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, Int(rand_long(gen, -bound, bound)));
    return m;
}

// ---------------------------------------------------------------------------
// Independent determinant / determinant-divisor oracles (Laplace expansion;
// no shared code with the library's Bareiss or Smith routines).

inline Int det_laplace(const std::vector<std::vector<Int>>& a) {
    size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Int acc = 0;
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<Int>> minor(n - 1, std::vector<Int>(n - 1));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c)
                if (c != j) minor[r - 1][cc++] = a[r][c];
        }
        Int term = a[0][j] * det_laplace(minor);
        if (j % 2 == 0) acc += term; else acc -= term;
    }
    return acc;
}

inline Int det_oracle(const Matrix& m) {
    std::vector<std::vector<Int>> a(size_t(m.rows()), std::vector<Int>(size_t(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a[size_t(i)][size_t(j)] = m.at(i, j);
    return det_laplace(a);
}

inline void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (int(cur.size()) == k) { out.push_back(cur); return; }
        for (int i = start; i <= n - (k - int(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

/// gcd of all k x k minors (0 when every minor vanishes); matrix read over Z.
inline Int gcd_of_minors(const Matrix& m, int k) {
    std::vector<std::vector<int>> rs, cs;
    subsets_of_size(m.rows(), k, rs);
    subsets_of_size(m.cols(), k, cs);
    Int g = 0;
    for (const auto& r : rs)
        for (const auto& c : cs) {
            std::vector<std::vector<Int>> sub(size_t(k), std::vector<Int>(size_t(k), Int(0)));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub[size_t(i)][size_t(j)] = m.at(r[size_t(i)], c[size_t(j)]);
            Int d = det_laplace(sub);
            g = gcd(g, d);
            if (g == 1) return g;
        }
    return g;
}

/// Nonzero determinant divisors d_k = gcd_k / gcd_{k-1}; equals the expected
/// diagonal of the Smith form up to trailing zeros.
inline std::vector<Int> determinant_divisors(const Matrix& m) {
    std::vector<Int> out;
    Int prev = 1;
    for (int k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        Int g = gcd_of_minors(m, k);
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hermite-based sidecar for finitely presented modules: column Hermite form
// in lower-triangular shape, canonical representatives, element enumeration,
// and an exhaustive isomorphism search.  Everything runs over Z; a module
// over Z/m is handled by adjoining m*I to its relation lattice.

struct HermiteLattice {
    int g = 0;
    std::vector<std::vector<Int>> cols;  // lattice basis, lower triangular
    std::vector<int> pivot_row;          // strictly increasing

    static HermiteLattice from_generators(int g, std::vector<std::vector<Int>> gens) {
        HermiteLattice h;
        h.g = g;
        int c0 = 0;
        for (int r = 0; r < g && c0 < int(gens.size()); ++r) {
            // Euclid across columns c0.. until at most one nonzero in row r.
            while (true) {
                int best = -1;
                for (int c = c0; c < int(gens.size()); ++c) {
                    if (gens[size_t(c)][size_t(r)] == 0) continue;
                    if (best < 0 || abs(gens[size_t(c)][size_t(r)]) < abs(gens[size_t(best)][size_t(r)]))
                        best = c;
                }
                if (best < 0) break;
                std::swap(gens[size_t(c0)], gens[size_t(best)]);
                bool clean = true;
                for (int c = c0 + 1; c < int(gens.size()); ++c) {
                    if (gens[size_t(c)][size_t(r)] == 0) continue;
                    Int q = gens[size_t(c)][size_t(r)] / gens[size_t(c0)][size_t(r)];
                    for (int i = 0; i < g; ++i) gens[size_t(c)][size_t(i)] -= q * gens[size_t(c0)][size_t(i)];
                    if (gens[size_t(c)][size_t(r)] != 0) clean = false;
                }
                if (clean) break;
            }
            if (c0 < int(gens.size()) && gens[size_t(c0)][size_t(r)] != 0) {
                if (gens[size_t(c0)][size_t(r)] < 0)
                    for (int i = 0; i < g; ++i) gens[size_t(c0)][size_t(i)] = -gens[size_t(c0)][size_t(i)];
                h.cols.push_back(gens[size_t(c0)]);
                h.pivot_row.push_back(r);
                ++c0;
            }
        }
        return h;
    }

    int rank() const { return int(cols.size()); }
    bool finite_quotient() const { return rank() == g; }

    Int quotient_size() const {
        Int n = 1;
        for (size_t c = 0; c < cols.size(); ++c) n *= cols[c][size_t(pivot_row[c])];
        return n;
    }

    std::vector<Int> reduce(std::vector<Int> v) const {
        for (size_t c = 0; c < cols.size(); ++c) {
            int r = pivot_row[c];
            Int p = cols[c][size_t(r)];
            Int q = v[size_t(r)] / p;
            if (v[size_t(r)] - q * p < 0) q -= 1;  // floor division
            if (q == 0) continue;
            for (int i = 0; i < g; ++i) v[size_t(i)] -= q * cols[c][size_t(i)];
        }
        return v;
    }

    bool contains(const std::vector<Int>& v) const {
        for (const Int& x : reduce(v))
            if (x != 0) return false;
        return true;
    }

    /// All canonical representatives; only valid for finite quotients.
    std::vector<std::vector<Int>> elements() const {
        std::vector<std::vector<Int>> out;
        std::vector<Int> cur(size_t(g), 0);
        std::function<void(int)> rec = [&](int r) {
            if (r == g) { out.push_back(reduce(cur)); return; }
            Int bound = cols[size_t(r)][size_t(pivot_row[size_t(r)])];
            for (Int x = 0; x < bound; ++x) {
                cur[size_t(r)] = x;
                rec(r + 1);
            }
        };
        rec(0);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

/// Relation lattice of a module, expressed over Z (Z/m adds m*e_i columns).
inline HermiteLattice module_lattice_oracle(const FpModule& m) {
    std::vector<std::vector<Int>> gens;
    const Matrix& rel = m.relations();
    for (int j = 0; j < rel.cols(); ++j) {
        std::vector<Int> col(size_t(m.generators()));
        for (int i = 0; i < m.generators(); ++i) col[size_t(i)] = rel.at(i, j);
        gens.push_back(std::move(col));
    }
    if (m.ring().modulus() != 0)
        for (int i = 0; i < m.generators(); ++i) {
            std::vector<Int> col(size_t(m.generators()), 0);
            col[size_t(i)] = m.ring().modulus();
            gens.push_back(std::move(col));
        }
    return HermiteLattice::from_generators(m.generators(), std::move(gens));
}

/// Exhaustive search: do the two (finite, small) modules admit a bijective
/// homomorphism?  Completely independent of the library's Smith machinery.
inline bool isomorphic_oracle(const FpModule& m, const FpModule& n) {
    HermiteLattice lm = module_lattice_oracle(m), ln = module_lattice_oracle(n);
    if (!lm.finite_quotient() || !ln.finite_quotient()) throw std::logic_error("oracle needs finite modules");
    if (lm.quotient_size() != ln.quotient_size()) return false;
    auto elems_m = lm.elements();
    auto elems_n = ln.elements();
    size_t count = elems_m.size();
    if (count != elems_n.size()) return false;
    if (m.generators() == 0) return true;

    // Columns of a candidate matrix range over elements of N.
    std::vector<size_t> choice(size_t(m.generators()), 0);
    auto apply = [&](const std::vector<Int>& x) {
        std::vector<Int> y(size_t(n.generators()), 0);
        for (int c = 0; c < m.generators(); ++c)
            for (int i = 0; i < n.generators(); ++i)
                y[size_t(i)] += x[size_t(c)] * elems_n[choice[size_t(c)]][size_t(i)];
        return ln.reduce(std::move(y));
    };
    while (true) {
        bool well_defined = true;
        for (const auto& col : lm.cols) {
            std::vector<Int> img = apply(col);
            if (std::any_of(img.begin(), img.end(), [](const Int& x) { return x != 0; })) {
                well_defined = false;
                break;
            }
        }
        if (well_defined) {
            std::set<std::vector<Int>> image;
            for (const auto& e : elems_m) image.insert(apply(e));
            if (image.size() == count) return true;
        }
        int c = 0;
        while (c < m.generators() && ++choice[size_t(c)] == elems_n.size()) choice[size_t(c++)] = 0;
        if (c == m.generators()) return false;
    }
}

// ---------------------------------------------------------------------------
// Random modules and complexes.

inline FpModule random_module(std::mt19937_64& gen, const Ring& ring, int max_gens,
                              long bound = 6) {
    int g = int(rand_long(gen, 0, max_gens));
    int r = int(rand_long(gen, 0, g + 2));
    return FpModule(ring, g, random_matrix(gen, ring, g, r, bound));
}

/// Construction attempt that reports ill-definedness instead of throwing.
inline std::optional<ModuleHom> try_hom(const FpModule& domain, const FpModule& codomain,
                                        const Matrix& map) {
    try {
        return ModuleHom(domain, codomain, map);
    } catch (const homkit::NotWellDefined&) {
        return std::nullopt;
    }
}

/// Random well-defined hom between random modules (rejection sampling).
inline ModuleHom random_hom(std::mt19937_64& gen, const FpModule& domain,
                            const FpModule& codomain, long bound = 4, int tries = 60) {
    for (int t = 0; t < tries; ++t) {
        auto f = try_hom(domain, codomain,
                         random_matrix(gen, domain.ring(), codomain.generators(),
                                       domain.generators(), bound));
        if (f) return *f;
    }
    return ModuleHom::zero(domain, codomain);
}

/// (P, P_inv) built from a few elementary operations; entries stay small.
inline std::pair<Matrix, Matrix> random_unimodular_pair(std::mt19937_64& gen, const Ring& ring,
                                                        int n, int ops = 6) {
    Matrix p = Matrix::identity(ring, n), pinv = Matrix::identity(ring, n);
    for (int t = 0; t < ops && n > 1; ++t) {
        int kind = int(rand_long(gen, 0, 2));
        int i = int(rand_long(gen, 0, n - 1));
        int j = int(rand_long(gen, 0, n - 1));
        if (kind == 0 && i != j) {
            Int q(rand_long(gen, -2, 2));
            // row_i += q * row_j on p; col_j -= q * col_i on pinv
            for (int c = 0; c < n; ++c) p.set(i, c, ring.reduce(p.at(i, c) + q * p.at(j, c)));
            for (int r = 0; r < n; ++r) pinv.set(r, j, ring.reduce(pinv.at(r, j) - q * pinv.at(r, i)));
        } else if (kind == 1 && i != j) {
            for (int c = 0; c < n; ++c) {
                Int tmp = p.at(i, c);
                p.set(i, c, p.at(j, c));
                p.set(j, c, tmp);
            }
            for (int r = 0; r < n; ++r) {
                Int tmp = pinv.at(r, i);
                pinv.set(r, i, pinv.at(r, j));
                pinv.set(r, j, tmp);
            }
        } else {
            for (int c = 0; c < n; ++c) p.set(i, c, ring.reduce(-p.at(i, c)));
            for (int r = 0; r < n; ++r) pinv.set(r, i, ring.reduce(-pinv.at(r, i)));
        }
    }
    return {p, pinv};
}

/// Bounded complex of free modules.  When exact, it is exact at every degree
/// (split staircase conjugated by unimodular changes of basis).  When not,
/// one transmitted block is rescaled by a non-unit, forcing homology there.
inline ChainComplex random_complex(std::mt19937_64& gen, const Ring& ring, int len, bool exact,
                                   int lo = 0) {
    std::vector<int> r(size_t(len) + 2, 0);  // r[0] = r[len+1] = 0
    for (int i = 1; i <= len; ++i) r[size_t(i)] = int(rand_long(gen, 0, 3));
    if (!exact) {
        bool any = false;
        for (int i = 1; i <= len; ++i) any = any || r[size_t(i)] > 0;
        if (!any) r[size_t(rand_long(gen, 1, len))] = 1;
    }
    int bad = exact ? -1 : int(rand_long(gen, 1, len));
    if (!exact && r[size_t(bad)] == 0) {
        for (int i = 1; i <= len; ++i)
            if (r[size_t(i)] > 0) bad = i;
    }

    std::vector<int> n(size_t(len) + 1);
    for (int i = 0; i <= len; ++i) n[size_t(i)] = r[size_t(i)] + r[size_t(i) + 1];

    // scalar that is guaranteed not to be a unit (and not 1) in the ring
    auto non_unit = [&]() -> Int {
        if (int(rand_long(gen, 0, 3)) == 0) return 0;
        Int m = ring.modulus();
        if (m == 0) return Int(rand_long(gen, 2, 5));
        for (Int k = 2; k < m; ++k)
            if (gcd(k, m) > 1) return k;
        return 0;  // Z/p: only 0 destroys exactness
    };

    std::vector<std::pair<Matrix, Matrix>> bases;
    for (int i = 0; i <= len; ++i)
        bases.push_back(random_unimodular_pair(gen, ring, n[size_t(i)]));

    std::vector<FpModule> mods;
    for (int i = 0; i <= len; ++i) mods.push_back(FpModule::free_module(ring, n[size_t(i)]));
    std::vector<ModuleHom> diffs;
    for (int i = 1; i <= len; ++i) {
        Matrix d = Matrix::zero(ring, n[size_t(i) - 1], n[size_t(i)]);
        for (int t = 0; t < r[size_t(i)]; ++t) {
            Int entry = 1;
            if (i == bad && t == 0) entry = ring.reduce(non_unit());
            d.set(r[size_t(i) - 1] + t, t, entry);
        }
        Matrix conj = bases[size_t(i) - 1].first * d * bases[size_t(i)].second;
        diffs.push_back(ModuleHom(mods[size_t(i)], mods[size_t(i) - 1], conj));
    }
    return ChainComplex(ring, lo, std::move(mods), std::move(diffs));
}

struct RandomSes {
    ChainComplex a, b, c;
    ChainMap f, g;
};

/// Levelwise-split extension of c by a: b_i = a_i (+) c_i with the boundary
/// twisted by a random degree-preserving w, so b is rarely a literal sum.
inline RandomSes random_ses_complexes(std::mt19937_64& gen, ChainComplex a, ChainComplex c,
                                      long bound = 2) {
    if (a.lo() != c.lo() || a.hi() != c.hi()) throw std::logic_error("windows must agree");
    const Ring& ring = a.ring();
    std::map<int, Matrix> w;
    for (int i = a.lo(); i <= a.hi(); ++i)
        w.emplace(i, random_matrix(gen, ring, a.module_at(i).generators(),
                                   c.module_at(i).generators(), bound));
    std::vector<FpModule> mods;
    std::vector<ModuleHom> diffs;
    std::map<int, Matrix> fl, gl;
    for (int i = a.lo(); i <= a.hi(); ++i) {
        int ga = a.module_at(i).generators(), gc = c.module_at(i).generators();
        mods.push_back(FpModule::free_module(ring, ga + gc));
        fl.emplace(i, Matrix::identity(ring, ga).vstack(Matrix::zero(ring, gc, ga)));
        gl.emplace(i, Matrix::zero(ring, gc, ga).hstack(Matrix::identity(ring, gc)));
        if (i == a.lo()) continue;
        Matrix da = a.boundary_at(i).matrix(), dc = c.boundary_at(i).matrix();
        Matrix h = da * w.at(i) - w.at(i - 1) * dc;
        Matrix top = da.hstack(h);
        Matrix bot = Matrix::zero(ring, dc.rows(), da.cols()).hstack(dc);
        diffs.push_back(ModuleHom(FpModule::free_module(ring, da.cols() + dc.cols()),
                                  FpModule::free_module(ring, da.rows() + dc.rows()),
                                  top.vstack(bot)));
    }
    ChainComplex b(ring, a.lo(), std::move(mods), std::move(diffs));
    ChainMap f = homkit::make_chain_map(a, b, fl);
    ChainMap g = homkit::make_chain_map(b, c, gl);
    return RandomSes{std::move(a), std::move(b), std::move(c), std::move(f), std::move(g)};
}

/// Null-homotopic chain map c -> c built as d s + s d from random s.
inline ChainMap random_null_homotopic(std::mt19937_64& gen, const ChainComplex& c,
                                      long bound = 2) {
    std::map<int, Matrix> levels;
    std::map<int, Matrix> s;
    for (int i = c.lo(); i <= c.hi(); ++i)
        s.emplace(i, random_matrix(gen, c.ring(), c.module_at(i + 1).generators(),
                                   c.module_at(i).generators(), bound));
    for (int i = c.lo(); i <= c.hi(); ++i) {
        Matrix ds = c.boundary_at(i + 1).matrix() * s.at(i);
        Matrix sd = i > c.lo() ? Matrix(s.at(i - 1) * c.boundary_at(i).matrix())
                               : Matrix::zero(c.ring(), c.module_at(i).generators(),
                                              c.module_at(i).generators());
        levels.emplace(i, ds + sd);
    }
    return homkit::make_chain_map(c, c, levels);
}

}  // namespace testutil
