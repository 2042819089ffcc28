#pragma once

#include "smith.hpp"

#include <string>
#include <utility>
#include <vector>

namespace homkit {

/**
 * Isomorphism type of a finitely presented module: free rank plus
 * invariant factors in divisibility order, each factor > 1.  Over Z/m the
 * free part means copies of Z/m itself and every factor strictly divides m.
 */
struct Decomposition {
    Ring ring;
    int free_rank = 0;
    std::vector<Int> invariant_factors;

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }

    /// "Z^2 (+) Z/2 (+) Z/4" style, with the unicode circled plus.
    std::string to_string() const {
        std::vector<std::string> parts;
        std::string base = ring.is_integers() ? "Z" : "(Z/" + ring.modulus().get_str() + ")";
        if (free_rank == 1) parts.push_back(ring.is_integers() ? "Z" : base);
        else if (free_rank > 1) parts.push_back(base + "^" + std::to_string(free_rank));
        for (const Int& d : invariant_factors) parts.push_back("Z/" + d.get_str());
        if (parts.empty()) return "0";
        std::string s = parts[0];
        for (size_t i = 1; i < parts.size(); ++i) s += " ⊕ " + parts[i];
        return s;
    }

    friend bool operator==(const Decomposition& a, const Decomposition& b) {
        return a.ring == b.ring && a.free_rank == b.free_rank &&
               a.invariant_factors == b.invariant_factors;
    }
    friend bool operator!=(const Decomposition& a, const Decomposition& b) { return !(a == b); }
};

/**
 * Finitely presented module over Z or Z/m: the cokernel of a relations
 * matrix whose columns are relations among `generators` generators.
 *
 * Elements are column vectors of generator coordinates.  Internally the
 * relation lattice (over Z/m: relations together with m times each
 * generator) and its integer Smith form are computed once at construction
 * and reused for membership tests, canonical representatives and the
 * decomposition.
 */
class FpModule {
public:
    FpModule(Ring ring, int generators, Matrix relations)
        : ring_(std::move(ring)), gens_(generators), rel_(std::move(relations)) {
        if (gens_ < 0) throw UsageError("negative generator count");
        if (rel_.ring() != ring_) throw UsageError("relations ring mismatch");
        if (rel_.rows() != gens_) throw UsageError("relations row count must equal generator count");
        lattice_ = ring_.is_integers()
                       ? rel_.lift()
                       : rel_.lift().hstack(
                             Matrix::identity(Ring::integers(), gens_).scaled(ring_.modulus()));
        lat_ = detail::snf_integer(lattice_);
        dec_.ring = ring_;
        if (ring_.is_integers()) {
            dec_.free_rank = gens_ - lat_.rank;
            for (int i = 0; i < lat_.rank; ++i)
                if (lat_.d.at(i, i) > 1) dec_.invariant_factors.push_back(lat_.d.at(i, i));
        } else {
            // The lattice contains m*I, so rank == gens and every d_i | m.
            for (int i = 0; i < lat_.rank; ++i) {
                const Int& d = lat_.d.at(i, i);
                if (d == ring_.modulus()) ++dec_.free_rank;
                else if (d > 1) dec_.invariant_factors.push_back(d);
            }
        }
    }

    static FpModule free_module(Ring ring, int n) {
        Matrix rel(ring, n, 0);
        return FpModule(std::move(ring), n, std::move(rel));
    }

    static FpModule zero(Ring ring) { return free_module(std::move(ring), 0); }

    /// One generator g with d*g = 0 (Z/d over Z; over Z/m the quotient by d).
    static FpModule cyclic(Ring ring, const Int& d) {
        Matrix rel(ring, 1, 1);
        rel.set(0, 0, d);
        return FpModule(std::move(ring), 1, std::move(rel));
    }

    const Ring& ring() const { return ring_; }
    int generators() const { return gens_; }
    const Matrix& relations() const { return rel_; }

    const Decomposition& decomposition() const { return dec_; }
    int free_rank() const { return dec_.free_rank; }
    const std::vector<Int>& invariant_factors() const { return dec_.invariant_factors; }
    bool is_zero_module() const { return dec_.is_trivial(); }

    /// Integer lattice L with (module) = Z^gens / L; over Z/m it includes m*I.
    const Matrix& relation_lattice() const { return lattice_; }
    const SmithForm& lattice_snf() const { return lat_; }

    /// True when the coordinate column x represents 0, i.e. lies in the lattice.
    bool element_is_zero(const Matrix& x) const {
        check_element(x);
        Matrix c = lat_.u * x.lift();
        for (int i = 0; i < gens_; ++i) {
            if (i < lat_.rank) {
                if (c.at(i, 0) % lat_.d.at(i, i) != 0) return false;
            } else if (c.at(i, 0) != 0) {
                return false;
            }
        }
        return true;
    }

    bool element_eq(const Matrix& x, const Matrix& y) const { return element_is_zero(x - y); }

    /**
     * Canonical coset representative: unique per element, so representatives
     * can be compared or hashed directly.  Computed by reducing the Smith
     * coordinates modulo the diagonal and mapping back.
     */
    Matrix canonical_rep(const Matrix& x) const {
        check_element(x);
        Matrix y = lat_.u * x.lift();
        for (int i = 0; i < lat_.rank; ++i) {
            Int r = y.at(i, 0) % lat_.d.at(i, i);
            if (r < 0) r += lat_.d.at(i, i);
            y.set(i, 0, r);
        }
        return (lat_.u_inv * y).with_ring(ring_);
    }

    /// Columnwise canonical_rep.
    Matrix canonical_rep_cols(const Matrix& xs) const {
        Matrix out(ring_, gens_, xs.cols());
        for (int j = 0; j < xs.cols(); ++j) {
            Matrix r = canonical_rep(xs.col(j));
            for (int i = 0; i < gens_; ++i) out.set(i, j, r.at(i, 0));
        }
        return out;
    }

    bool is_finite() const { return !ring_.is_integers() || dec_.free_rank == 0; }

    /// Number of elements; UsageError on an infinite module.
    Int element_count() const {
        if (!is_finite()) throw UsageError("element count of an infinite module");
        Int n = 1;
        for (const Int& d : dec_.invariant_factors) n *= d;
        if (!ring_.is_integers())
            for (int i = 0; i < dec_.free_rank; ++i) n *= ring_.modulus();
        return n;
    }

    /// Same presentation: same ring, generator count and relations matrix.
    friend bool operator==(const FpModule& a, const FpModule& b) {
        return a.ring_ == b.ring_ && a.gens_ == b.gens_ && a.rel_ == b.rel_;
    }
    friend bool operator!=(const FpModule& a, const FpModule& b) { return !(a == b); }

private:
    void check_element(const Matrix& x) const {
        if (x.ring() != ring_ || x.rows() != gens_ || x.cols() != 1)
            throw UsageError("element must be a single generator-coordinate column");
    }

    Ring ring_;
    int gens_;
    Matrix rel_;
    Matrix lattice_;
    SmithForm lat_;
    Decomposition dec_;
};

inline Decomposition decompose(const FpModule& m) { return m.decomposition(); }

/// Isomorphic iff the canonical decompositions agree (same ring required).
inline bool is_isomorphic(const FpModule& m, const FpModule& n) {
    if (m.ring() != n.ring()) throw UsageError("is_isomorphic: mixed rings");
    return m.decomposition() == n.decomposition();
}

/**
 * Homomorphism between finitely presented modules, stored as the matrix of
 * generator images.  Construction verifies well-definedness (the matrix
 * must send every domain relation into the codomain's relation span) and
 * throws NotWellDefined otherwise.
 */
class ModuleHom {
public:
    ModuleHom(FpModule domain, FpModule codomain, Matrix map)
        : dom_(std::move(domain)), cod_(std::move(codomain)), map_(std::move(map)) {
        if (dom_.ring() != cod_.ring() || map_.ring() != dom_.ring())
            throw UsageError("hom ring mismatch");
        if (map_.rows() != cod_.generators() || map_.cols() != dom_.generators())
            throw UsageError("hom matrix shape must be codomain gens x domain gens");
        Matrix moved = map_ * dom_.relations();
        for (int j = 0; j < moved.cols(); ++j)
            if (!cod_.element_is_zero(moved.col(j)))
                throw NotWellDefined("matrix does not preserve domain relation " +
                                     std::to_string(j));
    }

    static ModuleHom zero(FpModule domain, FpModule codomain) {
        Matrix z(domain.ring(), codomain.generators(), domain.generators());
        return ModuleHom(std::move(domain), std::move(codomain), std::move(z));
    }

    static ModuleHom identity(const FpModule& m) {
        return ModuleHom(m, m, Matrix::identity(m.ring(), m.generators()));
    }

    /// Multiplication by the scalar c.
    static ModuleHom scalar(const FpModule& m, const Int& c) {
        return ModuleHom(m, m, Matrix::identity(m.ring(), m.generators()).scaled(c));
    }

    const FpModule& domain() const { return dom_; }
    const FpModule& codomain() const { return cod_; }
    const Matrix& matrix() const { return map_; }

    Matrix apply(const Matrix& x) const { return map_ * x; }

    /// Every generator image is replaced by its canonical representative.
    ModuleHom canonicalized() const {
        return ModuleHom(dom_, cod_, cod_.canonical_rep_cols(map_));
    }

    bool is_zero_hom() const {
        for (int j = 0; j < map_.cols(); ++j)
            if (!cod_.element_is_zero(map_.col(j))) return false;
        return true;
    }

    friend ModuleHom operator+(const ModuleHom& f, const ModuleHom& g) {
        f.require_parallel(g);
        return ModuleHom(f.dom_, f.cod_, f.map_ + g.map_);
    }
    friend ModuleHom operator-(const ModuleHom& f, const ModuleHom& g) {
        f.require_parallel(g);
        return ModuleHom(f.dom_, f.cod_, f.map_ - g.map_);
    }
    ModuleHom operator-() const { return ModuleHom(dom_, cod_, -map_); }

private:
    void require_parallel(const ModuleHom& g) const {
        if (dom_ != g.dom_ || cod_ != g.cod_)
            throw UsageError("homs must share domain and codomain presentations");
    }

    FpModule dom_, cod_;
    Matrix map_;
};

/// g after f.  f: X -> Y, g: Y -> Z must share the middle presentation.
inline ModuleHom compose(const ModuleHom& f, const ModuleHom& g) {
    if (f.codomain() != g.domain()) throw UsageError("compose: middle modules differ");
    return ModuleHom(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

/// Equal as homomorphisms: the difference maps every generator to 0.
inline bool hom_equal(const ModuleHom& f, const ModuleHom& g) {
    return (f - g).is_zero_hom();
}

/// A module together with a structure map into or out of an ambient module.
struct ModulePart {
    FpModule module;
    ModuleHom map;  // kernel/image: inclusion into the ambient; cokernel: projection
};

namespace detail {

/// x-parts of the solutions of f.map * x in span(rel_cod): kernel of the
/// induced map from the domain's free cover, one generator per column.
inline Matrix hom_kernel_columns(const ModuleHom& f) {
    Matrix block = f.matrix().hstack(-f.codomain().relations());
    Matrix sol = kernel_basis(block);
    return sol.rows_slice(0, f.domain().generators()).drop_zero_cols();
}

/// Relations among the columns of gens, viewed in a module with relation
/// matrix rel: solutions w of gens * w in span(rel).
inline Matrix relations_among(const Matrix& gens, const Matrix& rel) {
    Matrix block = gens.hstack(-rel);
    Matrix sol = kernel_basis(block);
    return sol.rows_slice(0, gens.cols()).drop_zero_cols();
}

}  // namespace detail

/**
 * Kernel of f, presented on its own generators; .map is the inclusion into
 * f's domain.
 */
inline ModulePart kernel(const ModuleHom& f) {
    Matrix k = detail::hom_kernel_columns(f);
    Matrix rel = detail::relations_among(k, f.domain().relations());
    FpModule ker(f.domain().ring(), k.cols(), rel);
    ModuleHom incl(ker, f.domain(), k);
    return {std::move(ker), std::move(incl)};
}

/**
 * Image of f, presented on the images of the domain generators; .map is
 * the inclusion into f's codomain (matrix = f's matrix).
 */
inline ModulePart image(const ModuleHom& f) {
    Matrix rel = detail::hom_kernel_columns(f);
    FpModule img(f.domain().ring(), f.domain().generators(), rel);
    ModuleHom incl(img, f.codomain(), f.matrix());
    return {std::move(img), std::move(incl)};
}

/**
 * Cokernel of f: the codomain with f's columns adjoined as relations;
 * .map is the projection from f's codomain (identity matrix).
 */
inline ModulePart cokernel(const ModuleHom& f) {
    FpModule cok(f.codomain().ring(), f.codomain().generators(),
                 f.codomain().relations().hstack(f.matrix()));
    ModuleHom proj(f.codomain(), cok, Matrix::identity(f.codomain().ring(), f.codomain().generators()));
    return {std::move(cok), std::move(proj)};
}

inline bool is_injective(const ModuleHom& f) { return kernel(f).module.is_zero_module(); }
inline bool is_surjective(const ModuleHom& f) { return cokernel(f).module.is_zero_module(); }
inline bool is_isomorphism(const ModuleHom& f) { return is_injective(f) && is_surjective(f); }

/**
 * Equality of submodules given by two inclusions into the same ambient
 * module: each generator of one lies in the span of the other together
 * with the ambient relations, and vice versa.
 */
inline bool same_image(const ModuleHom& i1, const ModuleHom& i2) {
    if (i1.codomain() != i2.codomain())
        throw UsageError("same_image: inclusions into different modules");
    const Matrix& rel = i1.codomain().relations();
    return solve(i2.matrix().hstack(rel), i1.matrix()).has_value() &&
           solve(i1.matrix().hstack(rel), i2.matrix()).has_value();
}

/// Direct sum with its four structure maps.
struct DirectSum {
    FpModule module;
    ModuleHom inj_left, inj_right;
    ModuleHom proj_left, proj_right;
};

inline DirectSum direct_sum(const FpModule& m, const FpModule& n) {
    if (m.ring() != n.ring()) throw UsageError("direct_sum: mixed rings");
    const Ring& ring = m.ring();
    FpModule s(ring, m.generators() + n.generators(),
               Matrix::block_diag(m.relations(), n.relations()));
    Matrix im = Matrix::identity(ring, m.generators())
                    .vstack(Matrix::zero(ring, n.generators(), m.generators()));
    Matrix in = Matrix::zero(ring, m.generators(), n.generators())
                    .vstack(Matrix::identity(ring, n.generators()));
    Matrix pm = Matrix::identity(ring, m.generators())
                    .hstack(Matrix::zero(ring, m.generators(), n.generators()));
    Matrix pn = Matrix::zero(ring, n.generators(), m.generators())
                    .hstack(Matrix::identity(ring, n.generators()));
    return {s, ModuleHom(m, s, im), ModuleHom(n, s, in), ModuleHom(s, m, pm), ModuleHom(s, n, pn)};
}

}  // namespace homkit
