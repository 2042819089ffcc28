#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace homkit {

/// Arbitrary-precision integer used for every matrix entry and modulus.
using Int = mpz_class;

/**
 * Base class for errors caused by algebraically invalid input: maps that
 * are not well defined, squares that fail to commute, rows that are not
 * exact, and so on.  Dimension mismatches and malformed files are
 * UsageError instead.
 */
class AlgebraError : public std::runtime_error {
public:
    explicit AlgebraError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Caller misuse: mismatched shapes, mismatched rings, unparsable input.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A matrix does not induce a homomorphism between the given presentations.
class NotWellDefined : public AlgebraError {
public:
    explicit NotWellDefined(const std::string& msg) : AlgebraError(msg) {}
};

/// d_{n-1} . d_n != 0; degree() reports the upper degree n.
class NotAComplex : public AlgebraError {
public:
    explicit NotAComplex(int degree)
        : AlgebraError("boundary composite is nonzero at degree " + std::to_string(degree)),
          degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

/// A chain-map square u_{n-1} . d_n = d'_n . u_n fails; degree() is n.
class SquareFails : public AlgebraError {
public:
    explicit SquareFails(int degree)
        : AlgebraError("chain-map square does not commute at degree " + std::to_string(degree)),
          degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

/// A square of a commuting diagram (snake input) fails to commute.
class NotCommutative : public AlgebraError {
public:
    explicit NotCommutative(const std::string& where)
        : AlgebraError("diagram does not commute: " + where) {}
};

/// A row or sequence required to be exact is not; `where` names the spot.
class RowNotExact : public AlgebraError {
public:
    explicit RowNotExact(const std::string& where)
        : AlgebraError("sequence is not exact at " + where) {}
};

/// A map required to be surjective is not.
class NotSurjective : public AlgebraError {
public:
    explicit NotSurjective(const std::string& msg) : AlgebraError(msg) {}
};

/**
 * Coefficient ring: the integers, or the integers modulo m with m >= 2.
 *
 * A default-constructed Ring is the integers; modulus() is 0 in that case.
 * Entries over Z/m are kept as canonical representatives in [0, m).
 */
class Ring {
public:
    Ring() : m_(0) {}

    static Ring integers() { return Ring(); }

    static Ring mod(Int m) {
        if (m < 2) throw UsageError("modulus must be at least 2");
        Ring r;
        r.m_ = std::move(m);
        return r;
    }

    bool is_integers() const { return m_ == 0; }

    /// 0 for the integers, m for Z/m.
    const Int& modulus() const { return m_; }

    /// Canonical representative of x: x itself over Z, x mod m in [0, m) over Z/m.
    Int reduce(const Int& x) const {
        if (is_integers()) return x;
        Int r = x % m_;
        if (r < 0) r += m_;
        return r;
    }

    /// True when a divides b in the ring.  Over Z/m this tests gcd(a, m) | b.
    bool divides(const Int& a, const Int& b) const {
        if (is_integers()) {
            if (a == 0) return b == 0;
            return b % a == 0;
        }
        Int g;
        mpz_gcd(g.get_mpz_t(), reduce(a).get_mpz_t(), m_.get_mpz_t());
        // g == m exactly when a = 0 in the ring: then (a) = (m) = {0}.
        return reduce(b) % g == 0;
    }

    bool is_unit(const Int& a) const {
        if (is_integers()) return a == 1 || a == -1;
        Int g;
        mpz_gcd(g.get_mpz_t(), reduce(a).get_mpz_t(), m_.get_mpz_t());
        return g == 1;
    }

    std::string to_string() const { return is_integers() ? "Z" : "Z/" + m_.get_str(); }

    friend bool operator==(const Ring& x, const Ring& y) { return x.m_ == y.m_; }
    friend bool operator!=(const Ring& x, const Ring& y) { return !(x == y); }

private:
    Int m_;
};

}  // namespace homkit
