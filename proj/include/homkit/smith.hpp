#pragma once

#include "matrix.hpp"

#include <optional>

namespace homkit {

/**
 * Smith normal form d = u * a * v.
 *
 * d is diagonal, each nonzero diagonal entry divides the next, and over Z
 * the diagonal is nonnegative.  u and v are invertible over the ring and
 * their inverses are maintained alongside, so callers can change basis in
 * both directions without solving anything: u * u_inv = I, v * v_inv = I.
 * rank counts the diagonal entries that are nonzero in the ring.
 */
struct SmithForm {
    Matrix d, u, v, u_inv, v_inv;
    int rank = 0;
};

namespace detail {

/**
 * Integer Smith normal form by alternating row/column reduction.
 *
 * Pivot rule (deterministic): among the nonzero entries of the working
 * submatrix, pick the one of minimal absolute value; break ties by the
 * smaller row index, then the smaller column index.
 */
inline SmithForm snf_integer(const Matrix& a0) {
    const Ring z = Ring::integers();
    Matrix a = a0.lift();
    const int r = a.rows(), c = a.cols();
    Matrix u = Matrix::identity(z, r), uinv = u;
    Matrix v = Matrix::identity(z, c), vinv = v;

    // Elementary operations applied to `a` are mirrored on u (rows) or v
    // (columns); the inverses absorb the inverse operation on the other side
    // so u*u_inv and v*v_inv stay the identity throughout.
    auto row_swap = [&](int i, int j) {
        for (int k = 0; k < c; ++k) {
            Int t = a.at(i, k);
            a.set(i, k, a.at(j, k));
            a.set(j, k, t);
        }
        for (int k = 0; k < r; ++k) {
            Int t = u.at(i, k);
            u.set(i, k, u.at(j, k));
            u.set(j, k, t);
            t = uinv.at(k, i);
            uinv.set(k, i, uinv.at(k, j));
            uinv.set(k, j, t);
        }
    };
    // row dst += q * row src;  u_inv col src -= q * col dst
    auto row_add = [&](int dst, int src, const Int& q) {
        for (int k = 0; k < c; ++k) a.set(dst, k, a.at(dst, k) + q * a.at(src, k));
        for (int k = 0; k < r; ++k) {
            u.set(dst, k, u.at(dst, k) + q * u.at(src, k));
            uinv.set(k, src, uinv.at(k, src) - q * uinv.at(k, dst));
        }
    };
    auto row_negate = [&](int i) {
        for (int k = 0; k < c; ++k) a.set(i, k, -a.at(i, k));
        for (int k = 0; k < r; ++k) {
            u.set(i, k, -u.at(i, k));
            uinv.set(k, i, -uinv.at(k, i));
        }
    };
    auto col_swap = [&](int i, int j) {
        for (int k = 0; k < r; ++k) {
            Int t = a.at(k, i);
            a.set(k, i, a.at(k, j));
            a.set(k, j, t);
        }
        for (int k = 0; k < c; ++k) {
            Int t = v.at(k, i);
            v.set(k, i, v.at(k, j));
            v.set(k, j, t);
            t = vinv.at(i, k);
            vinv.set(i, k, vinv.at(j, k));
            vinv.set(j, k, t);
        }
    };
    // col dst += q * col src;  v_inv row src -= q * row dst
    auto col_add = [&](int dst, int src, const Int& q) {
        for (int k = 0; k < r; ++k) a.set(k, dst, a.at(k, dst) + q * a.at(k, src));
        for (int k = 0; k < c; ++k) {
            v.set(k, dst, v.at(k, dst) + q * v.at(k, src));
            vinv.set(src, k, vinv.at(src, k) - q * vinv.at(dst, k));
        }
    };

    const int steps = r < c ? r : c;
    int t = 0;
    for (; t < steps; ++t) {
        // Deterministic pivot: minimal |value|, ties by row then column.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                const Int& x = a.at(i, j);
                if (x == 0) continue;
                Int ax = x < 0 ? Int(-x) : x;
                if (pi < 0 || ax < best) {
                    pi = i;
                    pj = j;
                    best = ax;
                }
            }
        if (pi < 0) break;  // working submatrix is zero
        if (pi != t) row_swap(t, pi);
        if (pj != t) col_swap(t, pj);

        for (;;) {
            bool restart = false;
            // Clear column t below the pivot.
            for (int i = t + 1; i < r; ++i) {
                if (a.at(i, t) == 0) continue;
                Int q = a.at(i, t) / a.at(t, t);  // truncated: remainder shrinks
                if (q != 0) row_add(i, t, -q);
                if (a.at(i, t) != 0) {
                    row_swap(t, i);  // strictly smaller pivot
                    restart = true;
                    break;
                }
            }
            if (restart) continue;
            // Clear row t right of the pivot.
            for (int j = t + 1; j < c; ++j) {
                if (a.at(t, j) == 0) continue;
                Int q = a.at(t, j) / a.at(t, t);
                if (q != 0) col_add(j, t, -q);
                if (a.at(t, j) != 0) {
                    col_swap(t, j);
                    restart = true;
                    break;
                }
            }
            if (restart) continue;
            // Pivot must divide the rest of the submatrix for the chain.
            bool fixed = false;
            for (int i = t + 1; i < r && !fixed; ++i)
                for (int j = t + 1; j < c && !fixed; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        row_add(t, i, 1);  // pulls the bad entry into row t
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (a.at(t, t) < 0) row_negate(t);
    }

    SmithForm s;
    s.d = std::move(a);
    s.u = std::move(u);
    s.v = std::move(v);
    s.u_inv = std::move(uinv);
    s.v_inv = std::move(vinv);
    s.rank = t;
    return s;
}

/// Reduce every component of an integer Smith form into `ring`.
inline SmithForm reduce_smith(const SmithForm& s, const Ring& ring) {
    SmithForm t;
    t.d = s.d.with_ring(ring);
    t.u = s.u.with_ring(ring);
    t.v = s.v.with_ring(ring);
    t.u_inv = s.u_inv.with_ring(ring);
    t.v_inv = s.v_inv.with_ring(ring);
    t.rank = 0;
    int n = t.d.rows() < t.d.cols() ? t.d.rows() : t.d.cols();
    for (int i = 0; i < n; ++i)
        if (t.d.at(i, i) != 0) ++t.rank;
    return t;
}

/// Flip integer kernel-basis columns so the first nonzero entry is positive.
inline Matrix canonical_column_signs(Matrix k) {
    if (!k.ring().is_integers()) return k;
    for (int j = 0; j < k.cols(); ++j) {
        for (int i = 0; i < k.rows(); ++i) {
            if (k.at(i, j) == 0) continue;
            if (k.at(i, j) < 0)
                for (int i2 = i; i2 < k.rows(); ++i2) k.set(i2, j, -k.at(i2, j));
            break;
        }
    }
    return k;
}

}  // namespace detail

/**
 * Smith normal form over the matrix's own ring.
 *
 * Over Z/m this is the integer Smith form of the canonical lift, reduced
 * mod m: u and v remain invertible and the divisibility chain descends to
 * the quotient.  Diagonal entries that are multiples of m become 0, so
 * rank can drop relative to the integer computation.
 */
inline SmithForm snf(const Matrix& a) {
    SmithForm s = detail::snf_integer(a);
    if (a.ring().is_integers()) return s;
    return detail::reduce_smith(s, a.ring());
}

/**
 * Basis of the kernel of a, one generator per column.
 *
 * Over Z the columns are a lattice basis (independent, and every integer
 * kernel vector is an integer combination).  Over Z/m the kernel of the
 * lift augmented by m*I is projected back; zero columns are dropped, so
 * the result generates the kernel but need not be independent.
 */
inline Matrix kernel_basis(const Matrix& a) {
    if (a.ring().is_integers()) {
        SmithForm s = detail::snf_integer(a);
        return detail::canonical_column_signs(s.v.cols_slice(s.rank, a.cols() - s.rank));
    }
    const Ring z = Ring::integers();
    Matrix aug = a.lift().hstack(Matrix::identity(z, a.rows()).scaled(a.ring().modulus()));
    SmithForm s = detail::snf_integer(aug);
    Matrix k = s.v.cols_slice(s.rank, aug.cols() - s.rank).rows_slice(0, a.cols());
    return k.with_ring(a.ring()).drop_zero_cols();
}

/**
 * One solution x of a x = b (columnwise), or nullopt when unsolvable.
 *
 * b may have several columns; all are solved against the same Smith form.
 * Over Z/m the system is lifted and augmented by m*I so congruences are
 * handled exactly.  The choice of solution is the deterministic one picked
 * by the Smith form; add kernel_basis combinations for the full set.
 */
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.ring() != b.ring()) throw UsageError("solve: mixed rings");
    if (a.rows() != b.rows()) throw UsageError("solve: row count mismatch");
    if (a.ring().is_integers()) {
        SmithForm s = detail::snf_integer(a);
        Matrix c = s.u * b;
        Matrix y(a.ring(), a.cols(), b.cols());
        for (int j = 0; j < b.cols(); ++j) {
            for (int i = 0; i < a.rows(); ++i) {
                if (i < s.rank) {
                    if (i >= a.cols()) break;  // unreachable: rank <= cols
                    if (c.at(i, j) % s.d.at(i, i) != 0) return std::nullopt;
                    y.set(i, j, c.at(i, j) / s.d.at(i, i));
                } else if (c.at(i, j) != 0) {
                    return std::nullopt;
                }
            }
        }
        return s.v * y;
    }
    const Ring z = Ring::integers();
    Matrix aug = a.lift().hstack(Matrix::identity(z, a.rows()).scaled(a.ring().modulus()));
    auto x = solve(aug, b.lift());
    if (!x) return std::nullopt;
    return x->rows_slice(0, a.cols()).with_ring(a.ring());
}

/// Nonzero diagonal entries of the Smith form, in divisibility order.
inline std::vector<Int> elementary_divisors(const Matrix& a) {
    SmithForm s = snf(a);
    std::vector<Int> out;
    int n = s.d.rows() < s.d.cols() ? s.d.rows() : s.d.cols();
    for (int i = 0; i < n; ++i)
        if (s.d.at(i, i) != 0) out.push_back(s.d.at(i, i));
    return out;
}

}  // namespace homkit
