#pragma once

#include "ring.hpp"

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace homkit {

/**
 * Dense matrix over Z or Z/m with arbitrary-precision entries.
 *
 * Entries are stored row-major and kept canonical: over Z/m every entry
 * lies in [0, m).  Zero-dimensional matrices (0 rows and/or 0 columns) are
 * fully supported; they show up constantly as presentations of zero
 * modules and empty relation sets.
 */
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(Ring ring, int rows, int cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(size_t(rows) * cols) {
        check_shape(rows, cols);
    }

    Matrix(Ring ring, int rows, int cols, std::vector<Int> row_major)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(std::move(row_major)) {
        check_shape(rows, cols);
        if (e_.size() != size_t(rows) * cols)
            throw UsageError("entry count does not match matrix shape");
        for (Int& x : e_) x = ring_.reduce(x);
    }

    /// Build from nested initializer lists / vectors of rows.
    static Matrix from_rows(Ring ring, const std::vector<std::vector<Int>>& rows) {
        int r = int(rows.size());
        int c = r == 0 ? 0 : int(rows[0].size());
        Matrix m(std::move(ring), r, c);
        for (int i = 0; i < r; ++i) {
            if (int(rows[i].size()) != c) throw UsageError("ragged rows");
            for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    static Matrix identity(Ring ring, int n) {
        Matrix m(std::move(ring), n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static Matrix zero(Ring ring, int rows, int cols) { return Matrix(std::move(ring), rows, cols); }

    /// Single-column matrix from a coordinate vector.
    static Matrix column(Ring ring, const std::vector<Int>& v) {
        Matrix m(std::move(ring), int(v.size()), 1);
        for (int i = 0; i < int(v.size()); ++i) m.set(i, 0, v[i]);
        return m;
    }

    static Matrix diagonal(Ring ring, const std::vector<Int>& d) {
        Matrix m(std::move(ring), int(d.size()), int(d.size()));
        for (int i = 0; i < int(d.size()); ++i) m.set(i, i, d[i]);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Ring& ring() const { return ring_; }

    const Int& at(int i, int j) const { return e_[idx(i, j)]; }

    void set(int i, int j, const Int& v) { e_[idx(i, j)] = ring_.reduce(v); }

    bool is_zero() const {
        for (const Int& x : e_)
            if (x != 0) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(ring_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.e_[t.idx(j, i)] = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        require_same_ring(b);
        if (cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
        Matrix p(ring_, rows_, b.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& a_ik = at(i, k);
                if (a_ik == 0) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j) == 0) continue;
                    p.e_[p.idx(i, j)] += a_ik * b.at(k, j);
                }
            }
        for (Int& x : p.e_) x = ring_.reduce(x);
        return p;
    }

    Matrix operator+(const Matrix& b) const {
        require_same_shape(b);
        Matrix s(ring_, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = ring_.reduce(e_[k] + b.e_[k]);
        return s;
    }

    Matrix operator-(const Matrix& b) const {
        require_same_shape(b);
        Matrix s(ring_, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = ring_.reduce(e_[k] - b.e_[k]);
        return s;
    }

    Matrix operator-() const { return scaled(-1); }

    Matrix scaled(const Int& c) const {
        Matrix s(ring_, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = ring_.reduce(e_[k] * c);
        return s;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// [this | right], same row count.
    Matrix hstack(const Matrix& right) const {
        require_same_ring(right);
        if (rows_ != right.rows_) throw UsageError("hstack row mismatch");
        Matrix m(ring_, rows_, cols_ + right.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) m.e_[m.idx(i, j)] = at(i, j);
            for (int j = 0; j < right.cols_; ++j) m.e_[m.idx(i, cols_ + j)] = right.at(i, j);
        }
        return m;
    }

    /// [this; below], same column count.
    Matrix vstack(const Matrix& below) const {
        require_same_ring(below);
        if (cols_ != below.cols_) throw UsageError("vstack column mismatch");
        Matrix m(ring_, rows_ + below.rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.e_[m.idx(i, j)] = at(i, j);
        for (int i = 0; i < below.rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.e_[m.idx(rows_ + i, j)] = below.at(i, j);
        return m;
    }

    static Matrix block_diag(const Matrix& a, const Matrix& b) {
        a.require_same_ring(b);
        Matrix m(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) m.e_[m.idx(i, j)] = a.at(i, j);
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) m.e_[m.idx(a.rows_ + i, a.cols_ + j)] = b.at(i, j);
        return m;
    }

    /// Kronecker product; row (i1,i2) of the result is i1*b.rows()+i2.
    static Matrix kronecker(const Matrix& a, const Matrix& b) {
        a.require_same_ring(b);
        Matrix m(a.ring_, a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (int i1 = 0; i1 < a.rows_; ++i1)
            for (int j1 = 0; j1 < a.cols_; ++j1) {
                const Int& x = a.at(i1, j1);
                if (x == 0) continue;
                for (int i2 = 0; i2 < b.rows_; ++i2)
                    for (int j2 = 0; j2 < b.cols_; ++j2)
                        m.e_[m.idx(i1 * b.rows_ + i2, j1 * b.cols_ + j2)] =
                            a.ring_.reduce(x * b.at(i2, j2));
            }
        return m;
    }

    Matrix col(int j) const { return cols_slice(j, 1); }

    Matrix cols_slice(int j0, int n) const {
        if (j0 < 0 || n < 0 || j0 + n > cols_) throw UsageError("column slice out of range");
        Matrix m(ring_, rows_, n);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < n; ++j) m.e_[m.idx(i, j)] = at(i, j0 + j);
        return m;
    }

    Matrix rows_slice(int i0, int n) const {
        if (i0 < 0 || n < 0 || i0 + n > rows_) throw UsageError("row slice out of range");
        Matrix m(ring_, n, cols_);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < cols_; ++j) m.e_[m.idx(i, j)] = at(i0 + i, j);
        return m;
    }

    Matrix drop_zero_cols() const {
        std::vector<int> keep;
        for (int j = 0; j < cols_; ++j) {
            bool nz = false;
            for (int i = 0; i < rows_ && !nz; ++i) nz = at(i, j) != 0;
            if (nz) keep.push_back(j);
        }
        Matrix m(ring_, rows_, int(keep.size()));
        for (int i = 0; i < rows_; ++i)
            for (size_t j = 0; j < keep.size(); ++j) m.e_[m.idx(i, int(j))] = at(i, keep[j]);
        return m;
    }

    /// Same entries viewed over Z (representatives in [0, m) are kept as is).
    Matrix lift() const {
        Matrix m(Ring::integers(), rows_, cols_);
        m.e_ = e_;
        return m;
    }

    /// Entries re-reduced into the target ring.
    Matrix with_ring(const Ring& ring) const {
        Matrix m(ring, rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = ring.reduce(e_[k]);
        return m;
    }

    /// Columns stacked into one column (column-major), so vec(AXB) = (B^T (x) A) vec(X).
    Matrix vec() const {
        Matrix v(ring_, rows_ * cols_, 1);
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i) v.e_[size_t(j) * rows_ + i] = at(i, j);
        return v;
    }

    /// Inverse of vec(): fold a (rows*cols) x 1 column back into a matrix.
    static Matrix unvec(const Ring& ring, int rows, int cols, const Matrix& v) {
        if (v.cols() != 1 || v.rows() != rows * cols) throw UsageError("unvec shape mismatch");
        Matrix m(ring, rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) m.e_[m.idx(i, j)] = ring.reduce(v.at(j * rows + i, 0));
        return m;
    }

    /**
     * Determinant of the integer lift by the Bareiss fraction-free method.
     * For ring-level invertibility of a square matrix over Z/m, test
     * is_unit(determinant()) on the ring.
     */
    Int determinant() const {
        if (rows_ != cols_) throw UsageError("determinant of non-square matrix");
        int n = rows_;
        if (n == 0) return 1;
        std::vector<Int> a = e_;  // integer working copy of the lift
        auto at2 = [&](int i, int j) -> Int& { return a[size_t(i) * n + j]; };
        Int sign = 1, prev = 1;
        for (int k = 0; k + 1 < n; ++k) {
            if (at2(k, k) == 0) {
                int p = -1;
                for (int i = k + 1; i < n && p < 0; ++i)
                    if (at2(i, k) != 0) p = i;
                if (p < 0) return 0;
                for (int j = 0; j < n; ++j) std::swap(at2(k, j), at2(p, j));
                sign = -sign;
            }
            for (int i = k + 1; i < n; ++i) {
                for (int j = k + 1; j < n; ++j) {
                    Int num = at2(i, j) * at2(k, k) - at2(i, k) * at2(k, j);
                    mpz_divexact(at2(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                }
                at2(i, k) = 0;
            }
            prev = at2(k, k);
        }
        return sign * at2(n - 1, n - 1);
    }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < cols_; ++j) s += (j ? " " : "") + at(i, j).get_str();
        }
        return s + "] (" + std::to_string(rows_) + "x" + std::to_string(cols_) + " over " +
               ring_.to_string() + ")";
    }

private:
    void check_shape(int rows, int cols) const {
        if (rows < 0 || cols < 0) throw UsageError("negative matrix dimension");
    }
    size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw UsageError("matrix index out of range");
        return size_t(i) * cols_ + j;
    }
    void require_same_ring(const Matrix& b) const {
        if (ring_ != b.ring_) throw UsageError("mixed-ring matrix operation");
    }
    void require_same_shape(const Matrix& b) const {
        require_same_ring(b);
        if (rows_ != b.rows_ || cols_ != b.cols_) throw UsageError("matrix shape mismatch");
    }

    Ring ring_;
    int rows_, cols_;
    std::vector<Int> e_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

}  // namespace homkit
