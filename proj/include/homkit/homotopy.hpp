#pragma once

#include "complex.hpp"

#include <optional>
#include <tuple>

namespace homkit {

namespace detail {

/**
 * Sparse block assembler for one flat linear system A x = b over a ring.
 * Unknown blocks and equation blocks are registered with sizes; individual
 * coefficient cells are set as matrices.  Unset cells are zero.
 */
class BlockSystem {
public:
    explicit BlockSystem(Ring ring) : ring_(std::move(ring)) {}

    /// Register n unknowns; returns the block handle.
    int add_unknowns(int n) {
        col_off_.push_back(col_off_.back() + n);
        return int(col_off_.size()) - 2;
    }

    /// Register n equations with right-hand side rhs (n x 1); returns handle.
    int add_equations(const Matrix& rhs) {
        if (rhs.cols() != 1) throw UsageError("rhs must be a column");
        row_off_.push_back(row_off_.back() + rhs.rows());
        rhs_.push_back(rhs);
        return int(row_off_.size()) - 2;
    }

    void set(int eq_block, int unk_block, Matrix coeff) {
        cells_.emplace_back(eq_block, unk_block, std::move(coeff));
    }

    /// Solve the assembled system; nullopt when inconsistent.
    std::optional<Matrix> solve_all() const {
        int rows = row_off_.back(), cols = col_off_.back();
        Matrix a(ring_, rows, cols);
        for (const auto& [eb, ub, m] : cells_) {
            int r0 = row_off_[size_t(eb)], c0 = col_off_[size_t(ub)];
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    if (m.at(i, j) != 0) a.set(r0 + i, c0 + j, m.at(i, j));
        }
        Matrix b(ring_, rows, 1);
        for (size_t k = 0; k < rhs_.size(); ++k) {
            int r0 = row_off_[k];
            for (int i = 0; i < rhs_[k].rows(); ++i) b.set(r0 + i, 0, rhs_[k].at(i, 0));
        }
        return homkit::solve(a, b);
    }

    /// Slice one unknown block out of a full solution column.
    Matrix extract(const Matrix& solution, int unk_block) const {
        int c0 = col_off_[size_t(unk_block)];
        return solution.rows_slice(c0, col_off_[size_t(unk_block) + 1] - c0);
    }

private:
    Ring ring_;
    std::vector<int> col_off_{0}, row_off_{0};
    std::vector<std::tuple<int, int, Matrix>> cells_;
    std::vector<Matrix> rhs_;
};

}  // namespace detail

/**
 * Degree-raising collection s_n: C_n -> D_{n+1}.  Stores one ModuleHom per
 * degree; degrees not present are zero maps.  No compatibility condition
 * is imposed here — verify_null_homotopy checks the homotopy identity.
 */
class DegreeRaisingMaps {
public:
    DegreeRaisingMaps(ChainComplex source, ChainComplex target, std::map<int, ModuleHom> levels)
        : src_(std::move(source)), tgt_(std::move(target)), levels_(std::move(levels)) {
        for (const auto& [n, s] : levels_)
            if (s.domain() != src_.module_at(n) || s.codomain() != tgt_.module_at(n + 1))
                throw UsageError("raising map at degree " + std::to_string(n) +
                                 " must go C_n -> D_{n+1}");
    }

    const ChainComplex& source() const { return src_; }
    const ChainComplex& target() const { return tgt_; }

    ModuleHom level(int n) const {
        auto it = levels_.find(n);
        if (it != levels_.end()) return it->second;
        return ModuleHom::zero(src_.module_at(n), tgt_.module_at(n + 1));
    }

    const std::map<int, ModuleHom>& levels() const { return levels_; }

private:
    ChainComplex src_, tgt_;
    std::map<int, ModuleHom> levels_;
};

/**
 * Check the homotopy identity f_n = d_{n+1} s_n + s_{n-1} d_n at every
 * degree, i.e. that s witnesses f ~ 0.
 */
inline bool verify_null_homotopy(const ChainMap& f, const DegreeRaisingMaps& s) {
    const ChainComplex& c = f.source();
    const ChainComplex& d = f.target();
    int a = c.lo() < d.lo() ? c.lo() : d.lo();
    int b = c.hi() > d.hi() ? c.hi() : d.hi();
    for (int n = a; n <= b; ++n) {
        ModuleHom lhs = f.level(n);
        ModuleHom rhs = compose(s.level(n), d.boundary_at(n + 1)) +
                        compose(c.boundary_at(n), s.level(n - 1));
        if (!hom_equal(lhs, rhs)) return false;
    }
    return true;
}

/**
 * Search for a null homotopy of f by solving one joint linear system over
 * all degrees at once.  Unknowns are the entries of every s_n together
 * with slack matrices absorbing the codomain relations (both in the
 * homotopy identity and in the well-definedness of each s_n).  Returns a
 * verified witness, or nullopt when none exists.
 */
inline std::optional<DegreeRaisingMaps> find_null_homotopy(const ChainMap& f) {
    const ChainComplex& c = f.source();
    const ChainComplex& d = f.target();
    const Ring& ring = c.ring();
    int a = c.lo() < d.lo() ? c.lo() : d.lo();
    int b = c.hi() > d.hi() ? c.hi() : d.hi();

    detail::BlockSystem sys(ring);
    std::map<int, std::tuple<int, int, int>> s_blocks;  // n -> (block, rows, cols) of s_n

    for (int n = a; n <= b; ++n) {
        int gc = c.module_at(n).generators();
        int gd1 = d.module_at(n + 1).generators();
        if (gc > 0 && gd1 > 0) s_blocks[n] = {sys.add_unknowns(gd1 * gc), gd1, gc};
    }

    for (int n = a; n <= b; ++n) {
        FpModule cn = c.module_at(n), dn = d.module_at(n);
        if (cn.generators() == 0 || dn.generators() == 0) {
            // Identity reduces to 0 = 0; but f_n could still be a nonzero
            // matrix only when both modules have generators, so nothing to do.
            continue;
        }
        int eq = sys.add_equations(f.level(n).matrix().vec());
        auto it = s_blocks.find(n);
        if (it != s_blocks.end()) {
            // vec(d_{n+1} s_n) = (I (x) d_{n+1}) vec(s_n)
            Matrix dd = d.boundary_at(n + 1).matrix();
            sys.set(eq, std::get<0>(it->second),
                    Matrix::kronecker(Matrix::identity(ring, cn.generators()), dd));
        }
        auto jt = s_blocks.find(n - 1);
        if (jt != s_blocks.end()) {
            // vec(s_{n-1} d_n) = (d_n^T (x) I) vec(s_{n-1})
            Matrix dc = c.boundary_at(n).matrix();
            sys.set(eq, std::get<0>(jt->second),
                    Matrix::kronecker(dc.transpose(), Matrix::identity(ring, dn.generators())));
        }
        // Slack: the identity need only hold modulo the relations of D_n.
        const Matrix& rel = dn.relations();
        if (rel.cols() > 0) {
            int w = sys.add_unknowns(rel.cols() * cn.generators());
            sys.set(eq, w, Matrix::kronecker(Matrix::identity(ring, cn.generators()), rel));
        }
    }

    // Well-definedness of each s_n: s_n R_{C_n} = R_{D_{n+1}} X_n.
    for (const auto& [n, blk] : s_blocks) {
        FpModule cn = c.module_at(n);
        FpModule dn1 = d.module_at(n + 1);
        const Matrix& rc = cn.relations();
        if (rc.cols() == 0) continue;
        int gd1 = std::get<1>(blk);
        int eq = sys.add_equations(Matrix::zero(ring, gd1 * rc.cols(), 1));
        sys.set(eq, std::get<0>(blk),
                Matrix::kronecker(rc.transpose(), Matrix::identity(ring, gd1)));
        const Matrix& rd = dn1.relations();
        if (rd.cols() > 0) {
            int x = sys.add_unknowns(rd.cols() * rc.cols());
            sys.set(eq, x, -Matrix::kronecker(Matrix::identity(ring, rc.cols()), rd));
        }
    }

    auto sol = sys.solve_all();
    if (!sol) return std::nullopt;

    std::map<int, ModuleHom> levels;
    for (const auto& [n, blk] : s_blocks) {
        auto [block, rows, cols] = blk;
        Matrix sn = Matrix::unvec(ring, rows, cols, sys.extract(*sol, block));
        levels.emplace(n, ModuleHom(c.module_at(n), d.module_at(n + 1), sn));
    }
    DegreeRaisingMaps s(c, d, std::move(levels));
    if (!verify_null_homotopy(f, s))
        throw std::logic_error("null homotopy solution failed verification");
    return s;
}

/// Witness that f and g are chain homotopic, or nullopt.
inline std::optional<DegreeRaisingMaps> are_chain_homotopic(const ChainMap& f, const ChainMap& g) {
    return find_null_homotopy(sub_chain(f, g));
}

/**
 * Contracting-homotopy search: per degree n, solve d_n s_{n-1} d_n = d_n
 * for s_{n-1}: C_{n-1} -> C_n (with relation slack on both the identity
 * and well-definedness).  Succeeds on every degree iff the complex splits.
 */
inline std::optional<DegreeRaisingMaps> find_splitting(const ChainComplex& c) {
    const Ring& ring = c.ring();
    std::map<int, ModuleHom> levels;
    for (int n = c.lo() + 1; n <= c.hi(); ++n) {
        Matrix dn = c.boundary_at(n).matrix();
        if (dn.is_zero()) continue;  // d s d = d holds with s = 0
        FpModule cn = c.module_at(n), cn1 = c.module_at(n - 1);
        detail::BlockSystem sys(ring);
        int s = sys.add_unknowns(cn.generators() * cn1.generators());
        int eq = sys.add_equations(dn.vec());
        // vec(d s d) = (d^T (x) d) vec(s)
        sys.set(eq, s, Matrix::kronecker(dn.transpose(), dn));
        const Matrix& rel1 = cn1.relations();
        if (rel1.cols() > 0) {
            int w = sys.add_unknowns(rel1.cols() * cn.generators());
            sys.set(eq, w, Matrix::kronecker(Matrix::identity(ring, cn.generators()), rel1));
        }
        if (rel1.cols() > 0) {
            int wd = sys.add_equations(Matrix::zero(ring, cn.generators() * rel1.cols(), 1));
            sys.set(wd, s, Matrix::kronecker(rel1.transpose(), Matrix::identity(ring, cn.generators())));
            const Matrix& reln = cn.relations();
            if (reln.cols() > 0) {
                int x = sys.add_unknowns(reln.cols() * rel1.cols());
                sys.set(wd, x, -Matrix::kronecker(Matrix::identity(ring, rel1.cols()), reln));
            }
        }
        auto sol = sys.solve_all();
        if (!sol) return std::nullopt;
        Matrix sn = Matrix::unvec(ring, cn.generators(), cn1.generators(), sys.extract(*sol, s));
        levels.emplace(n - 1, ModuleHom(cn1, cn, sn));
    }
    return DegreeRaisingMaps(c, c, std::move(levels));
}

/// Split exact: exact and admitting degreewise splittings of the boundaries.
inline bool is_split_exact(const ChainComplex& c) {
    return find_splitting(c).has_value() && is_exact(c);
}

/**
 * Verify that (f, q, s, t) is a homotopy equivalence: s witnesses
 * q f ~ id on f's source and t witnesses f q ~ id on f's target.
 */
inline bool verify_homotopy_equivalence(const ChainMap& f, const ChainMap& q,
                                        const DegreeRaisingMaps& s, const DegreeRaisingMaps& t) {
    ChainMap qf_minus_id = sub_chain(compose_chain(f, q), identity_chain_map(f.source()));
    ChainMap fq_minus_id = sub_chain(compose_chain(q, f), identity_chain_map(f.target()));
    return verify_null_homotopy(qf_minus_id, s) && verify_null_homotopy(fq_minus_id, t);
}

}  // namespace homkit
