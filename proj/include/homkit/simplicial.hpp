#pragma once

#include "complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace homkit {

/**
 * Finite abstract simplicial complex, stored as the full closure of a
 * facet list.  Simplices are sorted vertex-index vectors; within each
 * dimension they are kept in lexicographic order, which fixes the rows
 * and columns of every boundary matrix.  Dimension is capped at 8.
 */
class SimplicialComplex {
public:
    static constexpr int max_dimension = 8;

    static SimplicialComplex from_facets(const std::vector<std::vector<int>>& facets) {
        SimplicialComplex k;
        std::set<std::vector<int>> seen;
        for (const std::vector<int>& f : facets) {
            std::vector<int> s(f);
            for (int v : s)
                if (v < 0) throw UsageError("negative vertex index");
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            if (s.empty()) throw UsageError("empty facet");
            if (int(s.size()) > max_dimension + 1)
                throw AlgebraError("facet of dimension " + std::to_string(s.size() - 1) +
                                   " exceeds the cap of " + std::to_string(max_dimension));
            // Close downward: every nonempty subset is a simplex.
            for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
                std::vector<int> face;
                for (size_t i = 0; i < s.size(); ++i)
                    if (mask & (1u << i)) face.push_back(s[i]);
                seen.insert(std::move(face));
            }
        }
        if (seen.empty()) throw AlgebraError("complex has no simplices");
        for (const std::vector<int>& s : seen) {
            int d = int(s.size()) - 1;
            if (d >= int(k.simplices_.size())) k.simplices_.resize(size_t(d) + 1);
            k.simplices_[size_t(d)].push_back(s);
        }
        // std::set iterates lexicographically, but group-by-dimension needs
        // its own sort since shorter simplices interleave with longer ones.
        for (auto& level : k.simplices_) std::sort(level.begin(), level.end());
        return k;
    }

    /**
     * Parse the facet-list text format: one facet per line as whitespace
     * separated vertex indices; '#' starts a comment; blank lines ignored.
     */
    static SimplicialComplex parse(std::istream& in) {
        std::vector<std::vector<int>> facets;
        std::string line;
        while (std::getline(in, line)) {
            size_t hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::istringstream row(line);
            std::vector<int> facet;
            long long v;
            while (row >> v) {
                if (v < 0) throw UsageError("negative vertex index");
                facet.push_back(int(v));
            }
            if (!row.eof()) throw UsageError("non-numeric token in facet list");
            if (!facet.empty()) facets.push_back(std::move(facet));
        }
        return from_facets(facets);
    }

    static SimplicialComplex load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open " + path);
        return parse(in);
    }

    int dim() const { return int(simplices_.size()) - 1; }

    int count(int d) const {
        return d >= 0 && d <= dim() ? int(simplices_[size_t(d)].size()) : 0;
    }

    const std::vector<std::vector<int>>& simplices(int d) const {
        if (d < 0 || d > dim()) throw UsageError("dimension out of range");
        return simplices_[size_t(d)];
    }

    /// Alternating sum of face counts.
    long long euler_characteristic() const {
        long long chi = 0;
        for (int d = 0; d <= dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * count(d);
        return chi;
    }

    /**
     * Boundary matrix of degree n in the sorted-vertex orientation: the
     * face dropping the j-th smallest vertex enters with sign (-1)^j.
     * For n = 0 the matrix has zero rows (the boundary of a vertex is 0).
     */
    Matrix boundary_matrix(int n, const Ring& ring = Ring::integers()) const {
        if (n < 0 || n > dim()) throw UsageError("degree out of range");
        if (n == 0) return Matrix(ring, 0, count(0));
        const auto& faces = simplices_[size_t(n) - 1];
        const auto& cells = simplices_[size_t(n)];
        std::map<std::vector<int>, int> index;
        for (int i = 0; i < int(faces.size()); ++i) index.emplace(faces[size_t(i)], i);
        Matrix d(ring, int(faces.size()), int(cells.size()));
        for (int j = 0; j < int(cells.size()); ++j) {
            const std::vector<int>& s = cells[size_t(j)];
            for (size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> face;
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                d.set(index.at(face), j, drop % 2 == 0 ? 1 : -1);
            }
        }
        return d;
    }

    /// Simplicial chain complex over the given ring, degrees [0, dim].
    ChainComplex chain_complex(const Ring& ring) const {
        std::vector<FpModule> mods;
        std::vector<ModuleHom> diffs;
        for (int d = 0; d <= dim(); ++d) mods.push_back(FpModule::free_module(ring, count(d)));
        for (int d = 1; d <= dim(); ++d)
            diffs.emplace_back(mods[size_t(d)], mods[size_t(d) - 1], boundary_matrix(d, ring));
        return ChainComplex(ring, 0, std::move(mods), std::move(diffs));
    }

private:
    std::vector<std::vector<std::vector<int>>> simplices_;  // [dim][cell] = sorted vertices
};

/// Homology decomposition in one degree of a simplicial complex.
struct DegreeHomology {
    int degree;
    Decomposition decomposition;
};

/// Integral homology of every degree 0..dim.
inline std::vector<DegreeHomology> homology_report(const SimplicialComplex& k) {
    ChainComplex c = k.chain_complex(Ring::integers());
    std::vector<DegreeHomology> out;
    for (int n = 0; n <= k.dim(); ++n) out.push_back({n, homology(c, n).decomposition()});
    return out;
}

}  // namespace homkit
