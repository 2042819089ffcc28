#pragma once

#include "diagram.hpp"
#include "homotopy.hpp"
#include "resolution.hpp"

#include <json.hpp>

#include <string>

namespace homkit::io {

using nlohmann::json;

/// Int <-> JSON: emitted as decimal strings (no precision loss), accepted
/// as strings or plain JSON integers.
inline json int_to_json(const Int& x) { return x.get_str(); }

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        size_t first = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (first == s.size()) throw UsageError("not an integer: '" + s + "'");
        for (size_t k = first; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw UsageError("not an integer: '" + s + "'");
        Int v(s.substr(first));  // the underlying parser takes '-' but not '+'
        return (s[0] == '-') ? Int(-v) : v;
    }
    throw UsageError("expected an integer (number or decimal string)");
}

inline json ring_to_json(const Ring& r) {
    if (r.is_integers()) return json("Z");
    return json{{"Zmod", int_to_json(r.modulus())}};
}

inline Ring ring_from_json(const json& j) {
    if (j.is_string() && j.get_ref<const std::string&>() == "Z") return Ring::integers();
    if (j.is_object() && j.contains("Zmod")) return Ring::mod(int_from_json(j.at("Zmod")));
    throw UsageError("ring must be \"Z\" or {\"Zmod\": m}");
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"ring", ring_to_json(m.ring())},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("matrix must be an object");
    Ring ring = ring_from_json(j.at("ring"));
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    const json& e = j.at("entries");
    if (!e.is_array() || int(e.size()) != rows) throw UsageError("entries must have 'rows' rows");
    Matrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = e.at(size_t(i));
        if (!row.is_array() || int(row.size()) != cols)
            throw UsageError("entries row " + std::to_string(i) + " must have 'cols' entries");
        for (int jj = 0; jj < cols; ++jj) m.set(i, jj, int_from_json(row.at(size_t(jj))));
    }
    return m;
}

inline json module_to_json(const FpModule& m) {
    return json{{"ring", ring_to_json(m.ring())},
                {"generators", m.generators()},
                {"relations", matrix_to_json(m.relations())}};
}

inline FpModule module_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("module must be an object");
    Ring ring = ring_from_json(j.at("ring"));
    int gens = j.at("generators").get<int>();
    Matrix rel = matrix_from_json(j.at("relations"));
    return FpModule(std::move(ring), gens, std::move(rel));
}

inline json hom_to_json(const ModuleHom& f) {
    return json{{"domain", module_to_json(f.domain())},
                {"codomain", module_to_json(f.codomain())},
                {"map", matrix_to_json(f.matrix())}};
}

inline ModuleHom hom_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("hom must be an object");
    return ModuleHom(module_from_json(j.at("domain")), module_from_json(j.at("codomain")),
                     matrix_from_json(j.at("map")));
}

inline json decomposition_to_json(const Decomposition& d) {
    json factors = json::array();
    for (const Int& x : d.invariant_factors) factors.push_back(int_to_json(x));
    return json{{"ring", ring_to_json(d.ring)},
                {"free_rank", d.free_rank},
                {"invariant_factors", std::move(factors)},
                {"pretty", d.to_string()}};
}

inline json smith_to_json(const SmithForm& s) {
    return json{{"d", matrix_to_json(s.d)},     {"u", matrix_to_json(s.u)},
                {"v", matrix_to_json(s.v)},     {"u_inv", matrix_to_json(s.u_inv)},
                {"v_inv", matrix_to_json(s.v_inv)}, {"rank", s.rank}};
}

inline json complex_to_json(const ChainComplex& c) {
    json degrees = json::array();
    json modules = json::object();
    json boundaries = json::object();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        degrees.push_back(n);
        modules[std::to_string(n)] = module_to_json(c.module_at(n));
        if (n > c.lo()) boundaries[std::to_string(n)] = matrix_to_json(c.boundary_at(n).matrix());
    }
    return json{{"ring", ring_to_json(c.ring())},
                {"degrees", std::move(degrees)},
                {"modules", std::move(modules)},
                {"boundaries", std::move(boundaries)}};
}

inline ChainComplex complex_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("complex must be an object");
    Ring ring = ring_from_json(j.at("ring"));
    const json& degrees = j.at("degrees");
    if (!degrees.is_array() || degrees.empty()) throw UsageError("degrees must be a nonempty array");
    std::vector<int> degs;
    for (const json& d : degrees) degs.push_back(d.get<int>());
    for (size_t i = 1; i < degs.size(); ++i)
        if (degs[i] != degs[i - 1] + 1)
            throw UsageError("degrees must list the window lo..hi consecutively");
    int lo = degs.front();
    std::vector<FpModule> mods;
    for (int n : degs) mods.push_back(module_from_json(j.at("modules").at(std::to_string(n))));
    std::vector<ModuleHom> diffs;
    for (size_t i = 1; i < degs.size(); ++i) {
        Matrix m = matrix_from_json(j.at("boundaries").at(std::to_string(degs[i])));
        diffs.emplace_back(mods[i], mods[i - 1], std::move(m));
    }
    return ChainComplex(std::move(ring), lo, std::move(mods), std::move(diffs));
}

inline json chain_map_to_json(const ChainMap& u) {
    json levels = json::object();
    for (const auto& [n, f] : u.levels()) levels[std::to_string(n)] = matrix_to_json(f.matrix());
    return json{{"levels", std::move(levels)}};
}

inline ChainMap chain_map_from_json(const ChainComplex& src, const ChainComplex& tgt,
                                    const json& j) {
    if (!j.is_object() || !j.contains("levels")) throw UsageError("chain map must have 'levels'");
    std::map<int, Matrix> levels;
    for (const auto& [key, val] : j.at("levels").items())
        levels.emplace(std::stoi(key), matrix_from_json(val));
    return make_chain_map(src, tgt, levels);
}

inline json ses_complexes_to_json(const ShortExactSeqComplexes& s) {
    return json{{"a", complex_to_json(s.a)}, {"b", complex_to_json(s.b)},
                {"c", complex_to_json(s.c)}, {"f", chain_map_to_json(s.f)},
                {"g", chain_map_to_json(s.g)}};
}

inline ShortExactSeqComplexes ses_complexes_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("short exact sequence must be an object");
    ChainComplex a = complex_from_json(j.at("a"));
    ChainComplex b = complex_from_json(j.at("b"));
    ChainComplex c = complex_from_json(j.at("c"));
    ChainMap f = chain_map_from_json(a, b, j.at("f"));
    ChainMap g = chain_map_from_json(b, c, j.at("g"));
    return ShortExactSeqComplexes(std::move(a), std::move(b), std::move(c), std::move(f),
                                  std::move(g));
}

/// Degree-raising maps serialize with full homs per level.
inline json raising_to_json(const DegreeRaisingMaps& s) {
    json levels = json::object();
    for (const auto& [n, f] : s.levels()) levels[std::to_string(n)] = hom_to_json(f);
    return json{{"levels", std::move(levels)}};
}

inline json resolution_to_json(const Resolution& r) {
    json ranks = json::array();
    for (int i = 0; i <= r.depth(); ++i) ranks.push_back(r.rank(i));
    json maps = json::object();
    for (int i = 1; i <= r.depth(); ++i) maps[std::to_string(i)] = matrix_to_json(r.map(i).matrix());
    return json{{"target", module_to_json(r.target())},
                {"ranks", std::move(ranks)},
                {"augmentation", matrix_to_json(r.augmentation().matrix())},
                {"maps", std::move(maps)},
                {"complete", r.complete()}};
}

inline json les_to_json(const LongExactSequence& les) {
    json labels = json::array(), decs = json::array(), maps = json::array();
    for (const std::string& l : les.labels) labels.push_back(l);
    for (const FpModule& m : les.modules) decs.push_back(decomposition_to_json(m.decomposition()));
    for (const ModuleHom& f : les.maps) maps.push_back(matrix_to_json(f.matrix()));
    return json{{"labels", std::move(labels)},
                {"decompositions", std::move(decs)},
                {"maps", std::move(maps)},
                {"exact", les.exact}};
}

}  // namespace homkit::io
