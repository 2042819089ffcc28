#pragma once

// Command-line surface.  `run` is the whole program: it takes the argument
// vector (without the program name) and the two output streams, so tests can
// drive every verb in-process and assert on exit codes and exact output.
//
// Exit contract: 0 success, 1 domain error (a computation refused the input:
// failed exactness, broken complex, impossible lift), 2 usage error (bad
// flags, unreadable or unparsable files, schema violations).

#include <homkit/homkit.hpp>

#include <CLI11.hpp>

#include "selfcheck.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace homkit::cli {

namespace detail {

inline io::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return io::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

/// Schema violations surface as missing-key/wrong-type accesses deep inside
/// the from_json readers; fold them into usage errors that name the file.
template <typename Fn>
auto parse_schema(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

inline Ring ring_from_flag(const std::string& s) {
    if (s.empty() || s == "Z") return Ring::integers();
    std::string digits = s.rfind("Z/", 0) == 0 ? s.substr(2) : s;
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char ch) { return std::isdigit(ch) != 0; }))
        throw UsageError("unrecognized ring '" + s + "' (use Z or Z/m)");
    Int m(digits);
    if (m < 2) throw UsageError("ring modulus must be at least 2, got '" + s + "'");
    return Ring::mod(m);
}

inline std::string ring_name(const Ring& r) {
    return r.is_integers() ? "Z" : "Z/" + r.modulus().get_str();
}

/// "H0 = Z, H1 = 0, H2 = Z" over an inclusive degree range.
inline std::string homology_line(const std::vector<std::pair<int, Decomposition>>& rows) {
    std::string out;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) out += ", ";
        out += "H" + std::to_string(rows[i].first) + " = " + rows[i].second.to_string();
    }
    return out;
}

inline int run_snf(const std::string& file, bool as_json, std::ostream& out) {
    Matrix a = parse_schema(file, [&] { return io::matrix_from_json(load_json(file)); });
    SmithForm s = snf(a);
    if (as_json) {
        out << io::smith_to_json(s).dump(2) << "\n";
        return 0;
    }
    out << "rank: " << s.rank << "\n";
    out << "diagonal:";
    for (int i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
        out << " " << s.d.at(i, i).get_str();
    out << "\n";
    return 0;
}

inline int run_decompose(const std::string& file, bool as_json, std::ostream& out) {
    FpModule m = parse_schema(file, [&] { return io::module_from_json(load_json(file)); });
    Decomposition d = m.decomposition();
    if (as_json)
        out << io::decomposition_to_json(d).dump(2) << "\n";
    else
        out << d.to_string() << "\n";
    return 0;
}

inline int run_homology(const std::string& file, bool simplicial, const std::string& ring_flag,
                        std::optional<int> degree, bool as_json, std::ostream& out) {
    std::vector<std::pair<int, Decomposition>> rows;
    if (simplicial) {
        SimplicialComplex k = SimplicialComplex::load(file);
        Ring ring = ring_from_flag(ring_flag);
        ChainComplex c = k.chain_complex(ring);
        for (int n = 0; n <= k.dim(); ++n) rows.emplace_back(n, homology(c, n).decomposition());
    } else {
        ChainComplex c =
            parse_schema(file, [&] { return io::complex_from_json(load_json(file)); });
        if (!ring_flag.empty() && ring_from_flag(ring_flag) != c.ring())
            throw UsageError("--ring " + ring_flag + " does not match the file's ring " +
                             ring_name(c.ring()));
        for (int n = c.lo(); n <= c.hi(); ++n) rows.emplace_back(n, homology(c, n).decomposition());
    }
    if (degree) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const auto& r) { return r.first == *degree; });
        if (it == rows.end())
            throw UsageError("degree " + std::to_string(*degree) + " is outside the window");
        rows = {*it};
    }
    if (as_json) {
        io::json j = io::json::array();
        for (const auto& [n, d] : rows)
            j.push_back({{"degree", n}, {"decomposition", io::decomposition_to_json(d)}});
        out << j.dump(2) << "\n";
    } else {
        out << homology_line(rows) << "\n";
    }
    return 0;
}

inline int run_check_exact(const std::string& file, bool as_json, std::ostream& out) {
    ChainComplex c = parse_schema(file, [&] { return io::complex_from_json(load_json(file)); });
    std::vector<int> failures;
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (!is_exact_at(c, n)) failures.push_back(n);
    if (as_json) {
        out << io::json{{"exact", failures.empty()}, {"failures", failures}}.dump(2) << "\n";
        return failures.empty() ? 0 : 1;
    }
    if (failures.empty()) {
        out << "exact\n";
        return 0;
    }
    out << "not exact at degree " << failures.front() << "\n";
    return 1;
}

inline int run_les(const std::string& file, bool as_json, std::ostream& out) {
    ShortExactSeqComplexes ses =
        parse_schema(file, [&] { return io::ses_complexes_from_json(load_json(file)); });
    LongExactSequence les = long_exact_sequence(ses);
    if (as_json) {
        out << io::les_to_json(les).dump(2) << "\n";
        return 0;
    }
    for (size_t i = 0; i < les.modules.size(); ++i)
        out << les.labels[i] << " = " << les.modules[i].decomposition().to_string() << "\n";
    out << "exact: yes\n";
    return 0;
}

inline int run_homotopy(const std::string& file, bool as_json, std::ostream& out) {
    ChainComplex c = parse_schema(file, [&] { return io::complex_from_json(load_json(file)); });
    auto s = find_null_homotopy(identity_chain_map(c));
    bool split = is_split_exact(c);
    if (as_json) {
        io::json j{{"identity_null_homotopic", s.has_value()}, {"split_exact", split}};
        if (s) j["contraction"] = io::raising_to_json(*s);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "identity null-homotopic: " << (s ? "yes" : "no") << "\n";
    out << "split exact: " << (split ? "yes" : "no") << "\n";
    return 0;
}

inline int run_resolve(const std::string& file, int depth, bool as_json, std::ostream& out) {
    FpModule m = parse_schema(file, [&] { return io::module_from_json(load_json(file)); });
    if (depth < 0) throw UsageError("--depth must be nonnegative");
    Resolution r = free_resolution(m, depth);
    if (as_json) {
        out << io::resolution_to_json(r).dump(2) << "\n";
        return 0;
    }
    out << "ranks:";
    for (int i = 0; i <= r.depth(); ++i) out << " " << r.rank(i);
    out << "\n";
    out << "complete: " << (r.complete() ? "yes" : "no") << "\n";
    return 0;
}

inline int run_tor(const std::string& file_a, const std::string& file_b,
                   const std::string& ring_flag, int degree, const std::string& side_flag,
                   const std::vector<int>& table, bool as_json, std::ostream& out,
                   std::ostream& err) {
    if (degree < 0) throw UsageError("--degree must be nonnegative");
    ResolveSide side = ResolveSide::Right;
    if (side_flag == "left")
        side = ResolveSide::Left;
    else if (!side_flag.empty() && side_flag != "right")
        throw UsageError("--side must be 'left' or 'right', got '" + side_flag + "'");

    if (!table.empty()) {
        // Cross-checked gcd table over Z; the two inputs are ranges, not files.
        if (!file_a.empty() || !file_b.empty())
            throw UsageError("--table replaces the two module files");
        long a_max = table[0], b_max = table[1];
        if (a_max < 2 || b_max < 2) throw UsageError("--table bounds must be at least 2");
        io::json rows = io::json::array();
        for (long a = 2; a <= a_max; ++a)
            for (long b = 2; b <= b_max; ++b) {
                FpModule t = tor(FpModule::cyclic(Ring::integers(), a),
                                 FpModule::cyclic(Ring::integers(), b), degree, side);
                if (degree == 1 &&
                    !is_isomorphic(t, FpModule::cyclic(Ring::integers(), std::gcd(a, b)))) {
                    err << "table self-check failed at (" << a << ", " << b << ")\n";
                    return 1;
                }
                if (as_json)
                    rows.push_back({{"a", a},
                                    {"b", b},
                                    {"decomposition", io::decomposition_to_json(t.decomposition())}});
                else
                    out << "Tor_" << degree << "(Z/" << a << ", Z/" << b
                        << ") = " << t.decomposition().to_string() << "\n";
            }
        if (as_json) out << rows.dump(2) << "\n";
        return 0;
    }

    if (file_a.empty() || file_b.empty())
        throw UsageError("tor needs two module files (or --table)");
    FpModule a = parse_schema(file_a, [&] { return io::module_from_json(load_json(file_a)); });
    FpModule b = parse_schema(file_b, [&] { return io::module_from_json(load_json(file_b)); });
    if (a.ring() != b.ring())
        throw UsageError("module rings differ: " + ring_name(a.ring()) + " vs " +
                         ring_name(b.ring()));
    if (!ring_flag.empty() && ring_from_flag(ring_flag) != a.ring())
        throw UsageError("--ring " + ring_flag + " does not match the modules' ring " +
                         ring_name(a.ring()));
    FpModule t = tor(a, b, degree, side);
    if (as_json)
        out << io::json{{"degree", degree},
                        {"decomposition", io::decomposition_to_json(t.decomposition())}}
                   .dump(2)
            << "\n";
    else
        out << t.decomposition().to_string() << "\n";
    return 0;
}

inline int run_report(bool as_json, std::ostream& out) {
    std::vector<selfcheck::CheckResult> results = selfcheck::run_all();
    if (as_json) {
        io::json j = io::json::array();
        for (const auto& r : results)
            j.push_back({{"name", r.name},
                         {"pass", r.pass},
                         {"detail", r.detail},
                         {"seconds", r.seconds}});
        out << j.dump(2) << "\n";
        return std::all_of(results.begin(), results.end(),
                           [](const auto& r) { return r.pass; })
                   ? 0
                   : 1;
    }
    return selfcheck::print_report(results, out) ? 0 : 1;
}

}  // namespace detail

/// Entry point shared by the binary and the in-process tests.  `args` is the
/// argument vector without the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"homological algebra over Z and Z/m"};
    app.name("homkit");
    app.require_subcommand(1);

    std::string snf_file;
    bool snf_json = false;
    CLI::App* c_snf = app.add_subcommand("snf", "Smith normal form of a matrix");
    c_snf->add_option("matrix", snf_file, "matrix JSON file")->required();
    c_snf->add_flag("--json", snf_json, "emit JSON");

    std::string dec_file;
    bool dec_json = false;
    CLI::App* c_dec = app.add_subcommand("decompose", "canonical decomposition of a module");
    c_dec->add_option("module", dec_file, "module JSON file")->required();
    c_dec->add_flag("--json", dec_json, "emit JSON");

    std::string hom_file, hom_ring;
    bool hom_simplicial = false, hom_json = false;
    int hom_degree = 0;
    CLI::App* c_hom = app.add_subcommand("homology", "homology of a complex or facet file");
    c_hom->add_option("input", hom_file, "chain complex JSON, or facet file with --simplicial")
        ->required();
    c_hom->add_flag("--simplicial", hom_simplicial, "input lists simplices, one per line");
    c_hom->add_option("--ring", hom_ring, "coefficient ring: Z (default) or Z/m");
    CLI::Option* hom_degree_opt = c_hom->add_option("--degree", hom_degree, "report one degree");
    c_hom->add_flag("--json", hom_json, "emit JSON");

    std::string chk_file;
    bool chk_json = false;
    CLI::App* c_chk = app.add_subcommand("check-exact", "certify exactness of a complex");
    c_chk->add_option("complex", chk_file, "chain complex JSON file")->required();
    c_chk->add_flag("--json", chk_json, "emit JSON");

    std::string les_file;
    bool les_json = false;
    CLI::App* c_les = app.add_subcommand("les", "long exact sequence of a short exact sequence");
    c_les->add_option("ses", les_file, "short exact sequence of complexes, JSON")->required();
    c_les->add_flag("--json", les_json, "emit JSON");

    std::string hty_file;
    bool hty_json = false;
    CLI::App* c_hty = app.add_subcommand("homotopy", "contract the identity if possible");
    c_hty->add_option("complex", hty_file, "chain complex JSON file")->required();
    c_hty->add_flag("--json", hty_json, "emit JSON");

    std::string res_file;
    int res_depth = 4;
    bool res_json = false;
    CLI::App* c_res = app.add_subcommand("resolve", "free resolution of a module");
    c_res->add_option("module", res_file, "module JSON file")->required();
    c_res->add_option("--depth", res_depth, "resolution depth (default 4)");
    c_res->add_flag("--json", res_json, "emit JSON");

    std::string tor_a, tor_b, tor_ring, tor_side;
    int tor_degree = 1;
    std::vector<int> tor_table;
    bool tor_json = false;
    CLI::App* c_tor = app.add_subcommand("tor", "derived tensor of two modules");
    c_tor->add_option("a", tor_a, "left module JSON file");
    c_tor->add_option("b", tor_b, "right module JSON file");
    c_tor->add_option("--ring", tor_ring, "expected ring, checked against the files");
    c_tor->add_option("--degree", tor_degree, "derived degree (default 1)");
    c_tor->add_option("--side", tor_side, "which argument to resolve: left or right");
    c_tor->add_option("--table", tor_table, "gcd table up to the two bounds")->expected(2);
    c_tor->add_flag("--json", tor_json, "emit JSON");

    bool rep_json = false;
    CLI::App* c_rep = app.add_subcommand("report", "run the full self-check battery");
    c_rep->add_flag("--json", rep_json, "emit JSON");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(c_snf)) return detail::run_snf(snf_file, snf_json, out);
        if (app.got_subcommand(c_dec)) return detail::run_decompose(dec_file, dec_json, out);
        if (app.got_subcommand(c_hom))
            return detail::run_homology(hom_file, hom_simplicial, hom_ring,
                                        hom_degree_opt->count() ? std::optional<int>(hom_degree)
                                                                : std::nullopt,
                                        hom_json, out);
        if (app.got_subcommand(c_chk)) return detail::run_check_exact(chk_file, chk_json, out);
        if (app.got_subcommand(c_les)) return detail::run_les(les_file, les_json, out);
        if (app.got_subcommand(c_hty)) return detail::run_homotopy(hty_file, hty_json, out);
        if (app.got_subcommand(c_res))
            return detail::run_resolve(res_file, res_depth, res_json, out);
        if (app.got_subcommand(c_tor))
            return detail::run_tor(tor_a, tor_b, tor_ring, tor_degree, tor_side, tor_table,
                                   tor_json, out, err);
        if (app.got_subcommand(c_rep)) return detail::run_report(rep_json, out);
        err << "error: no verb\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const AlgebraError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace homkit::cli
