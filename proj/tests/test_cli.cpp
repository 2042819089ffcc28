#include <catch2/catch_amalgamated.hpp>

#include <homkit/homkit.hpp>

#include "../tools/cli_app.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef HOMKIT_FIXTURE_DIR
#define HOMKIT_FIXTURE_DIR "fixtures"
#endif

using namespace homkit;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
    return std::string(HOMKIT_FIXTURE_DIR) + "/" + name;
}

/// Write content to a fresh temp file and return its path.
std::string temp_file(const std::string& stem, const std::string& content) {
    static int counter = 0;
    auto path = std::filesystem::temp_directory_path() /
                ("homkit_cli_" + stem + "_" + std::to_string(counter++) + ".json");
    std::ofstream f(path);
    f << content;
    return path.string();
}

}  // namespace

TEST_CASE("shipped fixture contracts", "[cli]") {
    SECTION("simplicial homology of the hollow tetrahedron") {
        RunResult r = run_cli({"homology", "--simplicial", fixture("tetra_hollow.txt")});
        CHECK(r.code == 0);
        CHECK(r.out == "H0 = Z, H1 = 0, H2 = Z\n");
    }
    SECTION("the other three surfaces") {
        CHECK(run_cli({"homology", "--simplicial", fixture("triangle_hollow.txt")}).out ==
              "H0 = Z, H1 = Z\n");
        CHECK(run_cli({"homology", "--simplicial", fixture("rp2_6.txt")}).out ==
              "H0 = Z, H1 = Z/2, H2 = 0\n");
        CHECK(run_cli({"homology", "--simplicial", fixture("klein_8.txt")}).out ==
              "H0 = Z, H1 = Z ⊕ Z/2, H2 = 0\n");
    }
    SECTION("exactness certification") {
        RunResult good = run_cli({"check-exact", fixture("ses_times2.json")});
        CHECK(good.code == 0);
        CHECK(good.out == "exact\n");

        RunResult bad = run_cli({"check-exact", fixture("ses_times6_bad.json")});
        CHECK(bad.code == 1);
        CHECK(bad.out == "not exact at degree 1\n");
    }
    SECTION("derived tensor of the two shipped modules") {
        RunResult r = run_cli({"tor", "--ring", "Z", fixture("mod_z4.json"),
                               fixture("mod_z6.json"), "--degree", "1"});
        CHECK(r.code == 0);
        CHECK(r.out == "Z/2\n");
    }
    SECTION("long exact sequence of the doubling extension") {
        RunResult r = run_cli({"les", fixture("ses_doubling_complexes.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("H_1(C) = Z\n") != std::string::npos);
        CHECK(r.out.find("H_0(B) = Z/2\n") != std::string::npos);
        CHECK(r.out.find("exact: yes\n") != std::string::npos);
    }
}

TEST_CASE("matrix and module verbs", "[cli]") {
    std::string m24 = temp_file(
        "m24", R"({"ring":"Z","rows":2,"cols":2,"entries":[["2","4"],["6","8"]]})");

    SECTION("snf text output") {
        RunResult r = run_cli({"snf", m24});
        CHECK(r.code == 0);
        CHECK(r.out == "rank: 2\ndiagonal: 2 4\n");
    }
    SECTION("snf --json round-trips and reconstructs") {
        RunResult r = run_cli({"snf", m24, "--json"});
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        Matrix a = io::matrix_from_json(json::parse(
            R"({"ring":"Z","rows":2,"cols":2,"entries":[["2","4"],["6","8"]]})"));
        Matrix d = io::matrix_from_json(j.at("d"));
        Matrix u = io::matrix_from_json(j.at("u"));
        Matrix v = io::matrix_from_json(j.at("v"));
        CHECK(u * a * v == d);
        CHECK(j.at("rank").get<int>() == 2);
        // emitted JSON re-parses to the same values
        CHECK(io::matrix_to_json(d) == j.at("d"));
    }
    SECTION("decompose") {
        RunResult r = run_cli({"decompose", fixture("mod_z4.json")});
        CHECK(r.code == 0);
        CHECK(r.out == "Z/4\n");

        RunResult rj = run_cli({"decompose", fixture("mod_z4.json"), "--json"});
        REQUIRE(rj.code == 0);
        json j = json::parse(rj.out);
        CHECK(j.at("free_rank").get<int>() == 0);
        CHECK(j.at("invariant_factors") == json::array({"4"}));
        CHECK(j.at("pretty").get<std::string>() == "Z/4");
    }
    SECTION("resolve") {
        RunResult r = run_cli({"resolve", fixture("mod_z4.json"), "--depth", "3"});
        CHECK(r.code == 0);
        CHECK(r.out == "ranks: 1 1\ncomplete: yes\n");

        RunResult rj = run_cli({"resolve", fixture("mod_z4.json"), "--json"});
        REQUIRE(rj.code == 0);
        json j = json::parse(rj.out);
        CHECK(j.at("complete").get<bool>());
        CHECK(j.at("ranks") == json::array({1, 1}));
    }
}

TEST_CASE("homology and homotopy verbs on complex files", "[cli]") {
    SECTION("window homology and --degree") {
        RunResult all = run_cli({"homology", fixture("ses_times6_bad.json")});
        CHECK(all.code == 0);
        CHECK(all.out == "H0 = 0, H1 = Z/2, H2 = 0\n");

        RunResult one = run_cli({"homology", fixture("ses_times6_bad.json"), "--degree", "1"});
        CHECK(one.code == 0);
        CHECK(one.out == "H1 = Z/2\n");

        RunResult outside =
            run_cli({"homology", fixture("ses_times6_bad.json"), "--degree", "9"});
        CHECK(outside.code == 2);
    }
    SECTION("homology --json re-parses") {
        RunResult r = run_cli({"homology", fixture("ses_times6_bad.json"), "--json"});
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        REQUIRE(j.is_array());
        REQUIRE(j.size() == 3);
        CHECK(j[1].at("degree").get<int>() == 1);
        CHECK(j[1].at("decomposition").at("pretty").get<std::string>() == "Z/2");
    }
    SECTION("modular coefficients on a facet file") {
        RunResult r =
            run_cli({"homology", "--simplicial", fixture("rp2_6.txt"), "--ring", "Z/2"});
        CHECK(r.code == 0);
        CHECK(r.out == "H0 = (Z/2), H1 = (Z/2), H2 = (Z/2)\n");
    }
    SECTION("ring flag must match a complex file's ring") {
        RunResult r = run_cli({"homology", fixture("ses_times2.json"), "--ring", "Z/5"});
        CHECK(r.code == 2);
        CHECK(r.err.find("does not match") != std::string::npos);
    }
    SECTION("identity contraction") {
        // Z --1--> Z is contractible; the shipped exact sequence with a
        // torsion quotient is exact but not split.
        std::string contractible = temp_file("contractible", R"({
            "ring": "Z", "degrees": [0, 1],
            "modules": {
              "0": {"ring":"Z","generators":1,"relations":{"ring":"Z","rows":1,"cols":0,"entries":[[]]}},
              "1": {"ring":"Z","generators":1,"relations":{"ring":"Z","rows":1,"cols":0,"entries":[[]]}}
            },
            "boundaries": {"1": {"ring":"Z","rows":1,"cols":1,"entries":[["1"]]}}
        })");
        RunResult yes = run_cli({"homotopy", contractible});
        CHECK(yes.code == 0);
        CHECK(yes.out == "identity null-homotopic: yes\nsplit exact: yes\n");

        RunResult no = run_cli({"homotopy", fixture("ses_times2.json")});
        CHECK(no.code == 0);
        CHECK(no.out == "identity null-homotopic: no\nsplit exact: no\n");

        RunResult j = run_cli({"homotopy", contractible, "--json"});
        REQUIRE(j.code == 0);
        json parsed = json::parse(j.out);
        CHECK(parsed.at("identity_null_homotopic").get<bool>());
        CHECK(parsed.contains("contraction"));
    }
}

TEST_CASE("tor verb variants", "[cli]") {
    SECTION("degree 0 is the plain tensor") {
        RunResult r = run_cli(
            {"tor", fixture("mod_z4.json"), fixture("mod_z6.json"), "--degree", "0"});
        CHECK(r.code == 0);
        CHECK(r.out == "Z/2\n");
    }
    SECTION("degree above the resolution vanishes over Z") {
        RunResult r = run_cli(
            {"tor", fixture("mod_z4.json"), fixture("mod_z6.json"), "--degree", "2"});
        CHECK(r.code == 0);
        CHECK(r.out == "0\n");
    }
    SECTION("resolving either side agrees") {
        for (const char* side : {"left", "right"}) {
            RunResult r = run_cli({"tor", fixture("mod_z4.json"), fixture("mod_z6.json"),
                                   "--side", side});
            CHECK(r.code == 0);
            CHECK(r.out == "Z/2\n");
        }
        CHECK(run_cli({"tor", fixture("mod_z4.json"), fixture("mod_z6.json"), "--side",
                       "sideways"})
                  .code == 2);
    }
    SECTION("self-checked gcd table") {
        RunResult r = run_cli({"tor", "--table", "4", "4"});
        CHECK(r.code == 0);
        CHECK(r.out.find("Tor_1(Z/2, Z/4) = Z/2\n") != std::string::npos);
        CHECK(r.out.find("Tor_1(Z/3, Z/3) = Z/3\n") != std::string::npos);
        CHECK(r.out.find("Tor_1(Z/3, Z/4) = 0\n") != std::string::npos);

        RunResult j = run_cli({"tor", "--table", "3", "3", "--json"});
        REQUIRE(j.code == 0);
        json parsed = json::parse(j.out);
        CHECK(parsed.size() == 4);
        CHECK(parsed[0].at("decomposition").at("pretty").get<std::string>() == "Z/2");
    }
    SECTION("table and files are mutually exclusive") {
        RunResult r = run_cli({"tor", fixture("mod_z4.json"), fixture("mod_z6.json"),
                               "--table", "3", "3"});
        CHECK(r.code == 2);
    }
}

TEST_CASE("exit-code contract", "[cli]") {
    SECTION("usage errors exit 2") {
        CHECK(run_cli({}).code == 2);
        CHECK(run_cli({"frobnicate"}).code == 2);
        CHECK(run_cli({"snf"}).code == 2);                       // missing argument
        CHECK(run_cli({"snf", "a.json", "b.json"}).code == 2);   // extra argument
        CHECK(run_cli({"homology", "/nonexistent-file.json"}).code == 2);
        CHECK(run_cli({"homology", fixture("tetra_hollow.txt")}).code == 2);  // not JSON
        CHECK(run_cli({"resolve", fixture("mod_z4.json"), "--depth", "-1"}).code == 2);
        CHECK(run_cli({"tor", fixture("mod_z4.json"), fixture("mod_z6.json"), "--degree",
                       "-1"})
                  .code == 2);
    }
    SECTION("domain errors exit 1") {
        CHECK(run_cli({"check-exact", fixture("ses_times6_bad.json")}).code == 1);

        // A boundary square that fails d.d = 0 is a domain error and the
        // message names the degree where it fails.
        std::string broken = temp_file("broken", R"({
            "ring": "Z", "degrees": [0, 1, 2],
            "modules": {
              "0": {"ring":"Z","generators":1,"relations":{"ring":"Z","rows":1,"cols":0,"entries":[[]]}},
              "1": {"ring":"Z","generators":1,"relations":{"ring":"Z","rows":1,"cols":0,"entries":[[]]}},
              "2": {"ring":"Z","generators":1,"relations":{"ring":"Z","rows":1,"cols":0,"entries":[[]]}}
            },
            "boundaries": {"1": {"ring":"Z","rows":1,"cols":1,"entries":[["1"]]},
                            "2": {"ring":"Z","rows":1,"cols":1,"entries":[["1"]]}}
        })");
        RunResult r = run_cli({"check-exact", broken});
        CHECK(r.code == 1);
        CHECK(r.err.find("degree 2") != std::string::npos);
    }
    SECTION("help exits 0") {
        RunResult r = run_cli({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("snf") != std::string::npos);
        CHECK(r.out.find("report") != std::string::npos);
    }
    SECTION("malformed-input fuzz corpus never succeeds and never crashes") {
        const std::vector<std::string> corpus{
            "",                                           // empty file
            "garbage {{{",                                // not JSON
            "[1, 2, 3]",                                  // wrong top-level type
            "{\"ring\": \"Q\"}",                          // unknown ring
            R"({"ring":"Z","rows":2,"cols":2,"entries":[["1"]]})",          // shape lies
            R"({"ring":"Z","rows":1,"cols":1,"entries":[["1.5"]]})",        // bad integer
            R"({"ring":"Z","generators":1})",                               // missing key
            R"({"ring":"Z","degrees":[0,2],"modules":{},"boundaries":{}})", // degree gap
            std::string("\x00\xff" "Binary", 8),                            // binary junk
            R"({"ring":{"Zmod":"0"},"generators":1,
                "relations":{"ring":{"Zmod":"0"},"rows":1,"cols":0,"entries":[[]]}})",
        };
        const std::vector<std::string> verbs{"snf",      "decompose", "homology",
                                             "check-exact", "les",    "homotopy",
                                             "resolve",  "tor"};
        for (size_t i = 0; i < corpus.size(); ++i) {
            std::string path = temp_file("fuzz" + std::to_string(i), corpus[i]);
            for (const std::string& verb : verbs) {
                std::vector<std::string> args{verb, path};
                if (verb == "tor") args.push_back(path);
                RunResult r = run_cli(args);
                INFO("verb " << verb << " on corpus item " << i << ": " << r.err);
                CHECK(r.code == 2);
                CHECK(r.err.find("error:") != std::string::npos);
            }
        }
    }
}

TEST_CASE("emitted JSON re-parses to equal values", "[cli]") {
    SECTION("les --json") {
        RunResult r = run_cli({"les", fixture("ses_doubling_complexes.json"), "--json"});
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j.at("exact").get<bool>());
        REQUIRE(j.at("labels").size() == 6);
        CHECK(j.at("labels")[0].get<std::string>() == "H_1(A)");
        CHECK(j.at("decompositions")[4].at("pretty").get<std::string>() == "Z/2");
    }
    SECTION("check-exact --json") {
        RunResult r = run_cli({"check-exact", fixture("ses_times6_bad.json"), "--json"});
        CHECK(r.code == 1);
        json j = json::parse(r.out);
        CHECK_FALSE(j.at("exact").get<bool>());
        CHECK(j.at("failures") == json::array({1}));
    }
    SECTION("shipped SES fixture round-trips through the library schema") {
        std::ifstream in(fixture("ses_doubling_complexes.json"));
        REQUIRE(in.good());
        json j = json::parse(in);
        ShortExactSeqComplexes ses = io::ses_complexes_from_json(j);
        CHECK(io::ses_complexes_to_json(ses) == j);
    }
}
