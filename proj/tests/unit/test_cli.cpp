#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "catch_amalgamated.hpp"
#include "cli.hpp"
#include "json.hpp"
#include "moorehom/abelian.hpp"

using Catch::Matchers::ContainsSubstring;
using moore::cli::run_cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("moorehom_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string gen(const TempDir& dir, const std::string& preset, const std::string& name) {
    std::string path = dir.file(name);
    auto r = run({"gen", preset, "-o", path});
    REQUIRE(r.code == 0);
    return path;
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    return json::parse(f);
}

std::vector<std::string> homology_lines(const std::string& out) {
    std::vector<std::string> lines;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);)
        if (line.rfind("H_", 0) == 0) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("gen writes presets") {
    TempDir dir;
    auto r = run({"gen", "units:1"});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["arrows"] == 1);
    CHECK(doc["units"] == json::array({0}));
    CHECK(json::parse(run({"gen", "cyclic:6"}).out)["arrows"] == 6);

    std::string a = gen(dir, "cyclic:2", "a.json"), b = gen(dir, "pair:2", "b.json");
    auto u = json::parse(run({"gen", "union:" + a + "," + b}).out);
    CHECK(u["arrows"] == 6);
    CHECK(u["units"] == json::array({0, 2, 5}));
}

TEST_CASE("homology subcommand") {
    TempDir dir;
    auto unit1 = gen(dir, "units:1", "unit1.json");
    auto r = run({"homology", "-i", unit1, "-N", "5"});
    CHECK(r.code == 0);
    CHECK(homology_lines(r.out) ==
          std::vector<std::string>{"H_0 = Z", "H_1 = 0", "H_2 = 0", "H_3 = 0", "H_4 = 0"});

    auto c2 = gen(dir, "cyclic:2", "cyclic2.json");
    r = run({"homology", "-i", c2, "--coeff", "z/2", "-N", "4"});
    CHECK(homology_lines(r.out) == std::vector<std::string>{"H_0 = Z/2", "H_1 = Z/2", "H_2 = Z/2", "H_3 = Z/2"});

    auto p3 = gen(dir, "pair:3", "pair3.json");
    r = run({"homology", "-i", p3, "-N", "4"});
    CHECK(homology_lines(r.out) == std::vector<std::string>{"H_0 = Z", "H_1 = 0", "H_2 = 0", "H_3 = 0"});

    auto c6 = gen(dir, "cyclic:6", "cyclic6.json");
    r = run({"homology", "-i", c6, "-N", "3", "--primary"});
    CHECK(homology_lines(r.out)[1] == "H_1 = Z/2 ⊕ Z/3");
}

TEST_CASE("text and structured output agree") {
    TempDir dir;
    auto G = gen(dir, "union:cyclic:4,pair:2", "g.json");
    auto report = dir.file("report.json");
    auto r = run({"homology", "-i", G, "-N", "4", "--coeff", "z+z/6", "--json", report});
    REQUIRE(r.code == 0);
    auto doc = read_json(report);
    auto lines = homology_lines(r.out);
    REQUIRE(doc["homology"].size() == lines.size());
    for (size_t n = 0; n < lines.size(); ++n) {
        const auto& g = doc["homology"][n]["group"];
        std::string text = lines[n].substr(lines[n].find("= ") + 2);
        CHECK(g["text"] == text);
        auto parsed = moore::FinAbGroup::parse(text);
        CHECK(parsed.rank() == g["rank"].get<size_t>());
        REQUIRE(parsed.torsion().size() == g["torsion"].size());
        for (size_t i = 0; i < parsed.torsion().size(); ++i)
            CHECK(parsed.torsion()[i].to_int64() == g["torsion"][i].get<int64_t>());
    }
}

TEST_CASE("complex dump") {
    TempDir dir;
    auto c2 = gen(dir, "cyclic:2", "c2.json");
    auto dump = dir.file("dump.json");
    REQUIRE(run({"homology", "-i", c2, "-N", "2", "--dump-complex", dump}).code == 0);
    auto doc = read_json(dump);
    CHECK(doc["dims"] == json::array({1, 2, 4}));
    CHECK(doc["boundaries"][0] == json::array({0, 0}));
    CHECK(doc["boundaries"][1].size() == 8);
}

TEST_CASE("output is deterministic") {
    TempDir dir;
    auto G = gen(dir, "union:cyclic:2,units:1,cyclic:3", "triple.json");
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"homology", "-i", G, "-N", "4"},
             {"uct", "-i", G, "--coeff", "z/6", "-N", "3"},
             {"mv", "-i", G, "--u1", "0,1", "--u2", "1,2", "-N", "3"},
             {"sft", "--family", "4", "6", "--qmax", "12"},
             {"classify", "--family", "3", "4"}}) {
        auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("uct, mv, sft and classify reports") {
    TempDir dir;
    auto c4 = gen(dir, "cyclic:4", "cyclic4.json");
    auto r = run({"uct", "-i", c4, "--coeff", "z/6", "-N", "3"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("all degrees match"));

    auto triple = gen(dir, "union:cyclic:2,units:1,cyclic:3", "triple.json");
    auto report = dir.file("mv.json");
    r = run({"mv", "-i", triple, "--u1", "0,1", "--u2", "1,2", "-N", "3", "--json", report});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("H_0(G|U12)"));
    CHECK_THAT(r.out, ContainsSubstring("delta_1"));
    auto doc = read_json(report);
    CHECK(doc["ok"] == true);

    r = run({"sft", "--family", "4", "6", "--q", "6"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("H_0 = Z/3 ⊕ Z/6"));
    CHECK_THAT(r.out, ContainsSubstring("H_1 = Z/3"));
    r = run({"sft", "--full-shift", "5"});
    CHECK_THAT(r.out, ContainsSubstring("H_0 = Z/4"));

    r = run({"classify", "--family", "3", "4"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("{2,7}"));
    CHECK_THAT(r.out, ContainsSubstring("{3,4}"));
    CHECK_THAT(r.out, ContainsSubstring("manual review"));
}

TEST_CASE("errors are structured and exit with code 2") {
    TempDir dir;
    auto p2 = gen(dir, "pair:2", "pair2.json");
    auto r = run({"mv", "-i", p2, "--u1", "0", "--u2", "1"});
    CHECK(r.code == moore::cli::kExitError);
    auto err = json::parse(r.err);
    CHECK_THAT(err["error"]["message"].get<std::string>(), ContainsSubstring("not saturated"));
    CHECK(err["error"].contains("kind"));

    r = run({"homology", "-i", dir.file("missing.json")});
    CHECK(r.code == moore::cli::kExitError);
    CHECK(json::parse(r.err)["error"].contains("message"));

    std::ofstream(dir.file("bad.json")) << "{\"arrows\": 1,\n \"units\": [0,]}";
    r = run({"homology", "-i", dir.file("bad.json")});
    CHECK(r.code == moore::cli::kExitError);
    CHECK_THAT(json::parse(r.err)["error"]["message"].get<std::string>(), ContainsSubstring("line 2"));

    CHECK(run({"homology", "-i", p2, "--coeff", "q"}).code == moore::cli::kExitError);
    CHECK(run({"frobnicate"}).code == moore::cli::kExitError);
    CHECK(run({"homology", "-i", p2, "-N", "0"}).code == moore::cli::kExitError);
}

TEST_CASE("nerve budget from flag and environment") {
    TempDir dir;
    auto c6 = gen(dir, "cyclic:6", "c6.json");
    auto r = run({"homology", "-i", c6, "-N", "4", "--budget", "100"});
    CHECK(r.code == moore::cli::kExitError);
    CHECK_THAT(r.err, ContainsSubstring("nerve budget exceeded"));

    ::setenv("GH_BUDGET", "100", 1);
    r = run({"homology", "-i", c6, "-N", "4"});
    CHECK(r.code == moore::cli::kExitError);
    CHECK_THAT(r.err, ContainsSubstring("nerve budget exceeded"));
    // An explicit flag wins over the environment.
    CHECK(run({"homology", "-i", c6, "-N", "4", "--budget", "100000"}).code == 0);
    ::setenv("GH_BUDGET", "lots", 1);
    CHECK(run({"homology", "-i", c6, "-N", "2"}).code == moore::cli::kExitError);
    ::unsetenv("GH_BUDGET");
    CHECK(run({"homology", "-i", c6, "-N", "4"}).code == 0);
}
