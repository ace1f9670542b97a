#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "stablecat/cli.hpp"

using stablecat::ordered_json;

namespace {

struct CmdResult {
    int code;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    const char* bin = std::getenv("STABLECAT_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

ordered_json run_json(const std::string& args) {
    CmdResult r = run_cmd(args);
    REQUIRE(r.code == 0);
    return ordered_json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p);
    REQUIRE(out.good());
    out << content;
}

}  // namespace

TEST_CASE("version flag") {
    CmdResult r = run_cmd("--version");
    CHECK(r.code == 0);
    CHECK(r.out.find("stablecat 0.1.0") != std::string::npos);
}

TEST_CASE("resolve reports minimal resolutions") {
    ordered_json r = run_json("resolve 'local_sq_zero(2,2)' builtin:k --length 3");
    CHECK(r["command"] == "resolve");
    CHECK(r["ring"] == "local_sq_zero(2,2)");
    CHECK(r["results"]["dims"] == ordered_json::array({3, 6, 12, 24}));
    CHECK(r["results"]["generator_counts"] == ordered_json::array({1, 2, 4, 8}));
    CHECK(r["metadata"]["tool_version"] == "0.1.0");

    ordered_json periodic = run_json("resolve 'trunc_poly(2,2)' k --length 4");
    CHECK(periodic["results"]["dims"] == ordered_json::array({2, 2, 2, 2, 2}));

    ordered_json trivial = run_json("resolve 'local_sq_zero(2,2)' R --length 3");
    CHECK(trivial["results"]["length"] == 0);
    CHECK(trivial["results"]["dims"] == ordered_json::array({3}));

    ordered_json inj = run_json("resolve 'local_sq_zero(2,2)' k --length 2 --direction inj");
    CHECK(inj["results"]["dims"] == ordered_json::array({3, 6, 12}));
}

TEST_CASE("ext and tor degree tables") {
    ordered_json e = run_json("ext 'local_sq_zero(2,2)' k k --degrees 0..3");
    CHECK(e["results"]["dims"] == ordered_json::array({1, 2, 4, 8}));

    ordered_json t = run_json("tor 'trunc_poly(2,2)' k k --degrees 0..3");
    CHECK(t["results"]["dims"] == ordered_json::array({1, 1, 1, 1}));

    ordered_json vanish = run_json("ext 'local_sq_zero(2,2)' k J --degrees 1..3");
    CHECK(vanish["results"]["dims"] == ordered_json::array({0, 0, 0}));
}

TEST_CASE("tsv emits bare degree tables") {
    CmdResult r = run_cmd("ext 'local_sq_zero(2,2)' k k --degrees 0..3 --format tsv");
    CHECK(r.code == 0);
    CHECK(r.out == "0\t1\n1\t2\n2\t4\n3\t8\n");
}

TEST_CASE("stable-hom dimensions") {
    ordered_json inj = run_json("stable-hom 'local_sq_zero(2,2)' k k --variant inj");
    CHECK(inj["results"]["dim"] == 1);
    ordered_json proj = run_json("stable-hom 'cyclic_group(2,2)' R k --variant proj");
    CHECK(proj["results"]["dim"] == 0);
}

TEST_CASE("tate table and resolution window") {
    ordered_json t = run_json("tate 5 1 --range -4..4");
    CHECK(t["results"]["dims"] == ordered_json::array({1, 1, 1, 1, 1, 1, 1, 1, 1}));
    CHECK(t["metadata"]["window"] == ordered_json::array({-6, 6}));
    CHECK(t["ring"] == "cyclic_group(5,5)");
}

TEST_CASE("counterexample reports match the classification") {
    ordered_json r = run_json("counterexample inj-exact-not-total --p 2 --depth 4 --base 1");
    const ordered_json& v = r["results"]["classification"]["verdicts"];
    CHECK(v["exact_interior"] == true);
    CHECK(v["inj_acyclic"] == false);
    CHECK(v["ac_acyclic"] == false);
    CHECK(v["totally_acyclic"] == false);
    CHECK(r["results"]["ranks"] == ordered_json::array({16, 8, 4, 2, 1}));

    ordered_json y = run_json("counterexample inj-acyclic-not-exact --p 2 --depth 3");
    const ordered_json& vy = y["results"]["classification"]["verdicts"];
    CHECK(vy["exact_interior"] == false);
    CHECK(vy["inj_acyclic"] == true);
}

TEST_CASE("reports are byte-deterministic") {
    std::string args = "counterexample proj-exact-not-firm --p 3 --depth 3";
    CmdResult a = run_cmd(args);
    CmdResult b = run_cmd(args);
    CHECK(a.code == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
}

TEST_CASE("emitted complexes reload, verify, and classify identically") {
    ordered_json r = run_json("counterexample proj-firm-not-exact --p 2 --depth 3");
    const ordered_json& embedded = r["results"]["complex"];

    // In-process round trip through the public loader.
    stablecat::WindowedComplex x = stablecat::complex_from_json(embedded);
    x.verify();
    CHECK(x.lo == 0);
    CHECK(x.hi == 3);

    // File round trip through the classify subcommand.
    std::filesystem::path path = temp_file("stablecat_cli_roundtrip.json");
    write_file(path, embedded.dump());
    ordered_json c = run_json("classify " + path.string());
    CHECK(c["results"]["classification"]["case"] == "projective");
    const ordered_json& v = c["results"]["classification"]["verdicts"];
    CHECK(v["exact_interior"] == false);
    CHECK(v["ac_acyclic"] == true);
    CHECK(v["firmly_acyclic"] == true);
    CHECK(v == r["results"]["classification"]["verdicts"]);
    std::filesystem::remove(path);
}

TEST_CASE("duality-check agrees across the builtin catalog") {
    ordered_json r = run_json("duality-check proj-exact-not-firm --p 2 --depth 4");
    CHECK(r["results"]["all_agree"] == true);
    CHECK(r["results"]["rows"].size() == 4);
    for (const ordered_json& row : r["results"]["rows"]) CHECK(row["agree"] == true);
}

TEST_CASE("fp-probe growth table") {
    ordered_json r = run_json("fp-probe --p 2 --n-range 1..4");
    const ordered_json& rows = r["results"]["rows"];
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        long long n = static_cast<long long>(i) + 1;
        CHECK(rows[i]["n"] == n);
        CHECK(rows[i]["mu1"] == n);
        CHECK(rows[i]["mu2"] == n * n);
    }
}

TEST_CASE("filtration reports exact stages and layers") {
    ordered_json r = run_json("filtration proj-firm-not-exact --p 2 --depth 3 --base 2 --A J");
    CHECK(r["results"]["layers"].get<int>() >= 2);
    for (const ordered_json& stage : r["results"]["stages"]) {
        CHECK(stage["tensor_exact"] == true);
        CHECK(stage["layer_tensor_exact"] == true);
    }
}

TEST_CASE("exit codes follow the error contract") {
    CHECK(run_cmd("ext 'bogus(1,2)' k k").code == 2);
    CHECK(run_cmd("resolve 'local_sq_zero(2,2)' ./no_such_module_file.json").code == 2);
    CHECK(run_cmd("counterexample not-a-kind").code == 2);
    CHECK(run_cmd("counterexample inj-exact-not-total --depth 2").code == 3);
    CHECK(run_cmd("tate 2 0").code == 3);
    CHECK(run_cmd("frobnicate").code == 2);

    // A valid complex whose terms are neither all projective nor all
    // injective is a precondition failure for classify.
    std::filesystem::path path = temp_file("stablecat_cli_mixed.json");
    write_file(path,
               R"json({"ring":"local_sq_zero(2,2)","side":"left","lo":0,"terms":["k","k"],"diffs":[[[0]]]})json");
    CHECK(run_cmd("classify " + path.string()).code == 3);
    std::filesystem::remove(path);
}
