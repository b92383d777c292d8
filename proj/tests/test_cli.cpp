#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_tool(const std::string& args) {
    std::string cmd = std::string(GKTOOL_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    RunResult r;
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

}  // namespace

TEST_CASE("construct round-trips through analyze") {
    auto c = run_tool("construct metacyclic 7 3 2");
    REQUIRE(c.status == 0);
    write_file("cli_m21.json", c.out);

    auto a = run_tool("--json analyze cli_m21.json");
    REQUIRE(a.status == 0);
    json j = json::parse(a.out);
    CHECK(j["order"] == 21);
    CHECK(j["exponent"] == 21);
    CHECK(j["abelian"] == false);
    CHECK(j["solvable"] == true);

    // construction output is byte-stable
    auto c2 = run_tool("construct metacyclic 7 3 2");
    CHECK(c2.out == c.out);

    // the file itself parses as the documented schema
    json f = json::parse(c.out);
    CHECK(f["degree"].get<int>() == 10);
    CHECK(f["generators"].size() == 2);
    for (const auto& gen : f["generators"]) CHECK(gen.size() == f["degree"].get<std::size_t>());
}

TEST_CASE("certify traces are deterministic") {
    auto c = run_tool("construct metacyclic 17 8 2");
    REQUIRE(c.status == 0);
    write_file("cli_m136.json", c.out);

    auto v1 = run_tool("--json certify cli_m136.json --field Q");
    auto v2 = run_tool("--json certify cli_m136.json --field Q");
    REQUIRE(v1.status == 0);
    CHECK(v1.out == v2.out);

    json j = json::parse(v1.out);
    CHECK(j["outcome"] == "NotRetractRational");
    REQUIRE(j["trace"].size() == 2);
    CHECK(j["trace"][0]["rule"] == "N-AB");
    CHECK(j["trace"][1]["rule"] == "N-DESC");

    auto v3 = run_tool("--json certify cli_m136.json --field Qzeta:8");
    json j3 = json::parse(v3.out);
    CHECK(j3["outcome"] == "RetractRational");
    CHECK(j3["trace"][0]["rule"] == "R-ZK");
}

TEST_CASE("abelian criterion through the cli") {
    auto c = run_tool("construct cyclic 8");
    REQUIRE(c.status == 0);
    write_file("cli_c8.json", c.out);

    json over_q = json::parse(run_tool("--json certify cli_c8.json --field Q").out);
    CHECK(over_q["outcome"] == "NotRetractRational");
    json over_z8 = json::parse(run_tool("--json certify cli_c8.json --field Qzeta:8").out);
    CHECK(over_z8["outcome"] == "RetractRational");
    CHECK(over_z8["corollaries"].size() == 1);
}

TEST_CASE("schur and b0 json output is schema stable") {
    auto c = run_tool("construct quaternion 8");
    REQUIRE(c.status == 0);
    write_file("cli_q8.json", c.out);

    json s = json::parse(run_tool("--json schur cli_q8.json").out);
    CHECK(s["invariants"]["order"] == 1);
    CHECK(s["model"] == "H2_QZ_model");

    json b_auto = json::parse(run_tool("--json b0 cli_q8.json").out);
    CHECK(b_auto["invariants"]["order"] == 1);
    CHECK(b_auto["method"] == "criterion");
    json b_full = json::parse(run_tool("--json b0 cli_q8.json --method full").out);
    CHECK(b_full["invariants"]["order"] == 1);
    CHECK(b_full["method"] == "full_cocycle");

    json cl = json::parse(run_tool("--json classify cli_q8.json").out);
    CHECK(cl["gz_group"] == true);
    CHECK(cl["z_group"] == false);
}

TEST_CASE("frobenius subcommand") {
    auto c = run_tool("construct dihedral 5");
    REQUIRE(c.status == 0);
    write_file("cli_d5.json", c.out);
    json f = json::parse(run_tool("--json frobenius cli_d5.json").out);
    REQUIRE(f.size() == 1);
    CHECK(f[0]["kernel_order"] == 5);
    CHECK(f[0]["complement_order"] == 2);
    CHECK(f[0]["kernel_partition_agrees"] == true);
    for (auto& [name, pass] : f[0]["checks"].items()) CHECK(pass == true);

    write_file("cli_c8b.json", run_tool("construct cyclic 8").out);
    json none = json::parse(run_tool("--json frobenius cli_c8b.json").out);
    CHECK(none.empty());
}

TEST_CASE("exit codes: 1 for domain errors, 2 for usage errors") {
    CHECK(run_tool("analyze no_such_file.json").status == 1);
    CHECK(run_tool("construct no-such-family 3").status == 1);
    CHECK(run_tool("nonsense").status == 2);
    CHECK(run_tool("").status == 2);
    CHECK(run_tool("analyze").status == 2);

    write_file("cli_bad1.json", "{ not json");
    CHECK(run_tool("analyze cli_bad1.json").status == 1);
    write_file("cli_bad2.json", "{\"degree\": 3, \"generators\": [[0, 0, 1]]}");
    CHECK(run_tool("analyze cli_bad2.json").status == 1);
    write_file("cli_bad3.json", "{\"degree\": 6000, \"generators\": []}");
    CHECK(run_tool("analyze cli_bad3.json").status == 1);

    // --cap turns an oversized closure into a domain error
    CHECK(run_tool("--cap 10 analyze cli_m21.json").status == 1);
}

TEST_CASE("verify-paper suite passes") {
    auto r = run_tool("verify-paper");
    CHECK(r.status == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("all checks passed") != std::string::npos);

    auto j = json::parse(run_tool("--json verify-paper").out);
    CHECK(j.size() >= 30);
    for (const auto& line : j) CHECK(line["pass"] == true);
}
