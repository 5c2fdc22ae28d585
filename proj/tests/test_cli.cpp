#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "obt/fixtures.hpp"

#ifndef OBT_CLI_PATH
#define OBT_CLI_PATH "obt"
#endif

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    CmdResult r;
    std::string full = std::string(OBT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(full.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
    int rc = pclose(p);
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

const std::string& fs4_path() {
    static std::string path = [] {
        std::string p = std::string(OBT_BUILD_DIR) + "/cli_test_fs4.json";
        CmdResult r = run_cmd("genfixture fs4 -o " + p);
        REQUIRE(r.exit_code == 0);
        return p;
    }();
    return path;
}

std::string diamond_path() { return std::string(OBT_FIXTURES_DIR) + "/diamond.json"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

}  // namespace

TEST_CASE("genfixture output matches the committed diamond document") {
    std::string tmp = std::string(OBT_BUILD_DIR) + "/cli_test_diamond.json";
    CmdResult r = run_cmd("genfixture diamond -o " + tmp);
    REQUIRE(r.exit_code == 0);
    CHECK(read_file(tmp) == read_file(diamond_path()));
}

TEST_CASE("validate: exit 0 on a clean document, 1 on a broken one") {
    CHECK(run_cmd("validate --category " + diamond_path()).exit_code == 0);

    nlohmann::json doc = obt::fixtures::make_diamond_document();
    doc["specialized"] = nlohmann::json::array({"id_bot", "id_x", "id_y"});
    std::string broken = std::string(OBT_BUILD_DIR) + "/cli_test_broken.json";
    std::ofstream(broken) << doc.dump();
    CmdResult r = run_cmd("validate --category " + broken);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("specialized") != std::string::npos);
}

TEST_CASE("schema errors exit with code 2") {
    nlohmann::json doc = obt::fixtures::make_diamond_document();
    doc["compose"].push_back({{"first", "bot_x"}, {"then", "x_top"}, {"equals", "nope"}});
    std::string bad = std::string(OBT_BUILD_DIR) + "/cli_test_schema.json";
    std::ofstream(bad) << doc.dump();
    CHECK(run_cmd("validate --category " + bad).exit_code == 2);
}

TEST_CASE("eval exit codes: success, parse error, evaluation error") {
    std::string base = "eval --category " + fs4_path() + " --target fiberwise ";
    CmdResult ok = run_cmd(base + "--expr \"gamma(cyc(f22_aa;))\"");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("(a↦2, b↦0)") != std::string::npos);

    CHECK(run_cmd(base + "--expr \"prod(cyc(f12_a;)\"").exit_code == 2);       // parse error
    CHECK(run_cmd(base + "--expr \"cyc(missing;)\"").exit_code == 2);          // unknown id
    // the 4x4 product over the point exceeds the declared pullback table
    CHECK(run_cmd(base +
                  "--expr \"ext(gamma(cyc(f44_abcd;)), gamma(cyc(f44_abcd;)))\"").exit_code ==
          3);
}

TEST_CASE("generators subcommand lists canonical classes") {
    CmdResult r = run_cmd("generators --category " + fs4_path() +
                          " --context f21_aa --max-source 2 --max-bundles 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("total: 6") != std::string::npos);
    CHECK(r.out.find("[f22_ab ; ]") != std::string::npos);
}

TEST_CASE("gamma subcommand wraps the expression") {
    CmdResult r = run_cmd("gamma --category " + fs4_path() +
                          " --target fiberwise --expr \"cyc(f22_aa;)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("(a↦2, b↦0)") != std::string::npos);
}

TEST_CASE("check exits 0 on the diamond with tight bounds") {
    CmdResult r = run_cmd("check --category " + diamond_path() +
                          " --max-bundles 1 --instance-cap 500");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("overall: pass") != std::string::npos);
}

TEST_CASE("check --target fiberwise passes on fs4") {
    CmdResult r = run_cmd("check --category " + fs4_path() +
                          " --target fiberwise --max-source 2 --max-bundles 1 "
                          "--instance-cap 2000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("overall: pass") != std::string::npos);
    CHECK(r.out.find("gamma-normalization") != std::string::npos);
}

TEST_CASE("--fibered requires the document to carry a fibered section") {
    nlohmann::json doc = obt::fixtures::make_diamond_document();
    doc.erase("fibered");
    std::string plain = std::string(OBT_BUILD_DIR) + "/cli_test_plain.json";
    std::ofstream(plain) << doc.dump();
    CHECK(run_cmd("validate --category " + plain).exit_code == 0);
    CHECK(run_cmd("validate --fibered --category " + plain).exit_code == 2);
}
