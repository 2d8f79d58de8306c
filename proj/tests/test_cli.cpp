#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ADFAM_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("family subcommand emits the documented schema") {
    const CliResult r = run_cli("family --t 1/2 --depth 4");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["t"] == "1/2");
    CHECK(j["e"] == json::array({2, 3, 7, 13}));  // primes as JSON numbers
    CHECK(j["f"] == json::array({"2", "6", "42", "546"}));  // products as strings
}

TEST_CASE("intersect subcommand") {
    const CliResult r = run_cli("intersect --t 2/5 --tp 1/2 --cap 64");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["v_star"] == 2);
    CHECK(j["common"] == json::array({"2"}));
}

TEST_CASE("exit code taxonomy") {
    CHECK(run_cli("family --t 3/2 --depth 1").exit_code == 1);   // t outside (0,1)
    CHECK(run_cli("intersect --t 1/2 --tp 1/2 --cap 8").exit_code == 1);
    CHECK(run_cli("family --t 1/2 --depth 100").exit_code == 2);  // depth cap
    CHECK(run_cli("intersect --t 127/128 --tp 255/256 --cap 4").exit_code == 2);
    CHECK(run_cli("nonsense --t 1/2").exit_code == 1);
    CHECK(run_cli("verify --suite nonsense").exit_code == 1);
}

TEST_CASE("inS subcommand") {
    json j = json::parse(run_cli("inS --t 1/3").out);
    CHECK(j["in_S"] == true);
    CHECK(j["p"] == "3");
    CHECK(j["i"] == 1);
    j = json::parse(run_cli("inS --t 2/5").out);
    CHECK(j["in_S"] == false);
}

TEST_CASE("embed subcommand, both constructions") {
    json j = json::parse(run_cli("embed --t 1/2 --depth 3").out);
    CHECK(j["entries"] == json::array({"2", "6", "42"}));
    CHECK(j["tail_bound_exp"] == "545");
    j = json::parse(run_cli("embed --t 3/4 --depth 8 --baseline").out);
    CHECK(j["entries"] == json::array({"1", "2"}));
    CHECK(j["baseline"] == true);
}

TEST_CASE("limits subcommand parses every kind") {
    json j = json::parse(run_cli("limits --kind one --depth 4").out);
    CHECK(j["entries"] == json::array({"2", "4", "8", "16"}));
    j = json::parse(run_cli("limits --kind zero --depth 4").out);
    CHECK(j["entries"] == json::array());
    CHECK(j["tail_bound_exp"].is_null());
    j = json::parse(run_cli("limits --kind left:1/3 --depth 3").out);
    CHECK(j["entries"] == json::array({"3", "21", "483"}));
    j = json::parse(run_cli("limits --kind right:3,1 --depth 3").out);
    CHECK(j["entries"] == json::array({"2", "14", "322"}));
    CHECK(run_cli("limits --kind sideways --depth 3").exit_code == 1);
}

TEST_CASE("witness subcommand and embed re-feeding") {
    const CliResult w = run_cli("witness --points 1/3,1/2 --cap 64");
    CHECK(w.exit_code == 0);
    const json jw = json::parse(w.out);
    CHECK(jw["witness_indices"] == json::array({"3", "2"}));
    CHECK(jw["depth_used"] == 1);

    // Feed embed outputs back in: one JSON line per point, same order.
    const std::string path = "/tmp/adfam_test_embeds.jsonl";
    {
        std::ofstream f(path);
        f << run_cli("embed --t 1/3 --depth 1").out;
        f << run_cli("embed --t 1/2 --depth 1").out;
    }
    const CliResult v = run_cli("witness --points 1/3,1/2 --cap 64 --embeds " + path);
    CHECK(v.exit_code == 0);
    CHECK(json::parse(v.out)["verified_against_embeds"] == true);
    std::remove(path.c_str());
}

TEST_CASE("gapstats subcommand") {
    const json j = json::parse(run_cli("gapstats --lo 100 --hi 200").out);
    CHECK(j["max_ratio_num"] == "14");
    CHECK(j["max_ratio_den"] == "113");
    CHECK(j["argmax_p"] == "113");
    CHECK(run_cli("gapstats --lo 24 --hi 28").exit_code == 1);
}

TEST_CASE("sample emits one embedding per line") {
    const CliResult r = run_cli("sample --bits 3 --seed 5 --n 4 --depth 2");
    CHECK(r.exit_code == 0);
    int lines = 0;
    std::size_t pos = 0;
    while (pos < r.out.size()) {
        const std::size_t nl = r.out.find('\n', pos);
        const std::string line = r.out.substr(pos, nl - pos);
        if (!line.empty()) {
            const json j = json::parse(line);
            CHECK(j.contains("t"));
            CHECK(j["index"] == lines);
            CHECK(j["entries"].is_array());
            ++lines;
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    CHECK(lines == 4);
}

TEST_CASE("verify subcommand exit codes and schema") {
    const CliResult r = run_cli("verify --suite gap --seed 1 --scale small");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["suite"] == "gap");
    CHECK(j["failures"] == json::array());
    CHECK(j["cases_run"].get<int>() > 0);
}

TEST_CASE("environment overrides for global caps") {
    const CliResult r = run_cli("family --t 1/2 --depth 4");  // fine at default cap
    CHECK(r.exit_code == 0);
    const std::string cmd = std::string("ADFAM_DEPTH_CAP=3 ") + ADFAM_CLI_PATH +
                            " family --t 1/2 --depth 4 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[256];
    while (fread(buf, 1, sizeof buf, p) > 0) {
    }
    const int status = pclose(p);
    CHECK(WEXITSTATUS(status) == 2);  // cap now too small -> resource error
}

TEST_CASE("experiment reports are byte-identical across thread counts") {
    const std::string args = "annihilate --basis 1/3,2/5 --bits 64 --seed 9 --n 60 --cap 64";
    const CliResult one = run_cli(args + " --threads 1");
    const CliResult four = run_cli(args + " --threads 4");
    CHECK(one.exit_code == 0);
    CHECK(one.out == four.out);

    const std::string atoms = "atoms --bits 64 --seed 9 --n 40 --cap 2048";
    const CliResult a1 = run_cli(atoms + " --threads 1");
    const CliResult a4 = run_cli(atoms + " --threads 4");
    CHECK(a1.exit_code == 0);
    CHECK(a1.out == a4.out);
}
