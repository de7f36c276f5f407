#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ELLSIEVE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("twist-scan --help").exit_code == 0);
    CHECK(run("").exit_code == 2);  // a subcommand is required
    CHECK(run("bound --n 5 --q 13").exit_code == 0);
    // bad config: p = 3 is outside the supported characteristics
    CHECK(run("lfun --p 3 --d 3 --c 4").exit_code == 2);
    CHECK(run("lfun --q 9 --d 3 --c 4").exit_code == 2);
    CHECK(run("bound --n 4 --q 13").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    // resource refusal: tiny budget
    CHECK(run("lfun --q 5 --d 3 --c 4 --budget 10").exit_code == 3);
    // budget override lets it through
    CHECK(run("lfun --q 5 --d 3 --c 4 --budget 10 --budget-override").exit_code == 0);
}

TEST_CASE("cli determinism") {
    std::string args = "twist-scan --q 13 --d 3 --ell-min 7 --ell-max 19 --format json --seed 42";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    // montecarlo with a fixed seed is reproducible too
    std::string mc = "theta-density --n 3 --l 7 --method montecarlo --samples 2000 --seed 7";
    RunResult c = run(mc);
    RunResult d = run(mc);
    CHECK(c.exit_code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("cli config file with flag override") {
    std::string path = "/tmp/ellsieve_test_config.ini";
    {
        std::ofstream cfg(path);
        cfg << "[twist-scan]\nq=13\nd=3\nell-min=7\nell-max=19\n";
    }
    RunResult from_cfg = run("--config " + path + " twist-scan");
    RunResult direct = run("twist-scan --q 13 --d 3 --ell-min 7 --ell-max 19");
    CHECK(from_cfg.exit_code == 0);
    CHECK(from_cfg.out == direct.out);
    // flags win over the file
    RunResult overridden = run("--config " + path + " twist-scan --ell-max 13");
    RunResult direct2 = run("twist-scan --q 13 --d 3 --ell-min 7 --ell-max 13");
    CHECK(overridden.out == direct2.out);
    std::remove(path.c_str());
}

TEST_CASE("cli lfun output shape") {
    RunResult r = run("lfun --q 5 --d 3 --c 4 --verify --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"N\":5") != std::string::npos);
    CHECK(r.out.find("\"N_red\":4") != std::string::npos);
    CHECK(r.out.find("\"euler_verified\":true") != std::string::npos);

    // d = 4 reports N = 8
    RunResult r4 = run("lfun --q 5 --d 4 --c 2 --format json");
    CHECK(r4.exit_code == 0);
    CHECK(r4.out.find("\"N\":8") != std::string::npos);
}

TEST_CASE("cli group audit exits nonzero only on violations") {
    RunResult r = run("group-audit --l 5 --n 4 --type both");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("baeza,pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    // even characteristic rejected
    CHECK(run("group-audit --l 2 --n 4").exit_code == 2);
}

TEST_CASE("cli scan aggregate carries the exponent data") {
    RunResult r = run("twist-scan --q 5 --d 3 --ell-min 7 --ell-max 13 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"gamma\":\"1/72\"") != std::string::npos);
    CHECK(r.out.find("\"two_over_gamma\":\"144\"") != std::string::npos);
    CHECK(r.out.find("\"trivial_regime\":true") != std::string::npos);
}

TEST_CASE("cli config round trip") {
    // a run's resolved configuration, written in file form, reproduces the
    // identical run when fed back
    std::string args = "twist-scan --q 13 --d 3 --ell-min 7 --ell-max 19 --format json";
    RunResult dumped = run("--dump-config " + args);
    CHECK(dumped.exit_code == 0);
    std::string path = "/tmp/ellsieve_roundtrip.ini";
    {
        std::ofstream cfg(path);
        cfg << dumped.out;
    }
    RunResult direct = run(args);
    RunResult from_file = run("--config " + path + " twist-scan");
    CHECK(from_file.exit_code == 0);
    CHECK(from_file.out == direct.out);
    std::remove(path.c_str());
}
