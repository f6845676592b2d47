// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

std::string g_binary;
std::string g_dataDir = SOLIDBMC_DATA_DIR;

struct CliResult {
    int exitCode;
    std::string out;
};

CliResult run_cli(const std::string& args)
{
    std::string cmd = g_binary + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string fixture(const std::string& name) { return g_dataDir + "/" + name; }

} // namespace

TEST_CASE("check finds the wallet overflow with exit code 1")
{
    auto r = run_cli("check " + fixture("wallet_overflow.sol")
                     + " --harness contract --bound 3 --domain "
                       "0,1,115792089237316195423570985008687907853269984665640564039457584007913"
                       "129639935");
    CHECK(r.exitCode == 1);
    CHECK(r.out.find("assertion violation at deposit:") != std::string::npos);
    CHECK(r.out.find("#3 call deposit") != std::string::npos);
}

TEST_CASE("check on a clean contract exits 0 with a bound note")
{
    auto r = run_cli("check " + fixture("wallet.sol") + " --harness contract --bound 1");
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("no violation within bound") != std::string::npos);
    CHECK(r.out.find("no proof beyond the bound") != std::string::npos);
}

TEST_CASE("function harness without --function is a usage error")
{
    auto r = run_cli("check " + fixture("wallet.sol") + " --harness function");
    CHECK(r.exitCode == 3);
    CHECK(r.out.find("--function") != std::string::npos);
}

TEST_CASE("json report is machine-readable and carries the verdict")
{
    auto r = run_cli("check " + fixture("jar_reentrant.sol")
                     + " --harness contract --bound 3 --domain 0,1 --addresses 3 "
                       "--time-domain 1 --json");
    CHECK(r.exitCode == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "solidbmc-check/1");
    CHECK(j["verdict"] == "error-found");
    CHECK(j["trace"].size() >= 2);
}

TEST_CASE("run executes a script and reports each transaction")
{
    std::string script = "/tmp/solidbmc_cli_script.json";
    {
        std::ofstream out(script);
        out << R"({"transactions": [
            {"kind": "create-address", "value": 100},
            {"kind": "create-contract", "src": 1, "type": "Wallet", "value": 0, "args": []},
            {"kind": "execute-contract", "src": 1, "address": 2, "type": "Wallet",
             "function": "open", "value": 0, "args": []},
            {"kind": "execute-contract", "src": 1, "address": 2, "type": "Wallet",
             "function": "deposit", "value": 5, "args": []},
            {"kind": "execute-contract", "src": 1, "address": 2, "type": "Wallet",
             "function": "withdraw", "value": 0, "args": [9]},
            {"kind": "mint-block", "time": 3}
        ]})";
    }
    auto r = run_cli("run " + fixture("wallet.sol") + " " + script);
    CHECK(r.exitCode == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() == 6);
    CHECK(j["results"][0]["status"] == "committed");
    CHECK(j["results"][3]["status"] == "committed");
    CHECK(j["results"][4]["status"] == "invalid"); // overdraft withdraw
    CHECK(j["results"][5]["status"] == "committed");
    CHECK(j["finalState"]["addresses"]["2"]["balance"] == "5");
}

TEST_CASE("dump shows the desugared program")
{
    auto r = run_cli("dump " + fixture("wallet.sol") + " --stage solid");
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("require(msg.value == 0);") != std::string::npos);
    CHECK(r.out.find("constructor() public") != std::string::npos);

    auto ast = run_cli("dump " + fixture("wallet.sol") + " --stage ast --json");
    CHECK(ast.exitCode == 0);
    auto j = nlohmann::json::parse(ast.out);
    CHECK(j["kind"] == "Program");
}

TEST_CASE("emit writes text that the run is byte-stable over")
{
    auto a = run_cli("emit " + fixture("wallet.sol"));
    auto b = run_cli("emit " + fixture("wallet.sol"));
    CHECK(a.exitCode == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("procedure Wallet_deposit(") != std::string::npos);
    auto d = run_cli("emit " + fixture("wallet.sol") + " --desugar-ivl");
    CHECK(d.exitCode == 0);
    CHECK(d.out.find("const unique Wallet : int;") != std::string::npos);
}

TEST_CASE("reports are deterministic across runs")
{
    std::string args = "check " + fixture("jar_reentrant.sol")
        + " --harness contract --bound 3 --domain 0,1 --addresses 3 --time-domain 1";
    auto a = run_cli(args);
    auto b = run_cli(args);
    // strip the elapsed-time line, everything else is byte-identical
    auto strip = [](std::string s) {
        size_t pos = s.find("elapsed:");
        return pos == std::string::npos ? s : s.substr(0, pos);
    };
    CHECK(strip(a.out) == strip(b.out));
    CHECK(a.exitCode == b.exitCode);
}

TEST_CASE("frontend errors exit with the tool-error code")
{
    std::string bad = "/tmp/solidbmc_cli_bad.sol";
    {
        std::ofstream out(bad);
        out << "contract C { function f() public { x +=; } }";
    }
    auto r = run_cli("check " + bad + " --harness contract");
    CHECK(r.exitCode == 3);
    CHECK(r.out.find("SyntaxError") != std::string::npos);
}

int run_all(int argc, char** argv)
{
    doctest::Context ctx;
    ctx.applyCommandLine(argc > 1 ? 1 : argc, argv);
    return ctx.run();
}


TEST_CASE("a config file supplies defaults that flags override")
{
    std::string cfg = "/tmp/solidbmc_cli_cfg.json";
    {
        std::ofstream out(cfg);
        out << R"({"--bound": 1, "--domain": "0,1", "--addresses": 3, "--time-domain": "1"})";
    }
    std::string env = "SOLIDBMC_CONFIG=" + cfg + " ";
    std::string saved = g_binary;
    g_binary = env + g_binary;
    auto low = run_cli("check " + fixture("jar_reentrant.sol") + " --harness contract");
    CHECK(low.exitCode == 0); // bound 1 from the config: no violation
    auto high = run_cli("check " + fixture("jar_reentrant.sol")
                        + " --harness contract --bound 3");
    CHECK(high.exitCode == 1); // the flag overrides the config
    g_binary = saved;
}

int main(int argc, char** argv)
{
    if (argc > 1)
        g_binary = argv[1];
    else
        g_binary = "./build/tools/solidbmc";
    return run_all(argc, argv);
}
