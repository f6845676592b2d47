// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Single driver binary: check (bounded exploration), run (transaction
// scripts), emit (verification-language output), dump (AST / desugared
// program).

#include "explicator/explicate.hpp"
#include "explorer/explorer.hpp"
#include "frontend/ast_json.hpp"
#include "frontend/printer.hpp"
#include "frontend/typecheck.hpp"
#include "ivl/checker.hpp"
#include "ivl/emitter.hpp"
#include "semantics/script.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace solidbmc;

constexpr int kUsageExit = 3;

// stable 64-bit content digest for report provenance
std::string digest_of(const std::string& text)
{
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string g_commandEcho;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ast::Program load(const std::string& path)
{
    return frontend::load_program(read_file(path));
}

std::vector<U256> parse_domain(const std::string& csv)
{
    std::vector<U256> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        U256 v;
        if (!parse_u256(item, v))
            throw std::runtime_error("bad domain value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw std::runtime_error("empty value domain");
    return out;
}

// flags > config file (SOLIDBMC_CONFIG) > built-in defaults
void apply_config_file(const CLI::App& cmd, int& bound, std::string& domain,
                       std::string& timeDomain, int& addresses, int& stepBudget, int& callDepth)
{
    const char* path = std::getenv("SOLIDBMC_CONFIG");
    if (!path || !*path)
        return;
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    auto useFile = [&](const char* flag) { return j.contains(flag) && cmd.count(flag) == 0; };
    if (useFile("--bound"))
        bound = j.at("--bound").get<int>();
    if (useFile("--domain"))
        domain = j.at("--domain").get<std::string>();
    if (useFile("--time-domain"))
        timeDomain = j.at("--time-domain").get<std::string>();
    if (useFile("--addresses"))
        addresses = j.at("--addresses").get<int>();
    if (useFile("--step-budget"))
        stepBudget = j.at("--step-budget").get<int>();
    if (useFile("--call-depth"))
        callDepth = j.at("--call-depth").get<int>();
}

int cmd_check(const CLI::App& cmd, const std::string& file, const std::string& harness,
              const std::string& function, int bound, const std::string& domainFlag,
              const std::string& timeDomainFlag, int addresses, int stepBudget, int callDepth,
              bool json)
{
    std::string domain = domainFlag;
    std::string timeDomain = timeDomainFlag;
    apply_config_file(cmd, bound, domain, timeDomain, addresses, stepBudget, callDepth);
    ast::Program solid = explicator::explicate(load(file));
    explorer::HarnessConfig cfg;
    if (harness == "contract") {
        cfg.kind = explorer::HarnessConfig::Kind::Contract;
    } else if (harness == "function") {
        cfg.kind = explorer::HarnessConfig::Kind::Function;
        if (function.empty()) {
            std::cerr << "error: --harness function requires --function NAME\n";
            return kUsageExit;
        }
        cfg.function = function;
    } else {
        std::cerr << "error: --harness must be 'contract' or 'function'\n";
        return kUsageExit;
    }
    if (solid.contracts.empty()) {
        std::cerr << "error: no contract in input\n";
        return kUsageExit;
    }
    cfg.contract = solid.contracts.front().name;
    cfg.txBound = bound;
    if (!domain.empty())
        cfg.valueDomain = parse_domain(domain);
    if (!timeDomain.empty())
        cfg.timeDomain = parse_domain(timeDomain);
    cfg.addressCount = addresses;
    cfg.stepBudget = stepBudget;
    cfg.callDepth = callDepth;
    explorer::Trace trace = explorer::run_harness(solid, cfg);
    if (json) {
        nlohmann::json out = explorer::trace_to_json(trace);
        out["schema"] = "solidbmc-check/1";
        out["command"] = g_commandEcho;
        out["inputDigest"] = digest_of(read_file(file));
        out["note"] = "bounded search: absence of violations beyond the bound is not proved";
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << explorer::trace_to_text(trace);
        if (trace.verdict == explorer::Trace::Verdict::NoViolationWithinBound)
            std::cout << "note: bounded search; no proof beyond the bound\n";
    }
    return explorer::verdict_exit_code(trace.verdict);
}

int cmd_run(const std::string& file, const std::string& scriptPath, int addresses, int stepBudget,
            bool withState)
{
    ast::Program solid = explicator::explicate(load(file));
    ast::ProgramIndex idx(solid);
    nlohmann::json sj = nlohmann::json::parse(read_file(scriptPath));
    sem::Script script = sem::parse_script(sj, idx);
    sem::InterpreterConfig cfg;
    for (int i = 1; i <= addresses; ++i)
        cfg.addressUniverse.push_back(U256(i));
    cfg.stepBudget = stepBudget;
    sem::ScriptRunResult r = sem::run_script(solid, cfg, script);
    nlohmann::json out = sem::script_result_to_json(r, withState);
    out["command"] = g_commandEcho;
    out["inputDigest"] = digest_of(read_file(file));
    std::cout << out.dump(2) << "\n";
    return r.errored ? 1 : 0;
}

int cmd_emit(const std::string& file, const std::string& harness, const std::string& function,
             const std::string& outPath, bool desugar)
{
    ast::Program solid = explicator::explicate(load(file));
    if (solid.contracts.empty()) {
        std::cerr << "error: no contract in input\n";
        return kUsageExit;
    }
    explorer::HarnessConfig cfg;
    cfg.contract = solid.contracts.front().name;
    if (harness == "function") {
        cfg.kind = explorer::HarnessConfig::Kind::Function;
        if (function.empty()) {
            std::cerr << "error: --harness function requires --function NAME\n";
            return kUsageExit;
        }
        cfg.function = function;
    }
    ivl::EmitOptions eo;
    eo.desugar = desugar;
    std::string text = ivl::emit_program(solid, cfg, eo);
    ivl::CheckResult chk = ivl::check_ivl(text);
    if (!chk.ok) {
        std::cerr << "internal error: emitted text failed the structural check\n";
        for (const auto& e : chk.errors)
            std::cerr << "  " << e << "\n";
        return kUsageExit;
    }
    if (outPath.empty() || outPath == "-") {
        std::cout << text;
    } else {
        std::ofstream out(outPath);
        out << text;
    }
    return 0;
}

int cmd_dump(const std::string& file, const std::string& stage, bool json)
{
    if (stage == "ast") {
        ast::Program p = load(file);
        if (json)
            std::cout << frontend::ast_to_json(p).dump(2) << "\n";
        else
            std::cout << frontend::print_program(p);
        return 0;
    }
    if (stage == "solid") {
        ast::Program solid = explicator::explicate(load(file));
        if (json)
            std::cout << frontend::ast_to_json(solid).dump(2) << "\n";
        else
            std::cout << frontend::print_program(solid);
        return 0;
    }
    std::cerr << "error: --stage must be 'ast' or 'solid'\n";
    return kUsageExit;
}

} // namespace

int main(int argc, char** argv)
{
    for (int i = 0; i < argc; ++i) {
        if (i)
            g_commandEcho += " ";
        g_commandEcho += argv[i];
    }
    CLI::App app{"bounded model checking toolchain for a Solidity subset"};
    app.require_subcommand(1);

    std::string file, function, domain, timeDomain, scriptPath, outPath, stage = "solid";
    std::string harness = "contract";
    int bound = 4, addresses = 4, stepBudget = 10000, callDepth = 2;
    bool json = false, desugar = false, noState = false;

    CLI::App* check = app.add_subcommand("check", "explore the contract for assertion violations");
    check->add_option("file", file, "Solidity source file")->required();
    check->add_option("--harness", harness, "contract | function");
    check->add_option("--function", function, "function name (function harness)");
    check->add_option("--bound", bound, "max interface calls (contract harness)");
    check->add_option("--domain", domain, "comma-separated havoc values");
    check->add_option("--time-domain", timeDomain, "comma-separated block timestamps");
    check->add_option("--addresses", addresses, "size of the address universe");
    check->add_option("--step-budget", stepBudget, "statement budget per call");
    check->add_option("--call-depth", callDepth, "re-entry depth for unknown calls");
    check->add_flag("--json", json, "machine-readable report");

    CLI::App* run = app.add_subcommand("run", "execute a transaction script");
    run->add_option("file", file, "Solidity source file")->required();
    run->add_option("script", scriptPath, "JSON transaction script")->required();
    run->add_option("--addresses", addresses, "size of the address universe");
    run->add_option("--step-budget", stepBudget, "statement budget per transaction");
    run->add_flag("--no-state", noState, "omit the final chain state from the report");

    CLI::App* emit = app.add_subcommand("emit", "emit the verification-language encoding");
    emit->add_option("file", file, "Solidity source file")->required();
    emit->add_option("--harness", harness, "contract | function");
    emit->add_option("--function", function, "function name (function harness)");
    emit->add_option("-o,--output", outPath, "output path (default stdout)");
    emit->add_flag("--desugar-ivl", desugar, "lower records/enums for plain verifiers");

    CLI::App* dump = app.add_subcommand("dump", "print a pipeline stage");
    dump->add_option("file", file, "Solidity source file")->required();
    dump->add_option("--stage", stage, "ast | solid");
    dump->add_flag("--json", json, "JSON AST dump");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageExit;
    }

    try {
        if (check->parsed())
            return cmd_check(*check, file, harness, function, bound, domain, timeDomain,
                             addresses, stepBudget, callDepth, json);
        if (run->parsed())
            return cmd_run(file, scriptPath, addresses, stepBudget, !noState);
        if (emit->parsed())
            return cmd_emit(file, harness, function, outPath, desugar);
        if (dump->parsed())
            return cmd_dump(file, stage, json);
    } catch (const solidbmc::FrontendError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    }
    return kUsageExit;
}
