// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "semantics/script.hpp"

namespace solidbmc::sem {

using namespace ast;
using nlohmann::json;

namespace {

[[noreturn]] void script_error(const std::string& msg)
{
    throw FrontendError("ScriptError", {}, msg);
}

U256 get_u256(const json& j, const char* field, const U256& fallback, bool required = false)
{
    if (!j.contains(field)) {
        if (required)
            script_error(std::string("missing field '") + field + "'");
        return fallback;
    }
    const json& v = j.at(field);
    U256 out;
    if (v.is_number_unsigned()) {
        out = U256(v.get<uint64_t>());
        return out;
    }
    if (v.is_string() && parse_u256(v.get<std::string>(), out))
        return out;
    script_error(std::string("field '") + field + "' must be an unsigned number or decimal string");
}

Value coerce_arg(const json& v, const TypePtr& t, const ProgramIndex& idx)
{
    switch (t->kind) {
    case TypeKind::UInt:
    case TypeKind::Int:
    case TypeKind::Address:
    case TypeKind::Contract: {
        U256 bits;
        if (v.is_number_unsigned())
            bits = U256(v.get<uint64_t>());
        else if (v.is_number_integer()) {
            int64_t x = v.get<int64_t>();
            bits = x < 0 ? int_wrap(Wide(x)) : U256(x);
        } else if (v.is_string()) {
            std::string s = v.get<std::string>();
            bool neg = !s.empty() && s[0] == '-';
            if (neg) {
                U256 mag;
                if (!parse_u256(s.substr(1), mag))
                    script_error("bad integer literal " + s);
                bits = int_wrap(-Wide(mag));
            } else if (!parse_u256(s, bits)) {
                script_error("bad integer literal " + s);
            }
        } else {
            script_error("argument must be a number or string");
        }
        switch (t->kind) {
        case TypeKind::Int: return Value::intv(bits);
        case TypeKind::Address:
        case TypeKind::Contract: return Value::address(bits);
        default: return Value::uintv(bits);
        }
    }
    case TypeKind::Bool:
        if (!v.is_boolean())
            script_error("argument must be a bool");
        return Value::boolean(v.get<bool>());
    case TypeKind::Enum: {
        const EnumDecl* e = idx.enumDecl(t->name);
        if (!e)
            script_error("unknown enum " + t->name);
        if (v.is_number_unsigned()) {
            uint32_t i = v.get<uint32_t>();
            if (i >= e->values.size())
                script_error("enum index out of range");
            return Value::enumv(t->name, i);
        }
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            for (size_t i = 0; i < e->values.size(); ++i)
                if (e->values[i] == s)
                    return Value::enumv(t->name, (uint32_t)i);
            script_error("enum " + t->name + " has no value " + s);
        }
        script_error("enum argument must be an index or member name");
    }
    default:
        // reference-typed parameters get a fresh default tree
        if (v.is_null())
            return Value::reference(0);
        script_error("reference-typed arguments must be null (a fresh default value is passed)");
    }
}

std::vector<Value> coerce_args(const json& j, const std::vector<LocalVariableDeclaration>& params,
                               const ProgramIndex& idx)
{
    json args = j.value("args", json::array());
    if (!args.is_array())
        script_error("'args' must be an array");
    if (args.size() != params.size())
        script_error("argument count mismatch: expected " + std::to_string(params.size()));
    std::vector<Value> out;
    for (size_t i = 0; i < args.size(); ++i)
        out.push_back(coerce_arg(args[i], params[i].variable.type, idx));
    return out;
}

Choice parse_choice(const json& j)
{
    Choice c;
    std::string kind = j.value("kind", "");
    if (kind == "fresh-address") {
        c.kind = Choice::Kind::FreshAddress;
        c.value = Value::address(get_u256(j, "value", 0, true));
    } else if (kind == "transfer-outcome") {
        c.kind = Choice::Kind::TransferOutcome;
        c.value = Value::boolean(j.value("value", true));
    } else if (kind == "send-outcome") {
        c.kind = Choice::Kind::SendOutcome;
        c.value = Value::boolean(j.value("value", true));
    } else if (kind == "call-outcome") {
        c.kind = Choice::Kind::CallOutcome;
        c.value = Value::boolean(j.value("value", true));
    } else if (kind == "call-target") {
        c.kind = Choice::Kind::CallTarget;
        c.text = j.value("target", "");
        if (c.text.empty())
            script_error("call-target choice needs 'target'");
    } else if (kind == "havoc") {
        c.kind = Choice::Kind::HavocValue;
        const json& v = j.at("value");
        if (v.is_boolean())
            c.value = Value::boolean(v.get<bool>());
        else
            c.value = Value::uintv(get_u256(j, "value", 0, true));
    } else {
        script_error("unknown choice kind '" + kind + "'");
    }
    c.site = j.value("site", "");
    return c;
}

} // namespace

Script parse_script(const json& j, const ProgramIndex& idx)
{
    Script out;
    if (!j.contains("transactions") || !j.at("transactions").is_array())
        script_error("script needs a 'transactions' array");
    for (const json& tj : j.at("transactions")) {
        ScriptEntry e;
        std::string kind = tj.value("kind", "");
        if (kind == "create-address") {
            e.tx = Transaction::createAddress(get_u256(tj, "value", 0));
        } else if (kind == "currency-transfer") {
            e.tx = Transaction::currencyTransfer(get_u256(tj, "src", 0, true),
                                                 get_u256(tj, "dest", 0, true),
                                                 get_u256(tj, "value", 0));
        } else if (kind == "mint-block") {
            e.tx = Transaction::mintBlock(get_u256(tj, "time", 0, true));
        } else if (kind == "create-contract") {
            std::string type = tj.value("type", "");
            const FunctionDeclaration* ctor = idx.constructorOf(type);
            if (!ctor)
                script_error("unknown contract type '" + type + "'");
            e.tx = Transaction::createContract(get_u256(tj, "src", 0, true), type,
                                               get_u256(tj, "value", 0),
                                               coerce_args(tj, ctor->inParams, idx));
        } else if (kind == "execute-contract") {
            std::string type = tj.value("type", "");
            std::string func = tj.value("function", "");
            const FunctionDeclaration* f = idx.function(type, func);
            if (!f)
                script_error("unknown function " + type + "." + func);
            e.tx = Transaction::executeContract(get_u256(tj, "src", 0, true),
                                                get_u256(tj, "address", 0, true), type, func,
                                                get_u256(tj, "value", 0),
                                                coerce_args(tj, f->inParams, idx));
        } else {
            script_error("unknown transaction kind '" + kind + "'");
        }
        for (const json& cj : tj.value("choices", json::array()))
            e.choices.push_back(parse_choice(cj));
        out.entries.push_back(std::move(e));
    }
    return out;
}

ScriptRunResult run_script(const Program& solidProgram, const InterpreterConfig& cfg,
                           const Script& script)
{
    ScriptRunResult out;
    DefaultChoiceProvider defaults;
    Interpreter interp(solidProgram, cfg, defaults);
    ChainState chain;
    for (const ScriptEntry& e : script.entries) {
        ScriptedChoiceProvider scripted(e.choices);
        RecordingChoiceProvider rec(scripted);
        interp.setProvider(rec);
        TransactionResult r = interp.apply_transaction(chain, e.tx);
        ScriptRunResult::Step step;
        step.kind = r.kind;
        step.detail = r.kind == TransactionResult::Kind::Error ? r.errorSite : r.invalidReason;
        step.cexLog = r.cexLog;
        step.choices = rec.recorded();
        out.steps.push_back(std::move(step));
        if (r.kind == TransactionResult::Kind::Committed)
            chain = std::move(r.chain);
        if (r.kind == TransactionResult::Kind::Error)
            out.errored = true; // reported eagerly; the remaining script still runs
    }
    out.finalState = std::move(chain);
    return out;
}

nlohmann::json script_result_to_json(const ScriptRunResult& r, bool includeState)
{
    json out;
    out["schema"] = "solidbmc-run/1";
    json steps = json::array();
    for (size_t i = 0; i < r.steps.size(); ++i) {
        const auto& s = r.steps[i];
        json js;
        js["index"] = i;
        switch (s.kind) {
        case TransactionResult::Kind::Committed: js["status"] = "committed"; break;
        case TransactionResult::Kind::Invalid: js["status"] = "invalid"; break;
        case TransactionResult::Kind::Error: js["status"] = "error"; break;
        case TransactionResult::Kind::BudgetExhausted: js["status"] = "budget-exhausted"; break;
        }
        if (!s.detail.empty())
            js["detail"] = s.detail;
        if (!s.cexLog.empty()) {
            json cex = json::array();
            for (const auto& [site, v] : s.cexLog)
                cex.push_back(json{{"site", site}, {"value", value_to_json(v)}});
            js["cexprints"] = cex;
        }
        if (!s.choices.empty()) {
            json cs = json::array();
            for (const auto& c : s.choices)
                cs.push_back(choice_to_json(c));
            js["choices"] = cs;
        }
        steps.push_back(js);
    }
    out["results"] = steps;
    if (includeState)
        out["finalState"] = chain_to_json(r.finalState);
    out["errored"] = r.errored;
    return out;
}

} // namespace solidbmc::sem
