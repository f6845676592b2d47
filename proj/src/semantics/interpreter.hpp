// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "semantics/value.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace solidbmc::sem {

// ---------------------------------------------------------------------------
// Transactions (the blockchain's external interface)

struct Transaction {
    enum class Kind { CreateAddress, CurrencyTransfer, CreateContract, ExecuteContract, MintBlock };
    Kind kind;
    U256 value;
    Address src, dest;
    std::string contractType;
    std::string func;
    std::vector<Value> args;
    U256 newTime;

    static Transaction createAddress(const U256& value);
    static Transaction currencyTransfer(const Address& src, const Address& dest, const U256& value);
    static Transaction createContract(const Address& src, std::string type, const U256& value,
                                      std::vector<Value> args);
    static Transaction executeContract(const Address& src, const Address& addr, std::string type,
                                       std::string func, const U256& value, std::vector<Value> args);
    static Transaction mintBlock(const U256& newTime);
};

nlohmann::json transaction_to_json(const Transaction& t);

// ---------------------------------------------------------------------------
// Choices: every nondeterministic branch surfaces as one of these.

struct Choice {
    enum class Kind {
        FreshAddress,    // created address
        TransferOutcome, // transfer to a contract: succeed or fail
        SendOutcome,     // send to a contract: true (moved) or false
        CallTarget,      // which interface function a raw Call runs
        CallOutcome,     // low-level call succeeded / failed
        HavocValue,      // nondeterministically initialised value
    };
    Kind kind;
    std::string site;
    Value value;      // FreshAddress/HavocValue payloads; outcomes as Bool
    std::string text; // CallTarget function name

    bool sameAs(const Choice& o) const;
};

const char* choice_kind_name(Choice::Kind k);
nlohmann::json choice_to_json(const Choice& c);

// Decides each choice point. The interpreter always reports the full option
// list (ordered success-first / true-first / lowest-first); the provider
// returns the index to take.
class ChoiceProvider {
public:
    virtual ~ChoiceProvider() = default;
    virtual size_t choose(const std::string& site, const std::vector<Choice>& options) = 0;
    // open-domain havoc (uninitialised scalar parameters of raw Call targets)
    virtual Value havocScalar(const std::string& site, const TypePtr& type);
};

// Takes the first option everywhere; havocs evaluate to defaults.
class DefaultChoiceProvider : public ChoiceProvider {
public:
    size_t choose(const std::string&, const std::vector<Choice>&) override { return 0; }
};

// Replays a pinned choice list; throws ReplayDivergence when the recorded
// choice does not appear among the options.
class ScriptedChoiceProvider : public ChoiceProvider {
public:
    explicit ScriptedChoiceProvider(std::vector<Choice> pinned)
        : pinned_(std::move(pinned))
    {
    }
    size_t choose(const std::string& site, const std::vector<Choice>& options) override;
    Value havocScalar(const std::string& site, const TypePtr& type) override;
    bool exhausted() const { return next_ >= pinned_.size(); }

private:
    std::vector<Choice> pinned_;
    size_t next_ = 0;
};

// Records every decision another provider makes.
class RecordingChoiceProvider : public ChoiceProvider {
public:
    explicit RecordingChoiceProvider(ChoiceProvider& inner)
        : inner_(inner)
    {
    }
    size_t choose(const std::string& site, const std::vector<Choice>& options) override;
    Value havocScalar(const std::string& site, const TypePtr& type) override;
    const std::vector<Choice>& recorded() const { return recorded_; }
    void clear() { recorded_.clear(); }

private:
    ChoiceProvider& inner_;
    std::vector<Choice> recorded_;
};

class ReplayDivergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Execution states

using LocalContext = std::map<std::string, Value>;

struct Frame {
    const ast::FunctionDeclaration* func = nullptr; // null for harness stub frames
    Address self;
    LocalContext locals;
    // remaining statements, reversed: back() executes next
    std::vector<ast::StmtPtr> code;

    enum class Link {
        Top,          // outermost frame of a transaction
        ContractCall, // Table 4 contract call: fail/error propagate
        Create,       // constructor run of CreateContract
        LowLevelCall, // raw Call: fail restores the snapshot, lhs gets false
        CallStub,     // harness re-entry sequence; fail handled like LowLevelCall
    };
    Link link = Link::Top;
    std::vector<ast::ExprPtr> linkLhs;
    Address createdAddr;
    // pre-call snapshot for LowLevelCall / CallStub
    std::shared_ptr<const ChainState> preChain;
    std::shared_ptr<const RefMap> preMemory;
    std::shared_ptr<const LocalContext> preLocals;
};

struct ExecState {
    enum class Status { Running, Complete, Fail, Error };

    ChainState chain;
    Address txOrigin;
    RefMap memory; // zeroed per transaction, shared across nested calls
    std::vector<Frame> stack;
    Status status = Status::Running;
    std::string errorSite;
    std::vector<std::pair<std::string, Value>> cexLog;
    int steps = 0;

    Frame& top() { return stack.back(); }
    bool running() const { return status == Status::Running; }
};

// How a Call statement executes. The verification harnesses replace the
// formal rule with their stub.
class CallHandler;

struct InterpreterConfig {
    std::vector<Address> addressUniverse; // ordered; fresh picks the lowest unused
    int stepBudget = 10000;
};

struct TransactionResult {
    enum class Kind { Committed, Invalid, Error, BudgetExhausted };
    Kind kind = Kind::Invalid;
    ChainState chain; // committed state (Committed) or untouched pre-state
    std::string errorSite;
    std::string invalidReason;
    std::vector<std::pair<std::string, Value>> cexLog;
};

class BudgetExhaustedError : public std::runtime_error {
public:
    BudgetExhaustedError()
        : std::runtime_error("statement budget exhausted")
    {
    }
};

class Interpreter {
public:
    Interpreter(const ast::Program& program, const InterpreterConfig& config,
                ChoiceProvider& provider);

    const ast::ProgramIndex& index() const { return index_; }
    const InterpreterConfig& config() const { return config_; }
    ChoiceProvider& provider() { return *provider_; }
    void setProvider(ChoiceProvider& p) { provider_ = &p; }
    void setCallHandler(CallHandler* h) { callHandler_ = h; }

    // One small step. Precondition: st.running().
    void step(ExecState& st);

    // Runs until Complete/Fail/Error; throws BudgetExhaustedError past the
    // statement budget.
    void run(ExecState& st);

    // Table 2. Never mutates `chain`; the result carries the post-state.
    TransactionResult apply_transaction(const ChainState& chain, const Transaction& tx);

    // -- building blocks (shared with the explorer and tests) ----------------

    Value eval(ExecState& st, const ast::ExprPtr& e);
    void update(ExecState& st, const std::vector<ast::ExprPtr>& lhss,
                const std::vector<Value>& values);
    LocalContext init_locals(const ast::FunctionDeclaration& f, const Address& self,
                             const Address& sender, const U256& value,
                             const std::vector<Value>& args);
    // Evaluated out-parameter values of a completed frame.
    std::vector<Value> outs_of(ExecState& st, const Frame& frame);

    ExecState make_exec_state(ChainState chain, const Address& origin, const Address& self,
                              const ast::FunctionDeclaration& f, const Address& sender,
                              const U256& value, const std::vector<Value>& args);

    std::optional<Address> lowest_unused(const ChainState& chain) const;

    // Pushes a callee frame for a contract call (shared by step and stubs).
    void push_contract_call(ExecState& st, const Address& callee,
                            const ast::FunctionDeclaration& f, const U256& value,
                            const std::vector<Value>& args, Frame::Link link,
                            std::vector<ast::ExprPtr> linkLhs);

    // Statement-level failure: unwinds frames per their link kinds.
    void fail(ExecState& st);
    void error(ExecState& st, const std::string& site);

private:
    friend class CallHandler;

    void execStatement(ExecState& st, const ast::StmtPtr& sp);
    void completeFrame(ExecState& st);
    void execCallStatement(ExecState& st, const ast::Stmt& s);
    void rawCall(ExecState& st, const ast::Stmt& s);
    TransactionResult finishRun(ExecState& st, TransactionResult& res);

    Value evalRValue(ExecState& st, const ast::ExprPtr& e);

    const ast::Program* program_;
    ast::ProgramIndex index_;
    InterpreterConfig config_;
    ChoiceProvider* provider_;
    CallHandler* callHandler_ = nullptr;
};

class CallHandler {
public:
    virtual ~CallHandler() = default;
    // Executes a Call statement (already popped from the caller's code).
    virtual void onCall(Interpreter& interp, ExecState& st, const ast::Stmt& s) = 0;
};

// Test helper implementing the one-step successor relation: every
// (choice?, post-state) pair the next statement admits.
std::vector<std::pair<std::optional<Choice>, ExecState>>
step_successors(const ast::Program& program, const InterpreterConfig& config, const ExecState& st);

} // namespace solidbmc::sem
