// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "support/diagnostics.hpp"
#include "support/numeric.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace solidbmc::ast {

// ---------------------------------------------------------------------------
// Types

enum class TypeKind {
    UInt,     // unsigned 256-bit
    Int,      // signed 256-bit
    Bool,
    Address,
    Contract, // address tagged with a contract name
    Array,    // dynamic unless fixedSize is set
    Mapping,
    Enum,
    Struct,
};

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
    TypeKind kind;
    std::string name;                  // Contract / Enum / Struct
    TypePtr elem;                      // Array element
    TypePtr domain, range;             // Mapping
    std::optional<U256> fixedSize;     // Array with a compile-time length

    bool isArray() const { return kind == TypeKind::Array; }
    bool isDynamicArray() const { return kind == TypeKind::Array && !fixedSize; }
    // Structs and arrays are reference types; mappings also live in cells
    // and are handled like reference members everywhere.
    bool isReference() const
    {
        return kind == TypeKind::Array || kind == TypeKind::Struct || kind == TypeKind::Mapping;
    }
    bool isValue() const { return !isReference(); }
    // Valid mapping-domain types.
    bool isElementary() const
    {
        switch (kind) {
        case TypeKind::UInt:
        case TypeKind::Int:
        case TypeKind::Bool:
        case TypeKind::Address:
        case TypeKind::Contract:
        case TypeKind::Enum:
            return true;
        default:
            return false;
        }
    }
    bool isNumeric() const { return kind == TypeKind::UInt || kind == TypeKind::Int; }
    bool isAddressLike() const { return kind == TypeKind::Address || kind == TypeKind::Contract; }
};

TypePtr type_uint();
TypePtr type_int();
TypePtr type_bool();
TypePtr type_address();
TypePtr type_contract(const std::string& name);
TypePtr type_array(TypePtr elem, std::optional<U256> fixedSize = std::nullopt);
TypePtr type_mapping(TypePtr domain, TypePtr range);
TypePtr type_enum(const std::string& name);
TypePtr type_struct(const std::string& name);

bool type_equal(const TypePtr& a, const TypePtr& b);
std::string type_to_string(const TypePtr& t);

// Where a reference-typed expression's value lives (Table 1 classification).
enum class LocationKind {
    StorageReference, // member variables and any element reached from storage
    StoragePointer,   // local declared `storage`
    MemoryPointer,    // local declared `memory` and elements reached from one
};

enum class CopyKind { DeepCopy, Alias };

const char* location_name(LocationKind k);

// ---------------------------------------------------------------------------
// Expressions

enum class IdKind {
    Unresolved,
    LocalVar,
    StateVar,
    EnumTypeName, // `Status` in `Status.Open`
    This,
    BuiltinMsg,
    BuiltinTx,
    BuiltinBlock,
};

enum class MemberKind {
    Unresolved,
    StructField,
    ArrayLength,
    Balance,
    MsgSender,
    MsgValue,
    TxOrigin,
    BlockTimestamp,
    EnumValue,
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
    enum class Kind {
        Identifier,
        Member,
        Index,
        NumberLit,
        BoolLit,
        Binary,
        Unary,
        CallSuffix, // parser-internal: base(args); rejected outside statements
        NewSuffix,  // parser-internal: new T(args)
    };

    Kind kind;
    SourceLoc loc;

    std::string name;   // Identifier name / Member field name / Binary/Unary op
    ExprPtr base;       // Member/Index/CallSuffix base; Unary operand
    ExprPtr index;      // Index
    ExprPtr lhs, rhs;   // Binary
    U256 number;        // NumberLit
    bool boolval = false;
    std::vector<ExprPtr> args; // CallSuffix / NewSuffix
    TypePtr newType;           // NewSuffix
    ExprPtr newLength;         // NewSuffix for `new T[](n)`

    // Annotations filled by the type checker.
    TypePtr type;
    std::optional<LocationKind> location;
    IdKind idKind = IdKind::Unresolved;
    MemberKind memberKind = MemberKind::Unresolved;
    int enumValueIndex = -1; // MemberKind::EnumValue

    static ExprPtr ident(std::string n, SourceLoc loc = {});
    static ExprPtr member(ExprPtr base, std::string field, SourceLoc loc = {});
    static ExprPtr indexOf(ExprPtr base, ExprPtr idx, SourceLoc loc = {});
    static ExprPtr num(U256 v, SourceLoc loc = {});
    static ExprPtr boolean(bool v, SourceLoc loc = {});
    static ExprPtr binary(std::string op, ExprPtr l, ExprPtr r, SourceLoc loc = {});
    static ExprPtr unary(std::string op, ExprPtr operand, SourceLoc loc = {});
};

// ---------------------------------------------------------------------------
// Declarations and statements

struct VariableDeclaration {
    std::string name;
    TypePtr type;
    SourceLoc loc;
};

enum class DataLocation { None, Memory, Storage };

struct LocalVariableDeclaration {
    bool isPointer = false;
    DataLocation dataLocation = DataLocation::None;
    VariableDeclaration variable;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using StmtList = std::vector<StmtPtr>;

struct Stmt {
    enum class Kind {
        WhileLoop,
        IfThenElse,
        VariableDeclarationStatement,
        Assignment,
        AllocMemory,
        Revert,
        Require,
        Return,
        ContractCall,
        CreateContract,
        Transfer,
        Send,
        Call,
        VAssume,
        VAssert,
        CexPrint, // Solidity-level probe; logged by the interpreter
        Push,     // Solidity-level sugar; removed by explication
    };

    Kind kind;
    SourceLoc loc;

    ExprPtr condition;          // While/If/Require/VAssume/VAssert
    StmtList body, elseBody;    // While/If

    LocalVariableDeclaration decl; // VariableDeclarationStatement

    ExprPtr lhs;                // Assignment/AllocMemory/Send/Call/CreateContract
    ExprPtr rhs;                // Assignment
    // A `.length` assignment written by the tool: plain length write with no
    // resizing semantics. Parsed user assignments always have this false.
    bool solidLength = false;

    TypePtr type;               // AllocMemory / ContractCall / CreateContract target type

    std::vector<ExprPtr> callLhs; // ContractCall
    std::string funcName;         // ContractCall / CexPrint label suffix
    std::vector<ExprPtr> args;    // ContractCall/CreateContract args; Return exprs
    ExprPtr target;               // ContractCall callee-address expression
    ExprPtr value;                // ContractCall/CreateContract/Transfer/Send/Call value

    ExprPtr source, dest;       // Transfer / Send
    ExprPtr address;            // Call
    ExprPtr arg;                // CexPrint argument / Push element
    ExprPtr array;              // Push target
};

StmtPtr make_stmt(Stmt s);

struct EnumDecl {
    std::string name;
    std::vector<std::string> values;
    SourceLoc loc;
};

struct StructDecl {
    std::string name;
    std::vector<VariableDeclaration> members;
    SourceLoc loc;
};

enum class Visibility { Public, Private };

struct FunctionDeclaration {
    Visibility visibility = Visibility::Public;
    bool isPayable = false;
    bool isConstructor = false;
    std::string name;
    std::vector<LocalVariableDeclaration> inParams;
    std::vector<LocalVariableDeclaration> outParams;
    StmtList body;
    SourceLoc loc;
};

struct Contract {
    std::string name;
    std::vector<EnumDecl> enums;
    std::vector<StructDecl> structs;
    std::vector<VariableDeclaration> variables;
    std::vector<FunctionDeclaration> functions;
    SourceLoc loc;
};

struct Program {
    std::vector<Contract> contracts;
};

// ---------------------------------------------------------------------------
// Symbol lookup over a (type-checked) program

class ProgramIndex {
public:
    explicit ProgramIndex(const Program& p);

    const Program& program() const { return *program_; }
    const Contract* contract(const std::string& name) const;
    const EnumDecl* enumDecl(const std::string& name) const;
    const StructDecl* structDecl(const std::string& name) const;
    // Enclosing contract of a user type, for scoping checks.
    const Contract* ownerOf(const std::string& typeName) const;
    const FunctionDeclaration* function(const std::string& contract, const std::string& name) const;
    const FunctionDeclaration* constructorOf(const std::string& contract) const;
    std::vector<const FunctionDeclaration*> interfaceFunctions(const std::string& contract) const;
    const VariableDeclaration* stateVar(const std::string& contract, const std::string& name) const;

private:
    const Program* program_;
    std::map<std::string, const Contract*> contracts_;
    std::map<std::string, const EnumDecl*> enums_;
    std::map<std::string, const StructDecl*> structs_;
    std::map<std::string, const Contract*> owners_;
    std::map<std::pair<std::string, std::string>, const FunctionDeclaration*> functions_;
    std::map<std::pair<std::string, std::string>, const VariableDeclaration*> stateVars_;
};

// Deep structural equality, ignoring source locations and annotations.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool stmt_equal(const StmtPtr& a, const StmtPtr& b);
bool program_equal(const Program& a, const Program& b);

} // namespace solidbmc::ast
