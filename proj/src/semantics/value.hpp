// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontend/ast.hpp"
#include "support/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace solidbmc::sem {

using ast::TypePtr;

using Address = U256;   // 160-bit
using RefId = uint64_t; // 0 is the never-allocated null reference

// Key of a mapping override / array data slot. Only elementary values can be
// keys; a tag plus the 256-bit pattern orders every case.
struct ScalarKey {
    uint8_t tag = 0; // 0 uint, 1 int, 2 bool, 3 address/contract, 4 enum
    U256 bits;

    bool operator==(const ScalarKey& o) const { return tag == o.tag && bits == o.bits; }
    bool operator<(const ScalarKey& o) const
    {
        if (tag != o.tag)
            return tag < o.tag;
        return bits < o.bits;
    }
};

// One runtime value. Composites embed their value-typed elements inline and
// hold references for reference-typed elements (which live in their own
// cells). Mappings are observationally total: absent keys read the default.
class Value {
public:
    enum class Kind {
        UInt,
        Int,
        Bool,
        Address,
        Ref,
        Enum,
        Record,
        Mapping,
        Array, // record of length + total data mapping
    };

    Kind kind = Kind::UInt;
    U256 bits;                  // UInt/Int/Address payload; Bool 0/1; Array length
    RefId ref = 0;              // Ref payload
    std::string typeName;       // Enum/Record type name
    uint32_t enumIndex = 0;     // Enum payload
    std::vector<std::pair<std::string, Value>> members;  // Record, declaration order
    std::vector<Value> mapDefault;                       // Mapping/Array: boxed default (size <= 1)
    std::vector<std::pair<ScalarKey, Value>> overrides;  // Mapping/Array data, sorted by key

    static Value uintv(const U256& v);
    static Value intv(const U256& bits);
    static Value boolean(bool b);
    static Value address(const U256& a);
    static Value reference(RefId r);
    static Value enumv(std::string name, uint32_t index);

    bool isTrue() const;
    const U256& asU256() const { return bits; }

    const Value* findOverride(const ScalarKey& k) const;
    Value& setOverride(const ScalarKey& k, Value v);
    const Value& defaultValue() const;

    bool operator==(const Value& o) const;
};

// Scalar keys from elementary values.
ScalarKey scalar_key(const Value& v);

// A reference cell: unallocated until `type` is set.
struct RefCell {
    TypePtr type;  // null = None = unallocated
    Value value;

    bool allocated() const { return type != nullptr; }
    bool operator==(const RefCell& o) const
    {
        if ((type == nullptr) != (o.type == nullptr))
            return false;
        if (type && !ast::type_equal(type, o.type))
            return false;
        return value == o.value;
    }
};

// One reference mapping (an address's storage, or a transaction's memory).
struct RefMap {
    std::map<RefId, RefCell> cells;
    RefId next = 1;

    RefId fresh() { return next++; }
    RefCell& at(RefId r);
    const RefCell& at(RefId r) const;
    bool has(RefId r) const { return cells.count(r) != 0; }
};

struct AddressKind {
    enum K { Unused, Simple, Contract } k = Unused;
    std::string contract;

    bool operator==(const AddressKind& o) const { return k == o.k && contract == o.contract; }
    static AddressKind unused() { return {}; }
    static AddressKind simple() { return {Simple, {}}; }
    static AddressKind ofContract(std::string name) { return {Contract, std::move(name)}; }
};

struct AddressCell {
    AddressKind type;
    U256 balance;
    std::map<std::string, RefId> members;
    RefMap storage;

    bool operator==(const AddressCell& o) const;
};

struct ChainState {
    std::map<Address, AddressCell> addresses; // absent = Unused with balance 0
    U256 time;                                // b.time

    AddressCell& at(const Address& a) { return addresses[a]; }
    const AddressCell* find(const Address& a) const;
    AddressKind kindOf(const Address& a) const;
    U256 balanceOf(const Address& a) const;
    U256 totalBalance() const;

    bool operator==(const ChainState& o) const;
};

// -- construction --------------------------------------------------------------

// Inline default for a value type (zero / false / first enum member).
Value default_scalar(const TypePtr& t);

// Allocates a fresh, default-initialised cell tree shaped like the reference
// representation of `t`; returns the root reference. Reference-typed elements
// get their own fresh cells; no two composite slots share a cell.
// Mapping entries and dynamic-array slots of reference type start out as
// null references and are materialised on first access.
RefId alloc_tree(RefMap& m, const TypePtr& t, const ast::ProgramIndex& idx);

// Deploys contract `name` at `addr`: sets the type, zeroes the balance, and
// allocates + default-initialises every member variable.
void init_contract(ChainState& s, const Address& addr, const std::string& name,
                   const ast::ProgramIndex& idx);

// Total-mapping/array slot access with lazy materialisation of
// reference-typed entries. `cellValue` must be a Mapping or Array value
// whose cell lives in `m`.
Value map_read(RefMap& m, Value& cellValue, const ScalarKey& key, const TypePtr& elemType,
               const ast::ProgramIndex& idx);

// Moves `value` from src to dest; returns false (leaving s unchanged) when
// src's balance is insufficient.
bool set_balance(ChainState& s, const Address& src, const Address& dest, const U256& value);

// -- inspection -----------------------------------------------------------------

nlohmann::json value_to_json(const Value& v);
nlohmann::json chain_to_json(const ChainState& s);

// Canonical serialisation with references renamed in traversal order, so
// states that differ only in reference-id allocation history hash alike.
std::string canonical_chain(const ChainState& s);
uint64_t chain_hash(const ChainState& s);

} // namespace solidbmc::sem
