// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "semantics/value.hpp"

#include <algorithm>
#include <sstream>

namespace solidbmc::sem {

using namespace ast;

Value Value::uintv(const U256& v)
{
    Value x;
    x.kind = Kind::UInt;
    x.bits = v;
    return x;
}
Value Value::intv(const U256& bits)
{
    Value x;
    x.kind = Kind::Int;
    x.bits = bits;
    return x;
}
Value Value::boolean(bool b)
{
    Value x;
    x.kind = Kind::Bool;
    x.bits = b ? 1 : 0;
    return x;
}
Value Value::address(const U256& a)
{
    Value x;
    x.kind = Kind::Address;
    x.bits = a;
    return x;
}
Value Value::reference(RefId r)
{
    Value x;
    x.kind = Kind::Ref;
    x.ref = r;
    return x;
}
Value Value::enumv(std::string name, uint32_t index)
{
    Value x;
    x.kind = Kind::Enum;
    x.typeName = std::move(name);
    x.enumIndex = index;
    return x;
}

bool Value::isTrue() const
{
    if (kind != Kind::Bool)
        throw InternalError("truth of a non-bool value");
    return bits != 0;
}

const Value* Value::findOverride(const ScalarKey& k) const
{
    auto it = std::lower_bound(overrides.begin(), overrides.end(), k,
                               [](const auto& p, const ScalarKey& key) { return p.first < key; });
    if (it != overrides.end() && it->first == k)
        return &it->second;
    return nullptr;
}

Value& Value::setOverride(const ScalarKey& k, Value v)
{
    auto it = std::lower_bound(overrides.begin(), overrides.end(), k,
                               [](const auto& p, const ScalarKey& key) { return p.first < key; });
    if (it != overrides.end() && it->first == k) {
        it->second = std::move(v);
        return it->second;
    }
    it = overrides.insert(it, {k, std::move(v)});
    return it->second;
}

const Value& Value::defaultValue() const
{
    if (mapDefault.empty())
        throw InternalError("mapping without a default");
    return mapDefault.front();
}

bool Value::operator==(const Value& o) const
{
    if (kind != o.kind)
        return false;
    switch (kind) {
    case Kind::UInt:
    case Kind::Int:
    case Kind::Address:
    case Kind::Bool:
        return bits == o.bits;
    case Kind::Ref:
        return ref == o.ref;
    case Kind::Enum:
        return typeName == o.typeName && enumIndex == o.enumIndex;
    case Kind::Record:
        return typeName == o.typeName && members == o.members;
    case Kind::Mapping:
        return mapDefault == o.mapDefault && overrides == o.overrides;
    case Kind::Array:
        return bits == o.bits && mapDefault == o.mapDefault && overrides == o.overrides;
    }
    return false;
}

ScalarKey scalar_key(const Value& v)
{
    switch (v.kind) {
    case Value::Kind::UInt: return {0, v.bits};
    case Value::Kind::Int: return {1, v.bits};
    case Value::Kind::Bool: return {2, v.bits};
    case Value::Kind::Address: return {3, v.bits};
    case Value::Kind::Enum: return {4, U256(v.enumIndex)};
    default:
        throw InternalError("non-elementary mapping key");
    }
}

RefCell& RefMap::at(RefId r)
{
    auto it = cells.find(r);
    if (it == cells.end())
        throw InternalError("UnallocatedRead: reference " + std::to_string(r));
    return it->second;
}
const RefCell& RefMap::at(RefId r) const
{
    auto it = cells.find(r);
    if (it == cells.end())
        throw InternalError("UnallocatedRead: reference " + std::to_string(r));
    return it->second;
}

bool AddressCell::operator==(const AddressCell& o) const
{
    return type == o.type && balance == o.balance && members == o.members
        && storage.cells == o.storage.cells && storage.next == o.storage.next;
}

const AddressCell* ChainState::find(const Address& a) const
{
    auto it = addresses.find(a);
    return it == addresses.end() ? nullptr : &it->second;
}
AddressKind ChainState::kindOf(const Address& a) const
{
    const AddressCell* c = find(a);
    return c ? c->type : AddressKind::unused();
}
U256 ChainState::balanceOf(const Address& a) const
{
    const AddressCell* c = find(a);
    return c ? c->balance : U256(0);
}
U256 ChainState::totalBalance() const
{
    U256 sum = 0;
    for (const auto& [a, cell] : addresses)
        sum += cell.balance;
    return sum;
}
bool ChainState::operator==(const ChainState& o) const
{
    return time == o.time && addresses == o.addresses;
}

// -- construction --------------------------------------------------------------

Value default_scalar(const TypePtr& t)
{
    switch (t->kind) {
    case TypeKind::UInt: return Value::uintv(0);
    case TypeKind::Int: return Value::intv(0);
    case TypeKind::Bool: return Value::boolean(false);
    case TypeKind::Address:
    case TypeKind::Contract:
        return Value::address(0);
    case TypeKind::Enum: return Value::enumv(t->name, 0);
    default:
        throw InternalError("default_scalar on reference type " + type_to_string(t));
    }
}

namespace {

Value make_composite_value(RefMap& m, const TypePtr& t, const ProgramIndex& idx)
{
    Value v;
    switch (t->kind) {
    case TypeKind::Struct: {
        v.kind = Value::Kind::Record;
        v.typeName = t->name;
        const StructDecl* sd = idx.structDecl(t->name);
        if (!sd)
            throw InternalError("unknown struct " + t->name);
        for (const auto& mem : sd->members) {
            if (mem.type->isReference())
                v.members.push_back({mem.name, Value::reference(alloc_tree(m, mem.type, idx))});
            else
                v.members.push_back({mem.name, default_scalar(mem.type)});
        }
        return v;
    }
    case TypeKind::Array: {
        v.kind = Value::Kind::Array;
        v.bits = t->fixedSize ? *t->fixedSize : U256(0);
        if (t->elem->isReference()) {
            v.mapDefault.push_back(Value::reference(0)); // materialised on access
            if (t->fixedSize) {
                // fixed arrays have all their slots from the start
                for (U256 i = 0; i < *t->fixedSize; ++i)
                    v.setOverride({0, i}, Value::reference(alloc_tree(m, t->elem, idx)));
            }
        } else {
            v.mapDefault.push_back(default_scalar(t->elem));
        }
        return v;
    }
    case TypeKind::Mapping: {
        v.kind = Value::Kind::Mapping;
        if (t->range->isReference())
            v.mapDefault.push_back(Value::reference(0));
        else
            v.mapDefault.push_back(default_scalar(t->range));
        return v;
    }
    default:
        throw InternalError("composite value for non-composite type");
    }
}

} // namespace

RefId alloc_tree(RefMap& m, const TypePtr& t, const ProgramIndex& idx)
{
    RefId root = m.fresh();
    RefCell cell;
    cell.type = t;
    if (t->isReference())
        cell.value = make_composite_value(m, t, idx);
    else
        cell.value = default_scalar(t);
    m.cells[root] = std::move(cell);
    return root;
}

void init_contract(ChainState& s, const Address& addr, const std::string& name,
                   const ProgramIndex& idx)
{
    const Contract* c = idx.contract(name);
    if (!c)
        throw InternalError("unknown contract " + name);
    AddressCell& cell = s.at(addr);
    if (cell.type.k != AddressKind::Unused)
        throw InternalError("init_contract on a used address");
    cell.type = AddressKind::ofContract(name);
    cell.balance = 0;
    for (const auto& v : c->variables)
        cell.members[v.name] = alloc_tree(cell.storage, v.type, idx);
}

Value map_read(RefMap& m, Value& cellValue, const ScalarKey& key, const TypePtr& elemType,
               const ProgramIndex& idx)
{
    if (cellValue.kind != Value::Kind::Mapping && cellValue.kind != Value::Kind::Array)
        throw InternalError("map_read on a non-mapping value");
    if (const Value* ov = cellValue.findOverride(key))
        return *ov;
    if (elemType->isReference()) {
        RefId r = alloc_tree(m, elemType, idx);
        cellValue.setOverride(key, Value::reference(r));
        return Value::reference(r);
    }
    return cellValue.defaultValue();
}

bool set_balance(ChainState& s, const Address& src, const Address& dest, const U256& value)
{
    if (s.balanceOf(src) < value)
        return false;
    s.at(src).balance -= value;
    s.at(dest).balance += value;
    return true;
}

// -- inspection -----------------------------------------------------------------

nlohmann::json value_to_json(const Value& v)
{
    using nlohmann::json;
    switch (v.kind) {
    case Value::Kind::UInt: return json{{"uint", u256_to_string(v.bits)}};
    case Value::Kind::Int: return json{{"int", int_to_string(v.bits)}};
    case Value::Kind::Bool: return json(v.bits != 0);
    case Value::Kind::Address: return json{{"address", u256_to_string(v.bits)}};
    case Value::Kind::Ref: return json{{"ref", v.ref}};
    case Value::Kind::Enum: return json{{"enum", v.typeName}, {"value", v.enumIndex}};
    case Value::Kind::Record: {
        json j;
        for (const auto& [n, mv] : v.members)
            j[n] = value_to_json(mv);
        return json{{"record", v.typeName}, {"members", j}};
    }
    case Value::Kind::Mapping:
    case Value::Kind::Array: {
        json j;
        j[v.kind == Value::Kind::Array ? "array" : "mapping"] = true;
        if (v.kind == Value::Kind::Array)
            j["length"] = u256_to_string(v.bits);
        j["default"] = value_to_json(v.defaultValue());
        json entries = json::array();
        for (const auto& [k, ev] : v.overrides)
            entries.push_back(json{{"key", u256_to_string(k.bits)}, {"value", value_to_json(ev)}});
        j["entries"] = entries;
        return j;
    }
    }
    return nullptr;
}

nlohmann::json chain_to_json(const ChainState& s)
{
    using nlohmann::json;
    json out;
    out["time"] = u256_to_string(s.time);
    json addrs = json::object();
    for (const auto& [a, cell] : s.addresses) {
        json jc;
        switch (cell.type.k) {
        case AddressKind::Unused: jc["type"] = "unused"; break;
        case AddressKind::Simple: jc["type"] = "simple"; break;
        case AddressKind::Contract: jc["type"] = cell.type.contract; break;
        }
        jc["balance"] = u256_to_string(cell.balance);
        if (!cell.members.empty()) {
            json jm;
            for (const auto& [n, r] : cell.members)
                jm[n] = r;
            jc["members"] = jm;
            json js = json::object();
            for (const auto& [r, c] : cell.storage.cells) {
                json cellj;
                cellj["type"] = c.type ? type_to_string(c.type) : "none";
                cellj["value"] = value_to_json(c.value);
                js[std::to_string(r)] = cellj;
            }
            jc["storage"] = js;
        }
        addrs[u256_to_string(a)] = jc;
    }
    out["addresses"] = addrs;
    return out;
}

namespace {

// canonical writer renaming refs in visit order
struct Canonicalizer {
    std::ostringstream os;

    void writeValue(const Value& v, const RefMap& m, std::map<RefId, int>& names, int& counter)
    {
        switch (v.kind) {
        case Value::Kind::UInt: os << "u" << v.bits; break;
        case Value::Kind::Int: os << "i" << v.bits; break;
        case Value::Kind::Bool: os << "b" << v.bits; break;
        case Value::Kind::Address: os << "a" << v.bits; break;
        case Value::Kind::Enum: os << "e" << v.typeName << ":" << v.enumIndex; break;
        case Value::Kind::Ref:
            writeRef(v.ref, m, names, counter);
            break;
        case Value::Kind::Record:
            os << "r{";
            for (const auto& [n, mv] : v.members) {
                os << n << "=";
                writeValue(mv, m, names, counter);
                os << ";";
            }
            os << "}";
            break;
        case Value::Kind::Mapping:
        case Value::Kind::Array:
            os << (v.kind == Value::Kind::Array ? "A" : "M") << "{";
            if (v.kind == Value::Kind::Array)
                os << "len=" << v.bits << ";";
            os << "def=";
            writeValue(v.defaultValue(), m, names, counter);
            os << ";";
            for (const auto& [k, ev] : v.overrides) {
                os << (int)k.tag << ":" << k.bits << "->";
                writeValue(ev, m, names, counter);
                os << ";";
            }
            os << "}";
            break;
        }
    }

    void writeRef(RefId r, const RefMap& m, std::map<RefId, int>& names, int& counter)
    {
        if (r == 0) {
            os << "null";
            return;
        }
        auto it = names.find(r);
        if (it != names.end()) {
            os << "#" << it->second;
            return;
        }
        int id = counter++;
        names[r] = id;
        os << "#" << id << "=";
        if (!m.has(r)) {
            os << "unalloc";
            return;
        }
        const RefCell& c = m.at(r);
        os << "(" << (c.type ? type_to_string(c.type) : "none") << ",";
        writeValue(c.value, m, names, counter);
        os << ")";
    }
};

} // namespace

std::string canonical_chain(const ChainState& s)
{
    Canonicalizer cz;
    cz.os << "t" << s.time << "|";
    for (const auto& [a, cell] : s.addresses) {
        if (cell.type.k == AddressKind::Unused && cell.balance == 0 && cell.members.empty())
            continue; // indistinguishable from an untouched address
        cz.os << "@" << a << ":";
        switch (cell.type.k) {
        case AddressKind::Unused: cz.os << "U"; break;
        case AddressKind::Simple: cz.os << "S"; break;
        case AddressKind::Contract: cz.os << "C" << cell.type.contract; break;
        }
        cz.os << "," << cell.balance << ",";
        std::map<RefId, int> names;
        int counter = 0;
        for (const auto& [n, r] : cell.members) {
            cz.os << n << "=";
            cz.writeRef(r, cell.storage, names, counter);
            cz.os << ";";
        }
        cz.os << "|";
    }
    return cz.os.str();
}

uint64_t chain_hash(const ChainState& s)
{
    // FNV-1a, stable across runs
    std::string c = canonical_chain(s);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : c) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace solidbmc::sem
