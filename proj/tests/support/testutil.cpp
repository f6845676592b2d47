// solidbmc: bounded model checking toolchain for a Solidity subset
// Copyright 2026 The solidbmc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/testutil.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace solidbmc::test {

std::string read_fixture(const std::string& name)
{
    for (const char* base : {"tests/data/", "../tests/data/", "../../tests/data/",
                             "../../../tests/data/"}) {
        std::ifstream in(std::string(base) + name);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }
    }
    // fall back to the source-tree layout relative to the binary
    std::ifstream in(std::string(SOLIDBMC_DATA_DIR) + "/" + name);
    if (!in)
        throw std::runtime_error("fixture not found: " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ast::Program load_source(const std::string& source)
{
    return frontend::load_program(source);
}

ast::Program load_fixture(const std::string& name)
{
    return load_source(read_fixture(name));
}

ast::Program load_solid(const std::string& source)
{
    return explicator::explicate(load_source(source));
}

std::vector<std::string> tokens_of(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isspace((unsigned char)c)) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

uint64_t Rng::next()
{
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

sem::InterpreterConfig test_config(int addresses, int budget)
{
    sem::InterpreterConfig cfg;
    for (int i = 1; i <= addresses; ++i)
        cfg.addressUniverse.push_back(U256(i));
    cfg.stepBudget = budget;
    return cfg;
}

namespace {

void collect_refs(const sem::Value& v, std::vector<sem::RefId>& out)
{
    using K = sem::Value::Kind;
    switch (v.kind) {
    case K::Ref:
        if (v.ref != 0)
            out.push_back(v.ref);
        return;
    case K::Record:
        for (const auto& [n, mv] : v.members)
            collect_refs(mv, out);
        return;
    case K::Mapping:
    case K::Array:
        for (const auto& [k, ev] : v.overrides)
            collect_refs(ev, out);
        return;
    default:
        return;
    }
}

bool map_injective(const sem::RefMap& m, const std::vector<sem::RefId>& roots)
{
    std::map<sem::RefId, int> inbound;
    for (sem::RefId r : roots)
        inbound[r]++;
    for (const auto& [ref, cell] : m.cells) {
        std::vector<sem::RefId> children;
        collect_refs(cell.value, children);
        for (sem::RefId c : children) {
            inbound[c]++;
            if (!m.has(c))
                return false; // dangling reference
        }
    }
    for (const auto& [ref, n] : inbound)
        if (n > 1)
            return false;
    return true;
}

} // namespace

bool allocation_injective(const sem::ChainState& chain, const sem::RefMap* memory)
{
    for (const auto& [addr, cell] : chain.addresses) {
        std::vector<sem::RefId> roots;
        for (const auto& [name, r] : cell.members)
            roots.push_back(r);
        if (!map_injective(cell.storage, roots))
            return false;
    }
    if (memory && !map_injective(*memory, {}))
        return false;
    return true;
}

} // namespace solidbmc::test
