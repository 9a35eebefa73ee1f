#pragma once

// Test-only reference simulator. Works on the syntax tree directly and
// enumerates bounded event traces by plain tree search (no state matching,
// no time normalization), so its results can be compared against the
// explored state spaces.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tactor/syntax/ast.hpp"

namespace oracle {

enum class Semantics { Ftts, RelaxedFtts, Tts };

struct Event {
    std::string actor;
    std::string server;
    std::int64_t serve = 0;

    auto operator<=>(const Event&) const = default;
};

using EventTrace = std::vector<Event>;

struct Miss {
    std::string actor;
    std::string server;
    std::int64_t serve = 0;
    std::int64_t deadline = 0;

    auto operator<=>(const Miss&) const = default;
};

struct Served {
    std::string actor;
    std::string server;
    std::int64_t tag = 0;
    std::int64_t serve = 0;
};

struct Result {
    std::set<EventTrace> traces;
    std::set<Miss> misses;
    std::size_t overflows = 0;
    /// Every maximal path with the tags of the messages it served.
    std::vector<std::vector<Served>> paths;
};

Result enumerate(const tactor::syntax::SyntaxTree& tree, Semantics semantics, std::size_t depth);

} // namespace oracle
