#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tactor/runtime/message.hpp"

namespace tactor::runtime {

/// A message-server execution paused at a `delay` (timed semantics only).
struct Continuation {
    int server = -1;
    int pc = 0;
    std::vector<std::int64_t> frame;
    Time wake = 0;

    friend bool operator==(const Continuation&, const Continuation&) = default;
};

struct ActorConfiguration {
    std::vector<std::int64_t> vars;
    Time clock = 0;
    MessageBag bag;
    std::optional<Continuation> suspended;

    bool idle() const { return !suspended.has_value(); }

    friend bool operator==(const ActorConfiguration&, const ActorConfiguration&) = default;
};

struct GlobalConfiguration {
    std::vector<ActorConfiguration> actors; // indexed by instance id
    std::optional<Time> global_clock;       // timed semantics only
    std::uint64_t next_seq = 0;

    friend bool operator==(const GlobalConfiguration&, const GlobalConfiguration&) = default;
};

/// Equality ignoring the arrival counters, which only fix relative order.
bool same_up_to_seq(const GlobalConfiguration& a, const GlobalConfiguration& b);

} // namespace tactor::runtime
