#pragma once

#include <string>

#include "tactor/semantics/transition.hpp"

namespace tactor::semantics {

/// Canonical encoding of a configuration with all time values expressed
/// relative to `base`, the least finite time value it contains.
struct NormalizedState {
    std::string key;
    Time base = 0;

    friend bool operator==(const NormalizedState&, const NormalizedState&) = default;
};

/// Time values taking part in normalization: local clocks (floating-time
/// modes), the global clock (timed mode), time tags, send times, finite
/// deadlines and wake-up times. Arrival counters are dropped; bag order is
/// positional.
NormalizedState normalize(Mode mode, const GlobalConfiguration& config);

/// Adds `delta` to every finite time value.
GlobalConfiguration shift_times(Mode mode, GlobalConfiguration config, Time delta);

/// Inverse of normalize: rebuilds the configuration whose least time value is
/// `base`. Arrival counters are renumbered in bag order.
GlobalConfiguration denormalize(const std::string& key, Time base);

} // namespace tactor::semantics
