#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tactor/model/compiled_model.hpp"
#include "tactor/semantics/normalize.hpp"
#include "tactor/semantics/transition.hpp"

namespace tactor::semantics {

using StateId = std::size_t;

struct Limits {
    std::size_t max_states = 100000;
    std::optional<std::size_t> max_depth;
    std::optional<Time> max_time;
};

struct StateRecord {
    std::string key;
    GlobalConfiguration config; // concrete representative at first discovery
    Time base = 0;              // least time value of `config`
    std::size_t depth = 0;      // BFS depth
    bool expanded = false;
};

struct Transition {
    StateId from = 0;
    StateId to = 0;
    TransitionLabel label;
};

struct ViolationRecord {
    runtime::ViolationKind kind = runtime::ViolationKind::RuntimeError;
    int actor = -1;
    StateId state = 0;                     // source state of the offending move
    std::optional<std::size_t> transition; // absent when the move was aborted or happened at bootstrap
    std::optional<TransitionLabel> label;  // the offending move, when there was one
    std::string detail;
};

struct StateSpace {
    Mode mode = Mode::Ftts;
    std::vector<StateRecord> states;
    std::vector<Transition> transitions;
    std::vector<ViolationRecord> violations;
    std::vector<std::vector<std::size_t>> outgoing; // transition indices per state
    StateId initial = 0;
    bool bounded = false;
};

/// Breadth-first generation of the normalized state space. Successors are
/// matched to known states up to a uniform time shift.
StateSpace explore(const model::CompiledModel& model, Mode mode, const Limits& limits = {});

/// Concrete successor represented by `t`: the target representative moved
/// forward by the transition's shift.
GlobalConfiguration concrete_target(const StateSpace& space, const Transition& t);

} // namespace tactor::semantics
