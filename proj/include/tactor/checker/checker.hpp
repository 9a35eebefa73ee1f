#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tactor/model/compiled_model.hpp"
#include "tactor/semantics/explore.hpp"

namespace tactor::checker {

using semantics::StateId;
using semantics::StateSpace;
using semantics::Time;
using semantics::TransitionLabel;

/// A path from the initial state. `labels[i]` leads from `states[i]` to
/// `states[i + 1]`; label times are absolute (shifts re-applied).
struct Trace {
    std::vector<StateId> states;
    std::vector<TransitionLabel> labels;
    /// Offset to add to states.back()'s representative to get the concrete
    /// configuration reached by this path.
    Time final_offset = 0;
    /// Move attempted from states.back() that a runtime error aborted.
    std::optional<TransitionLabel> aborted_move;
};

enum class VerdictKind { DeadlockFree, Deadlock, QueueOverflow, DeadlineMiss, RuntimeError, AssertionViolation, Pass };

const char* to_string(VerdictKind kind);

struct Verdict {
    VerdictKind kind = VerdictKind::Pass;
    std::optional<Trace> witness;
    bool bounded = false;
    std::string name;   // assertion name, when applicable
    std::string detail;

    bool failed() const { return kind != VerdictKind::DeadlockFree && kind != VerdictKind::Pass; }
};

/// Shortest path (BFS over transitions in index order) to `target`.
std::optional<Trace> shortest_trace(const StateSpace& space, StateId target);

Verdict check_deadlock(const StateSpace& space);

/// One verdict per recorded violation site.
std::vector<Verdict> collect_violations(const StateSpace& space);

struct Assertion {
    std::string name;
    std::string source;
    model::CExpr predicate;
    std::vector<int> instances;
};

struct AssertionParseResult {
    std::vector<Assertion> assertions;
    std::vector<std::string> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

/// Parses `assert NAME : EXPR` lines (`#` starts a comment). In floating-time
/// modes every assertion must reference exactly one instance.
AssertionParseResult parse_assertions(std::string_view text, const model::CompiledModel& model, semantics::Mode mode);

std::vector<Verdict> check_assertions(const StateSpace& space, const std::vector<Assertion>& assertions);

/// Event label as compared across semantics.
struct EventKey {
    int actor = -1;
    int server = -1;
    Time serve = 0;

    friend auto operator<=>(const EventKey&, const EventKey&) = default;
};

using EventSequence = std::vector<EventKey>;

/// Event sequences of all paths from the initial state, cut at `depth`
/// events; time-progress and silent moves are erased. Paths that end (or
/// leave the explored part) earlier contribute their shorter sequence.
std::set<EventSequence> event_traces(const StateSpace& space, std::size_t depth);

struct Comparison {
    bool equal = true;
    EventSequence counterexample;
    bool only_in_first = false; // which side exhibits the counterexample
};

/// Bounded event-trace equality; on failure reports a shortest sequence
/// contained in exactly one of the two spaces.
Comparison compare_event_behavior(const StateSpace& a, const StateSpace& b, std::size_t depth);

/// Re-executes a trace's labels from the initial configuration using the
/// step functions and returns the concrete configuration reached.
std::optional<semantics::GlobalConfiguration> replay(const model::CompiledModel& model, semantics::Mode mode,
                                                     const Trace& trace);

} // namespace tactor::checker
