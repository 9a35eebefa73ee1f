#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tactor/model/compiled_model.hpp"
#include "tactor/runtime/configuration.hpp"
#include "tactor/runtime/interpreter.hpp"

namespace tactor::semantics {

using runtime::GlobalConfiguration;
using runtime::Message;
using runtime::Time;

enum class Mode { Ftts, RelaxedFtts, Tts };

const char* to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& text);

enum class LabelKind { Event, TimeProgress, Tau };

/// Transition label. Times are those of the source state's concrete
/// configuration; `shift` is set when the target was matched to an already
/// known state whose stored representative is `shift` time units earlier.
struct TransitionLabel {
    LabelKind kind = LabelKind::Event;
    int actor = -1;
    int server = -1;
    Time tag = 0;
    Time serve = 0;
    Time deadline = runtime::kNoDeadline;
    Time delta = 0;
    std::optional<Time> shift;

    friend bool operator==(const TransitionLabel&, const TransitionLabel&) = default;
};

enum class ChoiceKind { Event, Resume, TimeProgress };

/// One enabled move. Event choices carry the message they serve (always the
/// actor's bag minimum).
struct Choice {
    ChoiceKind kind = ChoiceKind::Event;
    int actor = -1;
    Message message;
    Time delta = 0;

    friend bool operator==(const Choice&, const Choice&) = default;
};

/// Floating-time scheduler: among actors with pending messages pick those
/// minimizing max(local clock, least time tag).
std::vector<Choice> ftts_candidates(const GlobalConfiguration& config);

/// Relaxed scheduler: the messages with the globally least time tag.
std::vector<Choice> rftts_candidates(const GlobalConfiguration& config);

/// Timed scheduler with maximal progress: resumes due now, else events
/// enabled now, else a single time jump to the next relevant instant.
/// Empty result means the configuration is terminal.
std::vector<Choice> tts_candidates(const GlobalConfiguration& config);

std::vector<Choice> candidates(Mode mode, const GlobalConfiguration& config);

struct StepResult {
    GlobalConfiguration next;
    TransitionLabel label;
    std::vector<runtime::Violation> violations;
    /// A runtime error aborted the step; `next` is meaningless.
    bool aborted = false;
};

/// Atomic serve of `choice` (floating-time semantics, either scheduler).
StepResult ftts_step(const model::CompiledModel& model, const GlobalConfiguration& config, const Choice& choice);

/// One timed-semantics move.
StepResult tts_step(const model::CompiledModel& model, const GlobalConfiguration& config, const Choice& choice);

StepResult step(Mode mode, const model::CompiledModel& model, const GlobalConfiguration& config, const Choice& choice);

/// Raises the clock of every actor with an empty bag to the earliest time at
/// which any message can still be served (floating-time modes). Such clocks
/// cannot influence any future serve time, so the rewrite preserves every
/// event label while letting idle actors follow the progress of time.
void lift_idle_clocks(Mode mode, GlobalConfiguration& config);

/// Builds the initial configuration for `mode` (bootstrap plus the global
/// clock in timed mode).
runtime::BootstrapResult initial_configuration(Mode mode, const model::CompiledModel& model);

} // namespace tactor::semantics
