#pragma once

#include <ostream>
#include <string>

#include "tactor/model/compiled_model.hpp"
#include "tactor/semantics/explore.hpp"

namespace tactor::cli {

inline constexpr const char* kJsonSchemaVersion = "tactor-statespace/1";

/// Edge text: `actor.msg @t`, `time +d`, `τ`, with ` (shift +d)` appended
/// for shift-matched targets.
std::string label_text(const model::CompiledModel& model, const semantics::TransitionLabel& label);

void export_dot(const model::CompiledModel& model, const semantics::StateSpace& space, std::ostream& out);

/// Deterministic JSON rendering (sorted keys, two-space indentation).
std::string export_json(const model::CompiledModel& model, const semantics::StateSpace& space);

} // namespace tactor::cli
