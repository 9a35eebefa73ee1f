#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tactor/checker/checker.hpp"
#include "tactor/semantics/transition.hpp"

namespace tactor::cli {

enum class ExportFormat { None, Dot, Json };
enum class CompareMode { FttsVsTts, FttsVsRftts };

struct RunConfig {
    std::string model_path;
    semantics::Mode mode = semantics::Mode::Ftts;
    std::optional<std::string> assertion_path;
    std::size_t max_states = 100000;
    ExportFormat export_format = ExportFormat::None;
    std::optional<std::string> export_path;
    std::optional<CompareMode> compare;
    std::size_t depth = 6;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// `#k  <instance>.<server>  tag=<t> serve=<t'> deadline=<d|inf>`, one line
/// per event of the trace.
std::string format_trace(const model::CompiledModel& model, const checker::Trace& trace);

/// Process exit status for a set of verdicts.
int exit_status(const std::vector<checker::Verdict>& verdicts);

/// Executes a parsed configuration; diagnostics go to `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `tactor check MODEL [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tactor::cli
