#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tactor/model/compiled_model.hpp"
#include "tactor/runtime/configuration.hpp"
#include "tactor/runtime/value.hpp"

namespace tactor::runtime {

/// A fault raised while evaluating or executing model code: division by
/// zero, index out of bounds, byte range, negative timing argument, ...
class RuntimeViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ViolationKind { DeadlineMiss, QueueOverflow, RuntimeError };

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind = ViolationKind::RuntimeError;
    int actor = -1;
    std::string detail;
};

/// Variable bindings for expression evaluation. `world` is only needed for
/// qualified (`instance.var`) references.
struct Env {
    std::span<const std::int64_t> state;
    std::span<const std::int64_t> locals;
    const GlobalConfiguration* world = nullptr;
};

/// Evaluates a checked expression. Throws RuntimeViolation.
Value eval_expr(const model::CExpr& expr, const Env& env);

/// Same, returning the raw slot encoding (booleans as 0/1).
std::int64_t eval_raw(const model::CExpr& expr, const Env& env);

/// Upper bound on instructions per execution slice; exceeding it is reported
/// as a runtime violation (non-terminating message server).
inline constexpr std::int64_t kMaxInstructionsPerSlice = 1'000'000;

struct AtomicResult {
    ActorConfiguration actor;
    std::vector<Message> sends; // in emission order, seq not yet assigned
    Time serve_time = 0;
    bool deadline_missed = false;
    std::optional<std::string> error;
};

/// Serves `msg` (the actor's bag minimum) to completion: the clock moves to
/// max(clock, tag), every `delay` adds to the clock, sends are stamped with
/// the clock at the send. The message is removed from the bag.
AtomicResult exec_atomic(const model::CompiledModel& model, int instance, const ActorConfiguration& actor,
                         const Message& msg);

struct SliceResult {
    ActorConfiguration actor;
    std::vector<Message> sends;
    bool completed = true;
    Time delay_amount = 0; // when suspended
    std::optional<std::string> error;
};

/// Runs a message server from `pc` with the given frame at fixed time `now`
/// until the first `delay` or the end of the body. On suspension the actor's
/// continuation (wake = now + delay) is stored in the returned actor.
SliceResult exec_slice(const model::CompiledModel& model, int instance, const ActorConfiguration& actor, int server,
                       int pc, std::vector<std::int64_t> frame, Time now);

/// Initial frame for serving `msg`: parameters from the message arguments,
/// locals zeroed.
std::vector<std::int64_t> initial_frame(const model::ServerInfo& server, const std::vector<std::int64_t>& args);

struct BootstrapResult {
    GlobalConfiguration config;
    std::vector<Violation> violations;
};

/// All clocks at zero; constructors run atomically in declaration order and
/// their sends are enqueued immediately.
BootstrapResult bootstrap(const model::CompiledModel& model);

} // namespace tactor::runtime
