#include "tactor/runtime/interpreter.hpp"

#include <algorithm>
#include <sstream>

namespace tactor::runtime {

using model::CExpr;
using model::CExprKind;
using model::OpCode;
using model::ScalarType;
using model::VarScope;
using syntax::BinaryOp;

const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::DeadlineMiss: return "DeadlineMiss";
    case ViolationKind::QueueOverflow: return "QueueOverflow";
    case ViolationKind::RuntimeError: return "RuntimeError";
    }
    return "?";
}

bool same_up_to_seq(const GlobalConfiguration& a, const GlobalConfiguration& b) {
    if (a.global_clock != b.global_clock || a.actors.size() != b.actors.size()) return false;
    for (std::size_t i = 0; i < a.actors.size(); ++i) {
        const auto& x = a.actors[i];
        const auto& y = b.actors[i];
        if (x.vars != y.vars || x.clock != y.clock || x.suspended != y.suspended || x.bag.size() != y.bag.size()) {
            return false;
        }
        for (std::size_t m = 0; m < x.bag.size(); ++m) {
            Message p = x.bag[m];
            Message q = y.bag[m];
            p.seq = q.seq = 0;
            if (p != q) return false;
        }
    }
    return true;
}

Value scalar_value(ScalarType type, std::int64_t raw) {
    switch (type) {
    case ScalarType::Int: return raw;
    case ScalarType::Bool: return raw != 0;
    case ScalarType::Byte: return ByteVal{static_cast<std::uint8_t>(raw)};
    }
    return raw;
}

Value read_slot(const model::VarSlot& slot, std::span<const std::int64_t> storage) {
    if (!slot.is_array()) return scalar_value(slot.type, storage[slot.offset]);
    ArrayVal arr;
    arr.element = slot.type;
    arr.items.assign(storage.begin() + slot.offset, storage.begin() + slot.offset + slot.length);
    return arr;
}

std::string to_string(const Value& v) {
    struct Visitor {
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(ByteVal b) const { return std::to_string(b.value); }
        std::string operator()(const ArrayVal& a) const {
            std::string out = "[";
            for (std::size_t i = 0; i < a.items.size(); ++i) {
                if (i) out += ", ";
                out += a.element == ScalarType::Bool ? (a.items[i] ? "true" : "false") : std::to_string(a.items[i]);
            }
            return out + "]";
        }
    };
    return std::visit(Visitor{}, v);
}

namespace {

[[noreturn]] void violation(int line, const std::string& what) {
    throw RuntimeViolation(line > 0 ? "line " + std::to_string(line) + ": " + what : what);
}

std::span<const std::int64_t> storage_for(const CExpr& e, const Env& env) {
    if (e.instance >= 0) {
        if (!env.world) violation(e.line, "qualified reference without a global configuration");
        return env.world->actors[e.instance].vars;
    }
    return e.scope == VarScope::State ? env.state : env.locals;
}

std::int64_t check_index(std::int64_t index, int length, int line) {
    if (index < 0 || index >= length) {
        violation(line, "array index " + std::to_string(index) + " out of bounds [0, " + std::to_string(length) + ")");
    }
    return index;
}

std::int64_t store_scalar(ScalarType type, std::int64_t value, int line) {
    if (type == ScalarType::Byte && (value < 0 || value > 255)) {
        violation(line, "byte value " + std::to_string(value) + " out of range 0..255");
    }
    return value;
}

} // namespace

std::int64_t eval_raw(const CExpr& e, const Env& env) {
    switch (e.kind) {
    case CExprKind::Const: return e.constant;
    case CExprKind::Var:
    case CExprKind::Qualified: return storage_for(e, env)[e.offset];
    case CExprKind::Index: {
        std::int64_t i = check_index(eval_raw(e.operands[0], env), e.length, e.line);
        return storage_for(e, env)[e.offset + i];
    }
    case CExprKind::Unary: {
        std::int64_t x = eval_raw(e.operands[0], env);
        if (e.unary_op == syntax::UnaryOp::Not) return x ? 0 : 1;
        std::int64_t out;
        if (__builtin_sub_overflow(std::int64_t{0}, x, &out)) violation(e.line, "integer overflow");
        return out;
    }
    case CExprKind::Binary: {
        // Short-circuit for the logical operators.
        if (e.binary_op == BinaryOp::And) return eval_raw(e.operands[0], env) && eval_raw(e.operands[1], env) ? 1 : 0;
        if (e.binary_op == BinaryOp::Or) return eval_raw(e.operands[0], env) || eval_raw(e.operands[1], env) ? 1 : 0;
        std::int64_t a = eval_raw(e.operands[0], env);
        std::int64_t b = eval_raw(e.operands[1], env);
        std::int64_t out = 0;
        switch (e.binary_op) {
        case BinaryOp::Add:
            if (__builtin_add_overflow(a, b, &out)) violation(e.line, "integer overflow");
            return out;
        case BinaryOp::Sub:
            if (__builtin_sub_overflow(a, b, &out)) violation(e.line, "integer overflow");
            return out;
        case BinaryOp::Mul:
            if (__builtin_mul_overflow(a, b, &out)) violation(e.line, "integer overflow");
            return out;
        case BinaryOp::Div:
        case BinaryOp::Mod:
            if (b == 0) violation(e.line, "division by zero");
            if (a == std::numeric_limits<std::int64_t>::min() && b == -1) violation(e.line, "integer overflow");
            return e.binary_op == BinaryOp::Div ? a / b : a % b;
        case BinaryOp::Less: return a < b;
        case BinaryOp::LessEq: return a <= b;
        case BinaryOp::Greater: return a > b;
        case BinaryOp::GreaterEq: return a >= b;
        case BinaryOp::Equal: return a == b;
        case BinaryOp::NotEqual: return a != b;
        case BinaryOp::And:
        case BinaryOp::Or: break;
        }
        break;
    }
    }
    violation(e.line, "malformed expression");
}

Value eval_expr(const CExpr& expr, const Env& env) { return scalar_value(expr.type, eval_raw(expr, env)); }

std::vector<std::int64_t> initial_frame(const model::ServerInfo& server, const std::vector<std::int64_t>& args) {
    std::vector<std::int64_t> frame(server.frame_size, 0);
    std::copy(args.begin(), args.end(), frame.begin());
    return frame;
}

namespace {

struct RunOutcome {
    bool completed = true;
    int pc = 0;
    Time delay = 0;
};

/// Shared interpreter loop for atomic and sliced execution.
class Machine {
public:
    Machine(const model::CompiledModel& model, int instance, std::vector<std::int64_t>& vars,
            std::vector<std::int64_t>& frame, Time& clock, std::vector<Message>& sends)
        : model_(model), instance_(instance), vars_(vars), frame_(frame), clock_(clock), sends_(sends) {}

    RunOutcome run(const model::ServerInfo& server, int pc, bool stop_at_delay) {
        std::int64_t budget = kMaxInstructionsPerSlice;
        const auto& code = server.code;
        while (pc < static_cast<int>(code.size())) {
            if (--budget < 0) violation(0, "message server " + server.name + " exceeded the instruction limit");
            const model::Instr& in = code[pc];
            Env env{vars_, frame_, nullptr};
            switch (in.op) {
            case OpCode::InitLocal: {
                auto begin = frame_.begin() + in.target.offset;
                std::fill(begin, begin + std::max(in.target.length, 1), 0);
                if (in.value) frame_[in.target.offset] = store_scalar(in.target.type, eval_raw(*in.value, env), in.line);
                ++pc;
                break;
            }
            case OpCode::Assign: {
                std::int64_t value = store_scalar(in.target.type, eval_raw(*in.value, env), in.line);
                int slot = in.target.offset;
                if (in.target.index) slot += check_index(eval_raw(*in.target.index, env), in.target.length, in.line);
                (in.target.scope == VarScope::State ? vars_ : frame_)[slot] = value;
                ++pc;
                break;
            }
            case OpCode::Delay: {
                Time amount = eval_raw(*in.value, env);
                if (amount < 0) violation(in.line, "negative delay " + std::to_string(amount));
                ++pc;
                if (stop_at_delay) return RunOutcome{false, pc, amount};
                Time next;
                if (__builtin_add_overflow(clock_, amount, &next)) violation(in.line, "integer overflow");
                clock_ = next;
                break;
            }
            case OpCode::Send:
                send(in, env);
                ++pc;
                break;
            case OpCode::JumpIfFalse:
                pc = eval_raw(*in.value, env) ? pc + 1 : in.jump_target;
                break;
            case OpCode::Jump:
                pc = in.jump_target;
                break;
            }
        }
        return RunOutcome{true, pc, 0};
    }

private:
    void send(const model::Instr& in, const Env& env) {
        Message msg;
        msg.sender = instance_;
        msg.receiver = in.receiver_rebec < 0 ? instance_ : model_.instances[instance_].bindings[in.receiver_rebec];
        msg.server = in.server;
        for (std::size_t i = 0; i < in.args.size(); ++i) {
            msg.args.push_back(store_scalar(in.arg_types[i], eval_raw(in.args[i], env), in.line));
        }
        Time after = 0;
        if (in.after) {
            after = eval_raw(*in.after, env);
            if (after < 0) violation(in.line, "negative after " + std::to_string(after));
        }
        msg.sent_at = clock_;
        if (__builtin_add_overflow(clock_, after, &msg.tag)) violation(in.line, "integer overflow");
        if (in.deadline) {
            Time relative = eval_raw(*in.deadline, env);
            if (relative <= 0) violation(in.line, "deadline must be positive, got " + std::to_string(relative));
            if (__builtin_add_overflow(clock_, relative, &msg.deadline) || msg.deadline == kNoDeadline) {
                violation(in.line, "integer overflow");
            }
        }
        sends_.push_back(std::move(msg));
    }

    const model::CompiledModel& model_;
    int instance_;
    std::vector<std::int64_t>& vars_;
    std::vector<std::int64_t>& frame_;
    Time& clock_;
    std::vector<Message>& sends_;
};

} // namespace

AtomicResult exec_atomic(const model::CompiledModel& model, int instance, const ActorConfiguration& actor,
                         const Message& msg) {
    AtomicResult result;
    result.actor = actor;
    auto& self = result.actor;
    auto top = bag_min(self.bag);
    if (!top || *top != msg) throw std::logic_error("exec_atomic: message is not the top of the bag");
    self.bag.pop_min();
    result.serve_time = std::max(self.clock, msg.tag);
    result.deadline_missed = result.serve_time > msg.deadline;
    self.clock = result.serve_time;

    const auto& server = model.class_of(instance).servers[msg.server];
    std::vector<std::int64_t> frame = initial_frame(server, msg.args);
    try {
        Machine machine(model, instance, self.vars, frame, self.clock, result.sends);
        machine.run(server, 0, false);
    } catch (const RuntimeViolation& e) {
        result.error = e.what();
    }
    return result;
}

SliceResult exec_slice(const model::CompiledModel& model, int instance, const ActorConfiguration& actor, int server,
                       int pc, std::vector<std::int64_t> frame, Time now) {
    SliceResult result;
    result.actor = actor;
    auto& self = result.actor;
    self.suspended.reset();
    const auto& info = model.class_of(instance).servers[server];
    Time clock = now;
    try {
        Machine machine(model, instance, self.vars, frame, clock, result.sends);
        RunOutcome out = machine.run(info, pc, true);
        result.completed = out.completed;
        if (!out.completed) {
            result.delay_amount = out.delay;
            Time wake;
            if (__builtin_add_overflow(now, out.delay, &wake)) violation(0, "integer overflow");
            self.suspended = Continuation{server, out.pc, std::move(frame), wake};
        }
    } catch (const RuntimeViolation& e) {
        result.error = e.what();
    }
    return result;
}

BootstrapResult bootstrap(const model::CompiledModel& model) {
    BootstrapResult result;
    auto& config = result.config;
    for (const auto& inst : model.instances) {
        ActorConfiguration actor;
        actor.vars.assign(model.classes[inst.class_id].state_size, 0);
        config.actors.push_back(std::move(actor));
    }
    for (std::size_t i = 0; i < model.instances.size(); ++i) {
        const auto& cls = model.class_of(static_cast<int>(i));
        if (!cls.constructor) continue;
        std::vector<Message> sends;
        std::vector<std::int64_t> frame = initial_frame(*cls.constructor, model.instances[i].ctor_args);
        auto& actor = config.actors[i];
        try {
            Machine machine(model, static_cast<int>(i), actor.vars, frame, actor.clock, sends);
            machine.run(*cls.constructor, 0, false);
        } catch (const RuntimeViolation& e) {
            result.violations.push_back(Violation{ViolationKind::RuntimeError, static_cast<int>(i),
                                                  model.instances[i].name + " constructor: " + e.what()});
        }
        for (auto& msg : sends) {
            msg.seq = config.next_seq++;
            int receiver = msg.receiver;
            const auto& rcls = model.class_of(receiver);
            if (auto overflow = enqueue(config.actors[receiver].bag, std::move(msg), rcls.queue_capacity)) {
                std::ostringstream os;
                os << "queue of " << model.instances[receiver].name << " (capacity " << rcls.queue_capacity
                   << ") full on " << rcls.servers[overflow->message.server].name << " from "
                   << model.instances[i].name;
                result.violations.push_back(Violation{ViolationKind::QueueOverflow, receiver, os.str()});
            }
        }
    }
    return result;
}

} // namespace tactor::runtime
