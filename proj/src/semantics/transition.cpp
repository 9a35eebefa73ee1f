#include "tactor/semantics/transition.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tactor::semantics {

using runtime::ActorConfiguration;
using runtime::Violation;
using runtime::ViolationKind;

const char* to_string(Mode mode) {
    switch (mode) {
    case Mode::Ftts: return "ftts";
    case Mode::RelaxedFtts: return "rftts";
    case Mode::Tts: return "tts";
    }
    return "?";
}

std::optional<Mode> parse_mode(const std::string& text) {
    if (text == "ftts") return Mode::Ftts;
    if (text == "rftts") return Mode::RelaxedFtts;
    if (text == "tts") return Mode::Tts;
    return std::nullopt;
}

namespace {

constexpr Time kNever = std::numeric_limits<Time>::max();

Choice event_choice(int actor, const Message& m) {
    Choice c;
    c.kind = ChoiceKind::Event;
    c.actor = actor;
    c.message = m;
    return c;
}

} // namespace

std::vector<Choice> ftts_candidates(const GlobalConfiguration& config) {
    Time best = kNever;
    for (const auto& a : config.actors) {
        if (!a.bag.empty()) best = std::min(best, std::max(a.clock, a.bag[0].tag));
    }
    std::vector<Choice> out;
    for (std::size_t i = 0; i < config.actors.size(); ++i) {
        const auto& a = config.actors[i];
        if (!a.bag.empty() && std::max(a.clock, a.bag[0].tag) == best) {
            out.push_back(event_choice(static_cast<int>(i), a.bag[0]));
        }
    }
    return out;
}

std::vector<Choice> rftts_candidates(const GlobalConfiguration& config) {
    Time best = kNever;
    for (const auto& a : config.actors) {
        if (!a.bag.empty()) best = std::min(best, a.bag[0].tag);
    }
    std::vector<Choice> out;
    for (std::size_t i = 0; i < config.actors.size(); ++i) {
        const auto& a = config.actors[i];
        if (!a.bag.empty() && a.bag[0].tag == best) out.push_back(event_choice(static_cast<int>(i), a.bag[0]));
    }
    return out;
}

std::vector<Choice> tts_candidates(const GlobalConfiguration& config) {
    if (!config.global_clock) throw std::logic_error("tts_candidates: configuration has no global clock");
    const Time now = *config.global_clock;
    std::vector<Choice> out;
    for (std::size_t i = 0; i < config.actors.size(); ++i) {
        const auto& a = config.actors[i];
        if (a.suspended && a.suspended->wake == now) {
            Choice c;
            c.kind = ChoiceKind::Resume;
            c.actor = static_cast<int>(i);
            out.push_back(c);
        }
    }
    if (!out.empty()) return out;
    for (std::size_t i = 0; i < config.actors.size(); ++i) {
        const auto& a = config.actors[i];
        if (a.idle() && !a.bag.empty() && a.bag[0].tag <= now) out.push_back(event_choice(static_cast<int>(i), a.bag[0]));
    }
    if (!out.empty()) return out;
    Time next = kNever;
    for (const auto& a : config.actors) {
        if (a.suspended) next = std::min(next, a.suspended->wake);
        else if (!a.bag.empty()) next = std::min(next, a.bag[0].tag);
    }
    if (next != kNever) {
        Choice c;
        c.kind = ChoiceKind::TimeProgress;
        c.delta = next - now;
        out.push_back(c);
    }
    return out;
}

std::vector<Choice> candidates(Mode mode, const GlobalConfiguration& config) {
    switch (mode) {
    case Mode::Ftts: return ftts_candidates(config);
    case Mode::RelaxedFtts: return rftts_candidates(config);
    case Mode::Tts: return tts_candidates(config);
    }
    return {};
}

namespace {

std::string server_name(const model::CompiledModel& model, int instance, int server) {
    return model.instances[instance].name + "." + model.class_of(instance).servers[server].name;
}

void deliver(const model::CompiledModel& model, GlobalConfiguration& config, std::vector<Message>& sends,
             std::vector<Violation>& violations) {
    for (auto& msg : sends) {
        msg.seq = config.next_seq++;
        int receiver = msg.receiver;
        const auto& cls = model.class_of(receiver);
        if (auto overflow = runtime::enqueue(config.actors[receiver].bag, std::move(msg), cls.queue_capacity)) {
            std::ostringstream os;
            os << "queue of " << model.instances[receiver].name << " (capacity " << cls.queue_capacity
               << ") full when receiving " << cls.servers[overflow->message.server].name << " from "
               << model.instances[overflow->message.sender].name << " tag=" << overflow->message.tag;
            violations.push_back(Violation{ViolationKind::QueueOverflow, receiver, os.str()});
        }
    }
}

TransitionLabel event_label(const Message& m, int actor, Time serve) {
    TransitionLabel label;
    label.kind = LabelKind::Event;
    label.actor = actor;
    label.server = m.server;
    label.tag = m.tag;
    label.serve = serve;
    label.deadline = m.deadline;
    return label;
}

void record_deadline(const model::CompiledModel& model, const Message& m, int actor, Time serve,
                     std::vector<Violation>& violations) {
    std::ostringstream os;
    os << server_name(model, actor, m.server) << " served at " << serve << " after its deadline " << m.deadline
       << " (tag " << m.tag << ")";
    violations.push_back(Violation{ViolationKind::DeadlineMiss, actor, os.str()});
}

} // namespace

StepResult ftts_step(const model::CompiledModel& model, const GlobalConfiguration& config, const Choice& choice) {
    if (choice.kind != ChoiceKind::Event) throw std::logic_error("ftts_step: only event choices exist");
    StepResult result;
    result.next = config;
    auto atomic = runtime::exec_atomic(model, choice.actor, config.actors[choice.actor], choice.message);
    result.label = event_label(choice.message, choice.actor, atomic.serve_time);
    if (atomic.deadline_missed) record_deadline(model, choice.message, choice.actor, atomic.serve_time, result.violations);
    if (atomic.error) {
        result.violations.push_back(Violation{ViolationKind::RuntimeError, choice.actor,
                                              server_name(model, choice.actor, choice.message.server) + ": " +
                                                  *atomic.error});
        result.aborted = true;
        return result;
    }
    result.next.actors[choice.actor] = std::move(atomic.actor);
    deliver(model, result.next, atomic.sends, result.violations);
    return result;
}

StepResult tts_step(const model::CompiledModel& model, const GlobalConfiguration& config, const Choice& choice) {
    if (!config.global_clock) throw std::logic_error("tts_step: configuration has no global clock");
    StepResult result;
    result.next = config;
    const Time now = *config.global_clock;
    auto& next = result.next;

    if (choice.kind == ChoiceKind::TimeProgress) {
        result.label.kind = LabelKind::TimeProgress;
        result.label.delta = choice.delta;
        next.global_clock = now + choice.delta;
        return result;
    }

    ActorConfiguration actor = config.actors[choice.actor];
    runtime::SliceResult slice;
    int server = -1;
    if (choice.kind == ChoiceKind::Event) {
        Message msg = actor.bag.pop_min();
        if (msg != choice.message) throw std::logic_error("tts_step: message is not the top of the bag");
        result.label = event_label(msg, choice.actor, now);
        if (now > msg.deadline) record_deadline(model, msg, choice.actor, now, result.violations);
        server = msg.server;
        const auto& info = model.class_of(choice.actor).servers[server];
        slice = runtime::exec_slice(model, choice.actor, actor, server, 0, runtime::initial_frame(info, msg.args), now);
    } else {
        if (!actor.suspended) throw std::logic_error("tts_step: resume of an idle actor");
        runtime::Continuation k = *actor.suspended;
        server = k.server;
        result.label.kind = LabelKind::Tau;
        result.label.actor = choice.actor;
        result.label.server = server;
        slice = runtime::exec_slice(model, choice.actor, actor, k.server, k.pc, std::move(k.frame), now);
    }
    if (slice.error) {
        result.violations.push_back(
            Violation{ViolationKind::RuntimeError, choice.actor, server_name(model, choice.actor, server) + ": " + *slice.error});
        result.aborted = true;
        return result;
    }
    next.actors[choice.actor] = std::move(slice.actor);
    deliver(model, next, slice.sends, result.violations);
    return result;
}

StepResult step(Mode mode, const model::CompiledModel& model, const GlobalConfiguration& config, const Choice& choice) {
    return mode == Mode::Tts ? tts_step(model, config, choice) : ftts_step(model, config, choice);
}

void lift_idle_clocks(Mode mode, GlobalConfiguration& config) {
    if (mode == Mode::Tts) return;
    Time floor = kNever;
    for (const auto& a : config.actors) {
        if (a.bag.empty()) continue;
        floor = std::min(floor, mode == Mode::Ftts ? std::max(a.clock, a.bag[0].tag) : a.bag[0].tag);
    }
    if (floor == kNever) return;
    for (auto& a : config.actors) {
        if (a.bag.empty() && a.clock < floor) a.clock = floor;
    }
}

runtime::BootstrapResult initial_configuration(Mode mode, const model::CompiledModel& model) {
    auto boot = runtime::bootstrap(model);
    if (mode == Mode::Tts) boot.config.global_clock = 0;
    return boot;
}

} // namespace tactor::semantics
