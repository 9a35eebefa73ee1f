#include "tactor/checker/checker.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "tactor/model/analyzer.hpp"
#include "tactor/syntax/parser.hpp"

namespace tactor::checker {

using runtime::ViolationKind;
using semantics::LabelKind;

const char* to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::DeadlockFree: return "DeadlockFree";
    case VerdictKind::Deadlock: return "Deadlock";
    case VerdictKind::QueueOverflow: return "QueueOverflow";
    case VerdictKind::DeadlineMiss: return "DeadlineMiss";
    case VerdictKind::RuntimeError: return "RuntimeError";
    case VerdictKind::AssertionViolation: return "AssertionViolation";
    case VerdictKind::Pass: return "Pass";
    }
    return "?";
}

namespace {

TransitionLabel absolute(TransitionLabel label, Time offset) {
    if (label.kind == LabelKind::Event) {
        label.tag += offset;
        label.serve += offset;
        if (runtime::is_finite(label.deadline)) label.deadline += offset;
    }
    return label;
}

} // namespace

std::optional<Trace> shortest_trace(const StateSpace& space, StateId target) {
    if (target >= space.states.size()) return std::nullopt;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(space.states.size(), kNone);
    std::vector<bool> seen(space.states.size(), false);
    std::deque<StateId> queue{space.initial};
    seen[space.initial] = true;
    while (!queue.empty() && !seen[target]) {
        StateId s = queue.front();
        queue.pop_front();
        for (std::size_t t : space.outgoing[s]) {
            StateId to = space.transitions[t].to;
            if (seen[to]) continue;
            seen[to] = true;
            via[to] = t;
            queue.push_back(to);
        }
    }
    if (!seen[target]) return std::nullopt;

    std::vector<std::size_t> path;
    for (StateId s = target; s != space.initial; s = space.transitions[via[s]].from) path.push_back(via[s]);
    std::reverse(path.begin(), path.end());

    Trace trace;
    trace.states.push_back(space.initial);
    Time offset = 0;
    for (std::size_t t : path) {
        const auto& tr = space.transitions[t];
        trace.labels.push_back(absolute(tr.label, offset));
        trace.states.push_back(tr.to);
        offset += tr.label.shift.value_or(0);
    }
    trace.final_offset = offset;
    return trace;
}

Verdict check_deadlock(const StateSpace& space) {
    Verdict v;
    v.bounded = space.bounded;
    v.kind = VerdictKind::DeadlockFree;
    for (StateId s = 0; s < space.states.size(); ++s) {
        if (space.states[s].expanded && space.outgoing[s].empty()) {
            v.kind = VerdictKind::Deadlock;
            v.witness = shortest_trace(space, s);
            v.detail = "state S" + std::to_string(s) + " has no outgoing transition";
            break;
        }
    }
    return v;
}

std::vector<Verdict> collect_violations(const StateSpace& space) {
    std::vector<Verdict> out;
    for (const auto& rec : space.violations) {
        Verdict v;
        v.bounded = space.bounded;
        switch (rec.kind) {
        case ViolationKind::DeadlineMiss: v.kind = VerdictKind::DeadlineMiss; break;
        case ViolationKind::QueueOverflow: v.kind = VerdictKind::QueueOverflow; break;
        case ViolationKind::RuntimeError: v.kind = VerdictKind::RuntimeError; break;
        }
        v.detail = rec.detail;
        auto trace = shortest_trace(space, rec.state);
        if (trace && rec.label) {
            TransitionLabel label = absolute(*rec.label, trace->final_offset);
            if (rec.transition) {
                const auto& tr = space.transitions[*rec.transition];
                trace->labels.push_back(absolute(tr.label, trace->final_offset));
                trace->states.push_back(tr.to);
                trace->final_offset += tr.label.shift.value_or(0);
            } else {
                trace->aborted_move = label;
            }
        }
        v.witness = std::move(trace);
        out.push_back(std::move(v));
    }
    return out;
}

AssertionParseResult parse_assertions(std::string_view text, const model::CompiledModel& model, semantics::Mode mode) {
    AssertionParseResult result;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        result.diagnostics.push_back("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first);
        if (line.rfind("assert", 0) != 0 || line.size() < 7 || (line[6] != ' ' && line[6] != '\t')) {
            fail("expected 'assert NAME : EXPR'");
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            fail("expected ':' after assertion name");
            continue;
        }
        std::string name = line.substr(6, colon - 6);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
            fail("malformed assertion name");
            continue;
        }
        std::string source = line.substr(colon + 1);
        auto parsed = syntax::parse_expression(source, true);
        if (!parsed.ok()) {
            fail("assertion " + name + ": " + parsed.diagnostics.front().message);
            continue;
        }
        auto compiled = model::compile_global_predicate(model, *parsed.expr);
        if (!compiled.ok()) {
            fail("assertion " + name + ": " + compiled.diagnostics.front().message);
            continue;
        }
        Assertion a;
        a.name = name;
        a.source = source.substr(source.find_first_not_of(" \t"));
        a.predicate = std::move(*compiled.expr);
        a.instances = model::referenced_instances(a.predicate);
        if (mode != semantics::Mode::Tts && a.instances.size() > 1) {
            fail("assertion " + name + " references " + std::to_string(a.instances.size()) +
                 " instances; under floating-time semantics local clocks differ per actor, so only "
                 "single-instance assertions are accepted");
            continue;
        }
        result.assertions.push_back(std::move(a));
    }
    return result;
}

std::vector<Verdict> check_assertions(const StateSpace& space, const std::vector<Assertion>& assertions) {
    std::vector<Verdict> out;
    for (const auto& a : assertions) {
        Verdict v;
        v.kind = VerdictKind::Pass;
        v.bounded = space.bounded;
        v.name = a.name;
        for (StateId s = 0; s < space.states.size(); ++s) {
            runtime::Env env{{}, {}, &space.states[s].config};
            bool holds = false;
            std::string error;
            try {
                holds = runtime::eval_raw(a.predicate, env) != 0;
            } catch (const runtime::RuntimeViolation& e) {
                error = e.what();
            }
            if (!holds) {
                v.kind = VerdictKind::AssertionViolation;
                v.detail = error.empty() ? a.name + ": " + a.source + " is false in S" + std::to_string(s)
                                         : a.name + ": evaluation failed in S" + std::to_string(s) + ": " + error;
                v.witness = shortest_trace(space, s);
                break;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

class TraceCollector {
public:
    TraceCollector(const StateSpace& space, std::size_t depth) : space_(space), depth_(depth) {}

    std::set<EventSequence> run() {
        EventSequence seq;
        visit(space_.initial, 0, seq, 0);
        return std::move(out_);
    }

private:
    void visit(StateId s, Time offset, EventSequence& seq, std::size_t silent) {
        if (seq.size() == depth_ || !space_.states[s].expanded || space_.outgoing[s].empty() ||
            silent > space_.states.size()) {
            out_.insert(seq);
            return;
        }
        for (std::size_t t : space_.outgoing[s]) {
            const auto& tr = space_.transitions[t];
            Time next = offset + tr.label.shift.value_or(0);
            if (tr.label.kind == LabelKind::Event) {
                seq.push_back(EventKey{tr.label.actor, tr.label.server, tr.label.serve + offset});
                visit(tr.to, next, seq, 0);
                seq.pop_back();
            } else {
                visit(tr.to, next, seq, silent + 1);
            }
        }
    }

    const StateSpace& space_;
    std::size_t depth_;
    std::set<EventSequence> out_;
};

} // namespace

std::set<EventSequence> event_traces(const StateSpace& space, std::size_t depth) {
    return TraceCollector(space, depth).run();
}

Comparison compare_event_behavior(const StateSpace& a, const StateSpace& b, std::size_t depth) {
    Comparison result;
    for (std::size_t k = 0; k <= depth; ++k) {
        auto ta = event_traces(a, k);
        auto tb = event_traces(b, k);
        if (ta == tb) continue;
        std::vector<EventSequence> only_a, only_b;
        std::set_difference(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(only_a));
        std::set_difference(tb.begin(), tb.end(), ta.begin(), ta.end(), std::back_inserter(only_b));
        result.equal = false;
        auto pick = [](const std::vector<EventSequence>& v) {
            return *std::min_element(v.begin(), v.end(), [](const EventSequence& x, const EventSequence& y) {
                return x.size() != y.size() ? x.size() < y.size() : x < y;
            });
        };
        if (!only_a.empty() && (only_b.empty() || pick(only_a).size() <= pick(only_b).size())) {
            result.counterexample = pick(only_a);
            result.only_in_first = true;
        } else {
            result.counterexample = pick(only_b);
            result.only_in_first = false;
        }
        return result;
    }
    return result;
}

std::optional<semantics::GlobalConfiguration> replay(const model::CompiledModel& model, semantics::Mode mode,
                                                     const Trace& trace) {
    auto boot = semantics::initial_configuration(mode, model);
    semantics::GlobalConfiguration config = std::move(boot.config);
    semantics::lift_idle_clocks(mode, config);
    for (const auto& label : trace.labels) {
        auto moves = semantics::candidates(mode, config);
        auto match = std::find_if(moves.begin(), moves.end(), [&](const semantics::Choice& c) {
            switch (label.kind) {
            case LabelKind::Event:
                return c.kind == semantics::ChoiceKind::Event && c.actor == label.actor && c.message.server == label.server;
            case LabelKind::Tau: return c.kind == semantics::ChoiceKind::Resume && c.actor == label.actor;
            case LabelKind::TimeProgress:
                return c.kind == semantics::ChoiceKind::TimeProgress && c.delta == label.delta;
            }
            return false;
        });
        if (match == moves.end()) return std::nullopt;
        auto result = semantics::step(mode, model, config, *match);
        if (result.aborted) return std::nullopt;
        if (label.kind == LabelKind::Event && (result.label.serve != label.serve || result.label.tag != label.tag)) {
            return std::nullopt;
        }
        config = std::move(result.next);
        semantics::lift_idle_clocks(mode, config);
    }
    return config;
}

} // namespace tactor::checker
