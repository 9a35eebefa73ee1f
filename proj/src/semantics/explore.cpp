#include "tactor/semantics/explore.hpp"

#include <deque>
#include <unordered_map>

namespace tactor::semantics {

GlobalConfiguration concrete_target(const StateSpace& space, const Transition& t) {
    const auto& target = space.states[t.to].config;
    return t.label.shift ? shift_times(space.mode, target, *t.label.shift) : target;
}

StateSpace explore(const model::CompiledModel& model, Mode mode, const Limits& limits) {
    StateSpace space;
    space.mode = mode;
    std::unordered_map<std::string, StateId> index;
    std::deque<StateId> frontier;

    auto boot = initial_configuration(mode, model);
    lift_idle_clocks(mode, boot.config);
    auto norm = normalize(mode, boot.config);
    index.emplace(norm.key, 0);
    space.states.push_back(StateRecord{std::move(norm.key), std::move(boot.config), norm.base, 0, false});
    space.initial = 0;
    for (auto& v : boot.violations) {
        space.violations.push_back(ViolationRecord{v.kind, v.actor, 0, std::nullopt, std::nullopt, std::move(v.detail)});
    }
    frontier.push_back(0);

    bool stop = false;
    while (!frontier.empty() && !stop) {
        StateId id = frontier.front();
        frontier.pop_front();
        // Copy: space.states may reallocate while successors are added.
        const GlobalConfiguration source = space.states[id].config;
        const std::size_t depth = space.states[id].depth;
        auto moves = candidates(mode, source);
        if (moves.empty()) {
            space.states[id].expanded = true;
            continue;
        }
        if ((limits.max_depth && depth >= *limits.max_depth) ||
            (limits.max_time && space.states[id].base > *limits.max_time)) {
            space.bounded = true;
            continue;
        }
        bool complete = true;
        for (const auto& choice : moves) {
            StepResult result = step(mode, model, source, choice);
            if (result.aborted) {
                for (auto& v : result.violations) {
                    space.violations.push_back(
                        ViolationRecord{v.kind, v.actor, id, std::nullopt, result.label, std::move(v.detail)});
                }
                continue;
            }
            lift_idle_clocks(mode, result.next);
            auto succ = normalize(mode, result.next);
            StateId target;
            auto found = index.find(succ.key);
            if (found != index.end()) {
                target = found->second;
                Time delta = succ.base - space.states[target].base;
                if (delta != 0) result.label.shift = delta;
            } else {
                if (space.states.size() >= limits.max_states) {
                    space.bounded = true;
                    complete = false;
                    stop = true;
                    break;
                }
                target = space.states.size();
                index.emplace(succ.key, target);
                space.states.push_back(StateRecord{std::move(succ.key), std::move(result.next), succ.base, depth + 1, false});
                frontier.push_back(target);
            }
            std::size_t tindex = space.transitions.size();
            space.transitions.push_back(Transition{id, target, result.label});
            for (auto& v : result.violations) {
                space.violations.push_back(ViolationRecord{v.kind, v.actor, id, tindex, result.label, std::move(v.detail)});
            }
        }
        space.states[id].expanded = complete;
    }
    if (!frontier.empty()) space.bounded = true;

    space.outgoing.assign(space.states.size(), {});
    for (std::size_t t = 0; t < space.transitions.size(); ++t) space.outgoing[space.transitions[t].from].push_back(t);
    return space;
}

} // namespace tactor::semantics
