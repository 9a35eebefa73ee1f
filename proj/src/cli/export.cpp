#include "tactor/cli/export.hpp"

#include <set>

#include "json.hpp"
#include "tactor/runtime/value.hpp"

namespace tactor::cli {

using nlohmann::json;
using semantics::LabelKind;

namespace {

std::string signed_delta(semantics::Time d) { return (d >= 0 ? "+" : "") + std::to_string(d); }

std::string server_name(const model::CompiledModel& model, int actor, int server) {
    return model.class_of(actor).servers[server].name;
}

json value_json(const runtime::Value& v) {
    struct Visitor {
        json operator()(std::int64_t i) const { return i; }
        json operator()(bool b) const { return b; }
        json operator()(runtime::ByteVal b) const { return b.value; }
        json operator()(const runtime::ArrayVal& a) const {
            json arr = json::array();
            for (auto item : a.items) {
                if (a.element == model::ScalarType::Bool) arr.push_back(item != 0);
                else arr.push_back(item);
            }
            return arr;
        }
    };
    return std::visit(Visitor{}, v);
}

json time_or_null(const std::optional<semantics::Time>& t) { return t ? json(*t) : json(nullptr); }

} // namespace

std::string label_text(const model::CompiledModel& model, const semantics::TransitionLabel& label) {
    std::string text;
    switch (label.kind) {
    case LabelKind::Event:
        text = model.instances[label.actor].name + "." + server_name(model, label.actor, label.server) + " @" +
               std::to_string(label.serve);
        break;
    case LabelKind::TimeProgress: text = "time +" + std::to_string(label.delta); break;
    case LabelKind::Tau: text = "\xCF\x84"; break;
    }
    if (label.shift) text += " (shift " + signed_delta(*label.shift) + ")";
    return text;
}

void export_dot(const model::CompiledModel& model, const semantics::StateSpace& space, std::ostream& out) {
    std::set<semantics::StateId> flagged;
    for (const auto& v : space.violations) {
        flagged.insert(v.transition ? space.transitions[*v.transition].to : v.state);
    }
    out << "digraph statespace {\n";
    out << "  node [shape=ellipse];\n";
    for (semantics::StateId s = 0; s < space.states.size(); ++s) {
        out << "  S" << s << " [label=\"S" << s << "\"";
        if (s == space.initial) out << ", style=bold";
        if (flagged.count(s)) out << ", shape=octagon, color=red";
        out << "];\n";
    }
    for (const auto& t : space.transitions) {
        out << "  S" << t.from << " -> S" << t.to << " [label=\"" << label_text(model, t.label) << "\"";
        if (t.label.shift) out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
}

std::string export_json(const model::CompiledModel& model, const semantics::StateSpace& space) {
    const bool timed = space.mode == semantics::Mode::Tts;
    json doc;
    doc["version"] = kJsonSchemaVersion;
    doc["mode"] = semantics::to_string(space.mode);
    doc["initial"] = space.initial;
    doc["bounded"] = space.bounded;

    json states = json::array();
    for (semantics::StateId s = 0; s < space.states.size(); ++s) {
        const auto& rec = space.states[s];
        json state;
        state["id"] = s;
        state["base"] = rec.base;
        state["global"] = time_or_null(rec.config.global_clock);
        json actors = json::array();
        for (std::size_t i = 0; i < rec.config.actors.size(); ++i) {
            const auto& a = rec.config.actors[i];
            const auto& cls = model.class_of(static_cast<int>(i));
            json actor;
            actor["name"] = model.instances[i].name;
            actor["class"] = cls.name;
            actor["clock"] = timed ? json(nullptr) : json(a.clock);
            json vars = json::object();
            for (const auto& slot : cls.state_vars) vars[slot.name] = value_json(runtime::read_slot(slot, a.vars));
            actor["vars"] = std::move(vars);
            json bag = json::array();
            for (const auto& m : a.bag) {
                json entry;
                entry["msg"] = cls.servers[m.server].name;
                entry["from"] = model.instances[m.sender].name;
                entry["tag"] = m.tag;
                entry["sent"] = m.sent_at;
                entry["deadline"] = runtime::is_finite(m.deadline) ? json(m.deadline) : json("inf");
                entry["args"] = m.args;
                bag.push_back(std::move(entry));
            }
            actor["bag"] = std::move(bag);
            if (a.suspended) {
                json susp;
                susp["wake"] = a.suspended->wake;
                susp["msg"] = cls.servers[a.suspended->server].name;
                susp["pc"] = a.suspended->pc;
                actor["suspended"] = std::move(susp);
            } else {
                actor["suspended"] = nullptr;
            }
            actors.push_back(std::move(actor));
        }
        state["actors"] = std::move(actors);
        states.push_back(std::move(state));
    }
    doc["states"] = std::move(states);

    json transitions = json::array();
    for (const auto& t : space.transitions) {
        json tr;
        tr["from"] = t.from;
        tr["to"] = t.to;
        switch (t.label.kind) {
        case LabelKind::Event:
            tr["kind"] = "event";
            tr["actor"] = model.instances[t.label.actor].name;
            tr["msg"] = server_name(model, t.label.actor, t.label.server);
            tr["serve"] = t.label.serve;
            tr["tag"] = t.label.tag;
            tr["deadline"] = runtime::is_finite(t.label.deadline) ? json(t.label.deadline) : json("inf");
            break;
        case LabelKind::TimeProgress:
            tr["kind"] = "time";
            tr["delta"] = t.label.delta;
            break;
        case LabelKind::Tau:
            tr["kind"] = "tau";
            tr["actor"] = model.instances[t.label.actor].name;
            tr["msg"] = server_name(model, t.label.actor, t.label.server);
            break;
        }
        if (t.label.shift) tr["shift"] = *t.label.shift;
        transitions.push_back(std::move(tr));
    }
    doc["transitions"] = std::move(transitions);

    json violations = json::array();
    for (const auto& v : space.violations) {
        json entry;
        entry["kind"] = runtime::to_string(v.kind);
        if (v.transition) entry["transition"] = *v.transition;
        else entry["state"] = v.state;
        entry["detail"] = v.detail;
        violations.push_back(std::move(entry));
    }
    doc["violations"] = std::move(violations);
    return doc.dump(2) + "\n";
}

} // namespace tactor::cli
