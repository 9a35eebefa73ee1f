#include "doctest.h"

#include "support.hpp"
#include "tactor/checker/checker.hpp"
#include "tactor/semantics/normalize.hpp"

using namespace tactor;
using namespace tactor::checker;
using semantics::Mode;

namespace {

const Mode kModes[] = {Mode::Ftts, Mode::RelaxedFtts, Mode::Tts};

EventKey ev(const model::CompiledModel& m, const std::string& actor, const std::string& server, Time serve) {
    int a = *m.find_instance(actor);
    return EventKey{a, *m.class_of(a).find_server(server), serve};
}

std::string without_job3_loop() {
    std::string src = support::model_text("listing1");
    auto pos = src.find("self.job3() after(1);");
    REQUIRE(pos != std::string::npos);
    src.erase(pos, std::string("self.job3() after(1);").size());
    return src;
}

const char* kCounter = R"(
reactiveclass Counter(2) {
    statevars { int x; }
    Counter() { self.inc(); }
    msgsrv inc() {
        if (x < 3) { x = x + 1; }
        self.inc() after(1);
    }
}
main { Counter c():(); }
)";

// Witness end check shared by every failing verdict.
void check_replay(const model::CompiledModel& m, const semantics::StateSpace& s, const Trace& w) {
    REQUIRE(w.states.size() == w.labels.size() + 1);
    CHECK(w.states.front() == s.initial);
    for (std::size_t i = 0; i < w.labels.size(); ++i) {
        bool connected = false;
        for (std::size_t t : s.outgoing[w.states[i]]) connected = connected || s.transitions[t].to == w.states[i + 1];
        CHECK(connected);
    }
    auto end = replay(m, s.mode, w);
    REQUIRE(end.has_value());
    auto expected = semantics::shift_times(s.mode, s.states[w.states.back()].config, w.final_offset);
    CHECK(runtime::same_up_to_seq(*end, expected));
}

} // namespace

TEST_CASE("check_deadlock") {
    SUBCASE("Listing 1 is deadlock free") {
        auto s = semantics::explore(support::listing1(), Mode::Ftts);
        auto v = check_deadlock(s);
        CHECK(v.kind == VerdictKind::DeadlockFree);
        CHECK_FALSE(v.failed());
        CHECK_FALSE(v.witness.has_value());
    }
    SUBCASE("removing the job3 loop deadlocks after job3") {
        auto m = support::compile(without_job3_loop());
        auto s = semantics::explore(m, Mode::Ftts);
        auto v = check_deadlock(s);
        CHECK(v.kind == VerdictKind::Deadlock);
        REQUIRE(v.witness.has_value());
        REQUIRE(v.witness->labels.size() == 4);
        const auto& last = v.witness->labels.back();
        CHECK(m.class_of(last.actor).servers[last.server].name == "job3");
        CHECK(last.serve == 5);
        check_replay(m, s, *v.witness);
    }
    SUBCASE("empty main deadlocks at the initial state") {
        auto s = semantics::explore(support::compile("main { }"), Mode::Ftts);
        auto v = check_deadlock(s);
        CHECK(v.kind == VerdictKind::Deadlock);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->labels.empty());
        CHECK(v.witness->states == std::vector<StateId>{s.initial});
    }
    SUBCASE("bounded flag is copied") {
        auto m = support::compile(kCounter);
        auto s = semantics::explore(m, Mode::Ftts, semantics::Limits{2, std::nullopt, std::nullopt});
        CHECK(check_deadlock(s).bounded);
    }
}

TEST_CASE("collect_violations") {
    SUBCASE("Listing 1 has none") {
        for (Mode mode : kModes) CHECK(collect_violations(semantics::explore(support::listing1(), mode)).empty());
    }
    SUBCASE("deadline(1) on job4") {
        auto m = support::compile(support::model_text("listing1-deadline1"));
        for (Mode mode : kModes) {
            auto s = semantics::explore(m, mode);
            auto vs = collect_violations(s);
            REQUIRE(vs.size() == 1);
            CHECK(vs[0].kind == VerdictKind::DeadlineMiss);
            REQUIRE(vs[0].witness.has_value());
            const auto& last = vs[0].witness->labels.back();
            CHECK(m.class_of(last.actor).servers[last.server].name == "job3");
            CHECK(last.serve == 5);
            CHECK(last.deadline == 3);
            check_replay(m, s, *vs[0].witness);
        }
    }
    SUBCASE("capacity-1 overflow") {
        auto m = support::compile(support::model_text("overflow"));
        auto vs = collect_violations(semantics::explore(m, Mode::Ftts));
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].kind == VerdictKind::QueueOverflow);
        REQUIRE(vs[0].witness.has_value());
        CHECK(vs[0].witness->labels.size() == 2);
    }
    SUBCASE("runtime error witness ends in the aborted move") {
        auto m = support::compile("reactiveclass A(2) { statevars { int z; } A() { self.m() after(3); } "
                                  "msgsrv m() { z = 1 / z; } } main { A a():(); }");
        auto vs = collect_violations(semantics::explore(m, Mode::Ftts));
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].kind == VerdictKind::RuntimeError);
        REQUIRE(vs[0].witness.has_value());
        CHECK(vs[0].witness->labels.empty());
        REQUIRE(vs[0].witness->aborted_move.has_value());
        CHECK(vs[0].witness->aborted_move->serve == 3);
        CHECK(vs[0].detail.find("division by zero") != std::string::npos);
    }
}

TEST_CASE("assertions") {
    auto m = support::compile(kCounter);
    SUBCASE("true passes") {
        auto parsed = parse_assertions("assert always : true\n", m, Mode::Ftts);
        REQUIRE(parsed.ok());
        auto vs = check_assertions(semantics::explore(m, Mode::Ftts), parsed.assertions);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].kind == VerdictKind::Pass);
        CHECK(vs[0].name == "always");
    }
    SUBCASE("counter exceeds 1") {
        auto parsed = parse_assertions("# bound\nassert small : c.x <= 1  # inline\n\nassert ok : c.x <= 3\n", m, Mode::Ftts);
        REQUIRE(parsed.ok());
        REQUIRE(parsed.assertions.size() == 2);
        CHECK(parsed.assertions[0].source == "c.x <= 1  ");
        auto s = semantics::explore(m, Mode::Ftts);
        auto vs = check_assertions(s, parsed.assertions);
        CHECK(vs[0].kind == VerdictKind::AssertionViolation);
        REQUIRE(vs[0].witness.has_value());
        CHECK(vs[0].witness->labels.size() == 2);
        const auto& end = s.states[vs[0].witness->states.back()].config;
        CHECK(end.actors[0].vars[0] == 2);
        check_replay(m, s, *vs[0].witness);
        CHECK(vs[1].kind == VerdictKind::Pass);
    }
    SUBCASE("multi-instance assertions only in timed mode") {
        auto two = support::compile("reactiveclass A(1) { statevars { int x; int y; } } main { A a():(); A b():(); }");
        auto rejected = parse_assertions("assert eq : a.x == b.y", two, Mode::Ftts);
        REQUIRE_FALSE(rejected.ok());
        CHECK(rejected.diagnostics[0].find("references 2 instances") != std::string::npos);
        CHECK_FALSE(parse_assertions("assert eq : a.x == b.y", two, Mode::RelaxedFtts).ok());
        auto tts = parse_assertions("assert eq : a.x == b.y", two, Mode::Tts);
        REQUIRE(tts.ok());
        auto vs = check_assertions(semantics::explore(two, Mode::Tts), tts.assertions);
        CHECK(vs[0].kind == VerdictKind::Pass);
    }
    SUBCASE("diagnostics") {
        CHECK(parse_assertions("assert bad : q.x == 1", m, Mode::Ftts).diagnostics[0].find("unknown instance 'q'") !=
              std::string::npos);
        CHECK(parse_assertions("assert bad : c.q == 1", m, Mode::Ftts).diagnostics[0].find("no state variable 'q'") !=
              std::string::npos);
        CHECK(parse_assertions("assert bad : c.x + 1", m, Mode::Ftts).diagnostics[0].find("boolean") != std::string::npos);
        CHECK(parse_assertions("check bad : true", m, Mode::Ftts).diagnostics[0].find("expected 'assert") !=
              std::string::npos);
        CHECK(parse_assertions("assert bad true", m, Mode::Ftts).diagnostics[0].find("':'") != std::string::npos);
        CHECK(parse_assertions("assert two words : true", m, Mode::Ftts).diagnostics[0].find("name") != std::string::npos);
        auto lines = parse_assertions("assert a : true\nassert b : c.x ==", m, Mode::Ftts);
        REQUIRE(lines.diagnostics.size() == 1);
        CHECK(lines.diagnostics[0].rfind("line 2: ", 0) == 0);
    }
    SUBCASE("evaluation error counts as a violation") {
        auto arr = support::compile("reactiveclass A(1) { statevars { int[2] v; int i; } A() { i = 5; } } main { A a():(); }");
        auto parsed = parse_assertions("assert idx : a.v[a.i] == 0", arr, Mode::Ftts);
        REQUIRE(parsed.ok());
        auto vs = check_assertions(semantics::explore(arr, Mode::Ftts), parsed.assertions);
        CHECK(vs[0].kind == VerdictKind::AssertionViolation);
        CHECK(vs[0].detail.find("evaluation failed") != std::string::npos);
    }
}

TEST_CASE("event_traces") {
    auto m = support::listing1();
    auto f = semantics::explore(m, Mode::Ftts);
    auto t = semantics::explore(m, Mode::Tts);
    const std::set<EventSequence> expected{
        {ev(m, "actor1", "job1", 0), ev(m, "actor2", "job4", 2), ev(m, "actor1", "job2", 5), ev(m, "actor1", "job3", 5)}};
    CHECK(event_traces(f, 4) == expected);
    CHECK(event_traces(t, 4) == expected);
    CHECK(event_traces(f, 0) == std::set<EventSequence>{{}});
    auto six = event_traces(f, 6);
    REQUIRE(six.size() == 1);
    CHECK(six.begin()->at(4) == ev(m, "actor1", "job3", 6));
    CHECK(six.begin()->at(5) == ev(m, "actor1", "job3", 7));
}

TEST_CASE("compare_event_behavior") {
    auto m = support::listing1();
    auto f = semantics::explore(m, Mode::Ftts);
    auto t = semantics::explore(m, Mode::Tts);
    auto r = semantics::explore(m, Mode::RelaxedFtts);
    CHECK(compare_event_behavior(f, t, 6).equal);
    CHECK(compare_event_behavior(f, f, 6).equal);
    CHECK(compare_event_behavior(r, r, 6).equal);
    auto c = compare_event_behavior(f, r, 2);
    REQUIRE_FALSE(c.equal);
    CHECK(c.only_in_first);
    CHECK(c.counterexample == EventSequence{ev(m, "actor1", "job1", 0), ev(m, "actor2", "job4", 2)});
    auto back = compare_event_behavior(r, f, 2);
    REQUIRE_FALSE(back.equal);
    CHECK(back.only_in_first);
    CHECK(back.counterexample == EventSequence{ev(m, "actor1", "job1", 0), ev(m, "actor1", "job2", 5)});
    CHECK(compare_event_behavior(f, r, 1).equal);
}

TEST_CASE("property: verdict invariants over the corpus") {
    for (const auto& path : support::corpus_with_listing1()) {
        auto m = support::compile(support::read_text(path));
        for (Mode mode : kModes) {
            CAPTURE(path.filename().string());
            CAPTURE(semantics::to_string(mode));
            auto s = semantics::explore(m, mode);

            bool stuck = false;
            for (StateId id = 0; id < s.states.size(); ++id) stuck = stuck || s.outgoing[id].empty();
            auto dl = check_deadlock(s);
            CHECK((dl.kind == VerdictKind::DeadlockFree) == !stuck);
            if (dl.failed()) {
                REQUIRE(dl.witness.has_value());
                check_replay(m, s, *dl.witness);
            }
            for (const auto& v : collect_violations(s)) {
                REQUIRE(v.witness.has_value());
                check_replay(m, s, *v.witness);
            }
            for (StateId id = 0; id < s.states.size(); ++id) {
                auto w = shortest_trace(s, id);
                REQUIRE(w.has_value());
                CHECK(w->states.back() == id);
                check_replay(m, s, *w);
            }

            for (std::size_t k = 1; k <= 6; ++k) {
                auto longer = event_traces(s, k);
                auto shorter = event_traces(s, k - 1);
                for (const auto& seq : longer) {
                    EventSequence prefix(seq.begin(), seq.begin() + std::min(seq.size(), k - 1));
                    CHECK(shorter.count(prefix) == 1);
                }
            }
        }
        auto f = semantics::explore(m, Mode::Ftts);
        auto r = semantics::explore(m, Mode::RelaxedFtts);
        auto t = semantics::explore(m, Mode::Tts);
        CHECK(compare_event_behavior(f, r, 4).equal == compare_event_behavior(r, f, 4).equal);
        CHECK(compare_event_behavior(f, t, 4).equal == compare_event_behavior(t, f, 4).equal);
    }
}
