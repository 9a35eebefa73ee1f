#include "doctest.h"

#include "oracle/reference.hpp"
#include "support.hpp"
#include "tactor/checker/checker.hpp"

using namespace tactor;
using semantics::Mode;

namespace {

std::set<oracle::EventTrace> named(const model::CompiledModel& m, const std::set<checker::EventSequence>& traces) {
    std::set<oracle::EventTrace> out;
    for (const auto& seq : traces) {
        oracle::EventTrace t;
        for (const auto& e : seq) t.push_back({m.instances[e.actor].name, m.class_of(e.actor).servers[e.server].name, e.serve});
        out.insert(t);
    }
    return out;
}

oracle::Semantics to_oracle(Mode mode) {
    switch (mode) {
    case Mode::Ftts: return oracle::Semantics::Ftts;
    case Mode::RelaxedFtts: return oracle::Semantics::RelaxedFtts;
    case Mode::Tts: return oracle::Semantics::Tts;
    }
    return oracle::Semantics::Ftts;
}

std::set<oracle::Miss> implementation_misses(const model::CompiledModel& m, const semantics::StateSpace& s) {
    std::set<oracle::Miss> out;
    for (const auto& v : checker::collect_violations(s)) {
        if (v.kind != checker::VerdictKind::DeadlineMiss) continue;
        const auto& l = v.witness->labels.back();
        out.insert({m.instances[l.actor].name, m.class_of(l.actor).servers[l.server].name, l.serve, l.deadline});
    }
    return out;
}

} // namespace

TEST_CASE("oracle: Listing 1 reference traces") {
    auto tree = syntax::parse(support::model_text("listing1")).tree;
    auto f = oracle::enumerate(*tree, oracle::Semantics::Ftts, 5);
    REQUIRE(f.traces.size() == 1);
    CHECK(*f.traces.begin() == oracle::EventTrace{{"actor1", "job1", 0},
                                                  {"actor2", "job4", 2},
                                                  {"actor1", "job2", 5},
                                                  {"actor1", "job3", 5},
                                                  {"actor1", "job3", 6}});
    auto r = oracle::enumerate(*tree, oracle::Semantics::RelaxedFtts, 2);
    CHECK(*r.traces.begin() == oracle::EventTrace{{"actor1", "job1", 0}, {"actor1", "job2", 5}});
    CHECK(oracle::enumerate(*tree, oracle::Semantics::Tts, 5).traces == f.traces);
}

TEST_CASE("oracle: implementation trace sets match the reference simulator") {
    const std::size_t depth = 6;
    for (const auto& path : support::corpus_with_listing1()) {
        std::string text = support::read_text(path);
        auto m = support::compile(text);
        auto tree = syntax::parse(text).tree;
        auto reference_ftts = oracle::enumerate(*tree, oracle::Semantics::Ftts, depth);
        for (Mode mode : {Mode::Ftts, Mode::RelaxedFtts, Mode::Tts}) {
            CAPTURE(path.filename().string());
            CAPTURE(semantics::to_string(mode));
            auto s = semantics::explore(m, mode);
            REQUIRE_FALSE(s.bounded);
            auto impl = named(m, checker::event_traces(s, depth));
            auto reference = oracle::enumerate(*tree, to_oracle(mode), depth);
            CHECK(impl == reference.traces);
            if (mode == Mode::Tts) CHECK(impl == reference_ftts.traces);
            bool overflow = std::any_of(s.violations.begin(), s.violations.end(),
                                        [](const auto& v) { return v.kind == runtime::ViolationKind::QueueOverflow; });
            if (!overflow) CHECK(reference.overflows == 0);
        }
    }
}

TEST_CASE("oracle: deadline misses agree") {
    for (const char* name : {"listing1-deadline1", "listing1"}) {
        auto text = support::model_text(name);
        auto m = support::compile(text);
        auto tree = syntax::parse(text).tree;
        for (Mode mode : {Mode::Ftts, Mode::RelaxedFtts, Mode::Tts}) {
            CAPTURE(name);
            CAPTURE(semantics::to_string(mode));
            auto reference = oracle::enumerate(*tree, to_oracle(mode), 8);
            CHECK(implementation_misses(m, semantics::explore(m, mode)) == reference.misses);
        }
    }
    auto text = support::read_text(support::source_dir() / "tests" / "corpus" / "deadlines.rebeca");
    auto m = support::compile(text);
    auto tree = syntax::parse(text).tree;
    for (Mode mode : {Mode::Ftts, Mode::RelaxedFtts, Mode::Tts}) {
        auto reference = oracle::enumerate(*tree, to_oracle(mode), 8);
        CHECK_FALSE(reference.misses.empty());
        CHECK(implementation_misses(m, semantics::explore(m, mode)) == reference.misses);
    }
}

TEST_CASE("oracle: rFTTS served tags are non-decreasing on every path") {
    for (const auto& path : support::corpus_with_listing1()) {
        auto tree = syntax::parse(support::read_text(path)).tree;
        auto reference = oracle::enumerate(*tree, oracle::Semantics::RelaxedFtts, 8);
        for (const auto& p : reference.paths) {
            for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i - 1].tag <= p[i].tag);
        }
    }
}
