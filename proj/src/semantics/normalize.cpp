#include "tactor/semantics/normalize.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace tactor::semantics {

using runtime::is_finite;
using runtime::kNoDeadline;

namespace {

constexpr std::int64_t kInfinityWord = std::numeric_limits<std::int64_t>::max();

class Writer {
public:
    void put(std::int64_t v) {
        char buf[sizeof v];
        std::memcpy(buf, &v, sizeof v);
        out_.append(buf, sizeof v);
    }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(const std::string& in) : in_(in) {}
    std::int64_t get() {
        if (pos_ + sizeof(std::int64_t) > in_.size()) throw std::invalid_argument("truncated state key");
        std::int64_t v;
        std::memcpy(&v, in_.data() + pos_, sizeof v);
        pos_ += sizeof v;
        return v;
    }
    bool done() const { return pos_ == in_.size(); }

private:
    const std::string& in_;
    std::size_t pos_ = 0;
};

template <typename Fn>
void for_each_time(Mode mode, GlobalConfiguration& config, Fn&& fn) {
    if (config.global_clock) fn(*config.global_clock);
    for (auto& a : config.actors) {
        if (mode != Mode::Tts) fn(a.clock);
        a.bag.for_each_mut([&](runtime::Message& m) {
            fn(m.tag);
            fn(m.sent_at);
            if (is_finite(m.deadline)) fn(m.deadline);
        });
        if (a.suspended) fn(a.suspended->wake);
    }
}

Time least_time(Mode mode, const GlobalConfiguration& config) {
    Time base = std::numeric_limits<Time>::max();
    auto see = [&base](Time t) { base = std::min(base, t); };
    if (config.global_clock) see(*config.global_clock);
    for (const auto& a : config.actors) {
        if (mode != Mode::Tts) see(a.clock);
        for (const auto& m : a.bag) {
            see(m.tag);
            see(m.sent_at);
            if (is_finite(m.deadline)) see(m.deadline);
        }
        if (a.suspended) see(a.suspended->wake);
    }
    return base == std::numeric_limits<Time>::max() ? 0 : base;
}

} // namespace

GlobalConfiguration shift_times(Mode mode, GlobalConfiguration config, Time delta) {
    // Adding a constant to every time value keeps bag order intact.
    for_each_time(mode, config, [delta](Time& t) { t += delta; });
    return config;
}

NormalizedState normalize(Mode mode, const GlobalConfiguration& config) {
    Time base = least_time(mode, config);

    Writer w;
    w.put(static_cast<std::int64_t>(mode));
    w.put(config.global_clock ? 1 : 0);
    if (config.global_clock) w.put(*config.global_clock - base);
    w.put(static_cast<std::int64_t>(config.actors.size()));
    for (const auto& a : config.actors) {
        w.put(mode == Mode::Tts ? 0 : a.clock - base);
        w.put(static_cast<std::int64_t>(a.vars.size()));
        for (auto v : a.vars) w.put(v);
        w.put(static_cast<std::int64_t>(a.bag.size()));
        for (const auto& m : a.bag) {
            w.put(m.sender);
            w.put(m.server);
            w.put(static_cast<std::int64_t>(m.args.size()));
            for (auto v : m.args) w.put(v);
            w.put(m.tag - base);
            w.put(is_finite(m.deadline) ? m.deadline - base : kInfinityWord);
            w.put(m.sent_at - base);
        }
        w.put(a.suspended ? 1 : 0);
        if (a.suspended) {
            w.put(a.suspended->server);
            w.put(a.suspended->pc);
            w.put(static_cast<std::int64_t>(a.suspended->frame.size()));
            for (auto v : a.suspended->frame) w.put(v);
            w.put(a.suspended->wake - base);
        }
    }
    return NormalizedState{w.take(), base};
}

GlobalConfiguration denormalize(const std::string& key, Time base) {
    Reader r(key);
    GlobalConfiguration config;
    auto mode = static_cast<Mode>(r.get());
    if (r.get()) config.global_clock = r.get() + base;
    auto actors = r.get();
    for (std::int64_t i = 0; i < actors; ++i) {
        runtime::ActorConfiguration a;
        Time clock = r.get();
        a.clock = mode == Mode::Tts ? 0 : clock + base;
        auto vars = r.get();
        for (std::int64_t v = 0; v < vars; ++v) a.vars.push_back(r.get());
        auto bag = r.get();
        for (std::int64_t m = 0; m < bag; ++m) {
            runtime::Message msg;
            msg.receiver = static_cast<int>(i);
            msg.sender = static_cast<int>(r.get());
            msg.server = static_cast<int>(r.get());
            auto args = r.get();
            for (std::int64_t k = 0; k < args; ++k) msg.args.push_back(r.get());
            msg.tag = r.get() + base;
            auto deadline = r.get();
            msg.deadline = deadline == kInfinityWord ? kNoDeadline : deadline + base;
            msg.sent_at = r.get() + base;
            msg.seq = config.next_seq++;
            a.bag.insert(std::move(msg));
        }
        if (r.get()) {
            runtime::Continuation k;
            k.server = static_cast<int>(r.get());
            k.pc = static_cast<int>(r.get());
            auto frame = r.get();
            for (std::int64_t f = 0; f < frame; ++f) k.frame.push_back(r.get());
            k.wake = r.get() + base;
            a.suspended = std::move(k);
        }
        config.actors.push_back(std::move(a));
    }
    if (!r.done()) throw std::invalid_argument("trailing data in state key");
    return config;
}

} // namespace tactor::semantics
