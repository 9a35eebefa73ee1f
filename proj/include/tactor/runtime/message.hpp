#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tactor::runtime {

/// Discrete time in integer units.
using Time = std::int64_t;

/// Deadline of a message sent without a `deadline` clause.
inline constexpr Time kNoDeadline = std::numeric_limits<Time>::max();

inline bool is_finite(Time t) { return t != kNoDeadline; }

std::string format_deadline(Time deadline);

struct Message {
    int sender = -1;
    int receiver = -1;
    int server = -1;
    std::vector<std::int64_t> args;
    Time tag = 0;
    Time deadline = kNoDeadline;
    Time sent_at = 0;
    std::uint64_t seq = 0;

    friend bool operator==(const Message&, const Message&) = default;
};

/// Strict total order used to pick the top of a bag: least time tag first;
/// equal tags are served in send order (send time, then sender, then the
/// global arrival counter, which orders the sends of one sender).
bool bag_before(const Message& a, const Message& b);

/// Pending messages of one actor, kept sorted by `bag_before`.
class MessageBag {
public:
    using const_iterator = std::vector<Message>::const_iterator;

    bool empty() const { return messages_.empty(); }
    std::size_t size() const { return messages_.size(); }
    const_iterator begin() const { return messages_.begin(); }
    const_iterator end() const { return messages_.end(); }
    const Message& operator[](std::size_t i) const { return messages_[i]; }

    void insert(Message msg);
    Message pop_min();

    /// Applies `fn` to every message in place. `fn` must preserve the order.
    template <typename Fn>
    void for_each_mut(Fn&& fn) {
        for (auto& m : messages_) fn(m);
    }

    friend bool operator==(const MessageBag&, const MessageBag&) = default;

private:
    std::vector<Message> messages_;
};

struct OverflowViolation {
    int receiver = -1;
    Message message;
};

/// Inserts `msg` unless the bag already holds `capacity` messages.
std::optional<OverflowViolation> enqueue(MessageBag& bag, Message msg, std::int64_t capacity);

/// Top of the bag, or nullopt when empty.
std::optional<Message> bag_min(const MessageBag& bag);

} // namespace tactor::runtime
