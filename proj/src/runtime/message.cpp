#include "tactor/runtime/message.hpp"

#include <algorithm>
#include <tuple>

namespace tactor::runtime {

std::string format_deadline(Time deadline) { return is_finite(deadline) ? std::to_string(deadline) : "inf"; }

bool bag_before(const Message& a, const Message& b) {
    return std::tie(a.tag, a.sent_at, a.sender, a.seq) < std::tie(b.tag, b.sent_at, b.sender, b.seq);
}

void MessageBag::insert(Message msg) {
    auto pos = std::upper_bound(messages_.begin(), messages_.end(), msg, bag_before);
    messages_.insert(pos, std::move(msg));
}

Message MessageBag::pop_min() {
    Message front = std::move(messages_.front());
    messages_.erase(messages_.begin());
    return front;
}

std::optional<OverflowViolation> enqueue(MessageBag& bag, Message msg, std::int64_t capacity) {
    if (static_cast<std::int64_t>(bag.size()) >= capacity) {
        int receiver = msg.receiver;
        return OverflowViolation{receiver, std::move(msg)};
    }
    bag.insert(std::move(msg));
    return std::nullopt;
}

std::optional<Message> bag_min(const MessageBag& bag) {
    if (bag.empty()) return std::nullopt;
    return bag[0];
}

} // namespace tactor::runtime
