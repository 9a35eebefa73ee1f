#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tactor/model/compiled_model.hpp"

namespace tactor::runtime {

struct ByteVal {
    std::uint8_t value = 0;
    friend bool operator==(const ByteVal&, const ByteVal&) = default;
};

struct ArrayVal {
    model::ScalarType element = model::ScalarType::Int;
    std::vector<std::int64_t> items;
    friend bool operator==(const ArrayVal&, const ArrayVal&) = default;
};

using Value = std::variant<std::int64_t, bool, ByteVal, ArrayVal>;

/// Reads a variable out of its slot storage.
Value read_slot(const model::VarSlot& slot, std::span<const std::int64_t> storage);

/// Scalar value of the given static type, from its 64-bit slot encoding.
Value scalar_value(model::ScalarType type, std::int64_t raw);

std::string to_string(const Value& v);

} // namespace tactor::runtime
