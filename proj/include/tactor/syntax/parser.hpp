#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tactor/syntax/ast.hpp"

namespace tactor::syntax {

struct ParseResult {
    std::optional<SyntaxTree> tree;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return tree.has_value(); }
};

/// Parses a complete model. Stops at the first error.
ParseResult parse(std::string_view source);

struct ExprParseResult {
    std::optional<Expr> expr;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return expr.has_value(); }
};

/// Parses a standalone expression that must span the whole input. With
/// `allow_qualified`, `instance.var` references are accepted (assertions).
ExprParseResult parse_expression(std::string_view source, bool allow_qualified);

/// Canonical source rendering; parse(print(t)) is structurally equal to t.
std::string print(const SyntaxTree& tree);
std::string print(const Expr& expr);

} // namespace tactor::syntax
