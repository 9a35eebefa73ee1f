#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tactor/syntax/ast.hpp"

namespace tactor::syntax {

enum class TokenKind {
    Identifier,
    IntLiteral,
    // keywords
    KwReactiveClass, KwKnownRebecs, KwStateVars, KwMsgSrv, KwMain, KwSelf,
    KwAfter, KwDeadline, KwDelay, KwIf, KwElse, KwWhile, KwFor,
    KwInt, KwBoolean, KwByte, KwTrue, KwFalse,
    // punctuation
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Semicolon, Comma, Dot, Colon,
    // operators
    Assign, Plus, Minus, Star, Slash, Percent, Bang,
    Less, LessEq, Greater, GreaterEq, EqualEqual, BangEqual, AndAnd, OrOr,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;
    std::int64_t int_value = 0;
    Span span;
};

struct LexResult {
    std::vector<Token> tokens; // never includes the EndOfFile marker
    std::optional<Diagnostic> error;

    bool ok() const { return !error.has_value(); }
};

LexResult tokenize(std::string_view source);

/// Human-readable spelling used in "expected ..." hints.
std::string_view describe(TokenKind kind);

std::optional<TokenKind> keyword_kind(std::string_view word);

} // namespace tactor::syntax
