#include "tactor/syntax/lexer.hpp"

#include <array>
#include <cctype>
#include <limits>
#include <utility>

namespace tactor::syntax {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 18> kKeywords{{
    {"reactiveclass", TokenKind::KwReactiveClass},
    {"knownrebecs", TokenKind::KwKnownRebecs},
    {"statevars", TokenKind::KwStateVars},
    {"msgsrv", TokenKind::KwMsgSrv},
    {"main", TokenKind::KwMain},
    {"self", TokenKind::KwSelf},
    {"after", TokenKind::KwAfter},
    {"deadline", TokenKind::KwDeadline},
    {"delay", TokenKind::KwDelay},
    {"if", TokenKind::KwIf},
    {"else", TokenKind::KwElse},
    {"while", TokenKind::KwWhile},
    {"for", TokenKind::KwFor},
    {"int", TokenKind::KwInt},
    {"boolean", TokenKind::KwBoolean},
    {"byte", TokenKind::KwByte},
    {"true", TokenKind::KwTrue},
    {"false", TokenKind::KwFalse},
}};

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }
    std::size_t pos() const { return pos_; }
    int line() const { return line_; }
    int column() const { return column_; }
    std::string_view slice(std::size_t from) const { return src_.substr(from, pos_ - from); }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

} // namespace

std::optional<TokenKind> keyword_kind(std::string_view word) {
    for (const auto& [text, kind] : kKeywords) {
        if (text == word) return kind;
    }
    return std::nullopt;
}

LexResult tokenize(std::string_view source) {
    LexResult result;
    Scanner sc(source);

    auto fail = [&](int line, int column, std::string message) {
        result.error = Diagnostic{line, column, std::move(message)};
        return result;
    };

    while (!sc.at_end()) {
        char c = sc.peek();
        if (std::isspace(static_cast<unsigned char>(c))) {
            sc.advance();
            continue;
        }
        if (c == '/' && sc.peek(1) == '/') {
            while (!sc.at_end() && sc.peek() != '\n') sc.advance();
            continue;
        }
        if (c == '/' && sc.peek(1) == '*') {
            int line = sc.line();
            int column = sc.column();
            sc.advance();
            sc.advance();
            bool closed = false;
            while (!sc.at_end()) {
                if (sc.peek() == '*' && sc.peek(1) == '/') {
                    sc.advance();
                    sc.advance();
                    closed = true;
                    break;
                }
                sc.advance();
            }
            if (!closed) return fail(line, column, "unterminated block comment");
            continue;
        }

        Token tok;
        tok.span.line = sc.line();
        tok.span.column = sc.column();
        std::size_t start = sc.pos();

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (std::isalnum(static_cast<unsigned char>(sc.peek())) || sc.peek() == '_') {
                sc.advance();
            }
            tok.text = std::string(sc.slice(start));
            tok.kind = keyword_kind(tok.text).value_or(TokenKind::Identifier);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t value = 0;
            bool overflow = false;
            while (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
                int digit = sc.advance() - '0';
                if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10) overflow = true;
                else value = value * 10 + digit;
            }
            if (overflow) return fail(tok.span.line, tok.span.column, "integer literal out of range");
            tok.kind = TokenKind::IntLiteral;
            tok.int_value = value;
            tok.text = std::string(sc.slice(start));
        } else {
            auto two = [&](char second, TokenKind both, TokenKind one) {
                sc.advance();
                if (sc.peek() == second) {
                    sc.advance();
                    return both;
                }
                return one;
            };
            switch (c) {
            case '(': sc.advance(); tok.kind = TokenKind::LParen; break;
            case ')': sc.advance(); tok.kind = TokenKind::RParen; break;
            case '{': sc.advance(); tok.kind = TokenKind::LBrace; break;
            case '}': sc.advance(); tok.kind = TokenKind::RBrace; break;
            case '[': sc.advance(); tok.kind = TokenKind::LBracket; break;
            case ']': sc.advance(); tok.kind = TokenKind::RBracket; break;
            case ';': sc.advance(); tok.kind = TokenKind::Semicolon; break;
            case ',': sc.advance(); tok.kind = TokenKind::Comma; break;
            case '.': sc.advance(); tok.kind = TokenKind::Dot; break;
            case ':': sc.advance(); tok.kind = TokenKind::Colon; break;
            case '+': sc.advance(); tok.kind = TokenKind::Plus; break;
            case '-': sc.advance(); tok.kind = TokenKind::Minus; break;
            case '*': sc.advance(); tok.kind = TokenKind::Star; break;
            case '/': sc.advance(); tok.kind = TokenKind::Slash; break;
            case '%': sc.advance(); tok.kind = TokenKind::Percent; break;
            case '=': tok.kind = two('=', TokenKind::EqualEqual, TokenKind::Assign); break;
            case '!': tok.kind = two('=', TokenKind::BangEqual, TokenKind::Bang); break;
            case '<': tok.kind = two('=', TokenKind::LessEq, TokenKind::Less); break;
            case '>': tok.kind = two('=', TokenKind::GreaterEq, TokenKind::Greater); break;
            case '&':
                if (sc.peek(1) != '&') return fail(tok.span.line, tok.span.column, "illegal character '&'");
                sc.advance();
                sc.advance();
                tok.kind = TokenKind::AndAnd;
                break;
            case '|':
                if (sc.peek(1) != '|') return fail(tok.span.line, tok.span.column, "illegal character '|'");
                sc.advance();
                sc.advance();
                tok.kind = TokenKind::OrOr;
                break;
            default: {
                std::string shown = std::isprint(static_cast<unsigned char>(c))
                                        ? std::string(1, c)
                                        : "\\x" + std::to_string(static_cast<unsigned char>(c));
                return fail(tok.span.line, tok.span.column, "illegal character '" + shown + "'");
            }
            }
            tok.text = std::string(sc.slice(start));
        }
        tok.span.length = static_cast<int>(sc.pos() - start);
        result.tokens.push_back(std::move(tok));
    }
    return result;
}

std::string_view describe(TokenKind kind) {
    switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntLiteral: return "integer literal";
    case TokenKind::KwReactiveClass: return "'reactiveclass'";
    case TokenKind::KwKnownRebecs: return "'knownrebecs'";
    case TokenKind::KwStateVars: return "'statevars'";
    case TokenKind::KwMsgSrv: return "'msgsrv'";
    case TokenKind::KwMain: return "'main'";
    case TokenKind::KwSelf: return "'self'";
    case TokenKind::KwAfter: return "'after'";
    case TokenKind::KwDeadline: return "'deadline'";
    case TokenKind::KwDelay: return "'delay'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwWhile: return "'while'";
    case TokenKind::KwFor: return "'for'";
    case TokenKind::KwInt: return "'int'";
    case TokenKind::KwBoolean: return "'boolean'";
    case TokenKind::KwByte: return "'byte'";
    case TokenKind::KwTrue: return "'true'";
    case TokenKind::KwFalse: return "'false'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Assign: return "'='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Percent: return "'%'";
    case TokenKind::Bang: return "'!'";
    case TokenKind::Less: return "'<'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::Greater: return "'>'";
    case TokenKind::GreaterEq: return "'>='";
    case TokenKind::EqualEqual: return "'=='";
    case TokenKind::BangEqual: return "'!='";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::OrOr: return "'||'";
    case TokenKind::EndOfFile: return "end of input";
    }
    return "?";
}

std::string to_string(const Diagnostic& diag) {
    return std::to_string(diag.line) + ":" + std::to_string(diag.column) + ": " + diag.message;
}

} // namespace tactor::syntax
