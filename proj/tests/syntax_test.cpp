#include "doctest.h"

#include <random>

#include "support.hpp"
#include "tree_gen.hpp"
#include "tactor/syntax/lexer.hpp"
#include "tactor/syntax/parser.hpp"

using namespace tactor::syntax;

namespace {

std::vector<TokenKind> kinds(std::string_view text) {
    auto r = tokenize(text);
    REQUIRE(r.ok());
    std::vector<TokenKind> out;
    for (const auto& t : r.tokens) out.push_back(t.kind);
    return out;
}

std::string first_error(std::string_view text) {
    auto r = parse(text);
    REQUIRE_FALSE(r.ok());
    REQUIRE(!r.diagnostics.empty());
    return r.diagnostics.front().message;
}

// Line/column pair lies inside `text`, counting the position just past the
// last character of each line.
bool inside(const std::string& text, int line, int column) {
    std::vector<std::size_t> lengths{0};
    for (char c : text) {
        if (c == '\n') lengths.push_back(0);
        else ++lengths.back();
    }
    if (line < 1 || line > static_cast<int>(lengths.size())) return false;
    return column >= 1 && column <= static_cast<int>(lengths[line - 1]) + 1;
}

} // namespace

TEST_CASE("tokenize: delay statement") {
    CHECK(kinds("delay(5);") == std::vector<TokenKind>{TokenKind::KwDelay, TokenKind::LParen, TokenKind::IntLiteral,
                                                       TokenKind::RParen, TokenKind::Semicolon});
    CHECK(tokenize("delay(5);").tokens[2].int_value == 5);
}

TEST_CASE("tokenize: empty input") {
    auto r = tokenize("");
    CHECK(r.ok());
    CHECK(r.tokens.empty());
}

TEST_CASE("tokenize: deadline clause") {
    CHECK(kinds("deadline(10)") ==
          std::vector<TokenKind>{TokenKind::KwDeadline, TokenKind::LParen, TokenKind::IntLiteral, TokenKind::RParen});
}

TEST_CASE("tokenize: every keyword") {
    const char* words[] = {"reactiveclass", "knownrebecs", "statevars", "msgsrv", "main",    "self",
                           "after",         "deadline",    "delay",     "if",     "else",    "while",
                           "for",           "int",         "boolean",   "byte",   "true",    "false"};
    for (const char* w : words) {
        auto r = tokenize(w);
        REQUIRE(r.tokens.size() == 1);
        CHECK_MESSAGE(r.tokens[0].kind != TokenKind::Identifier, w);
        CHECK(keyword_kind(w).has_value());
    }
    CHECK_FALSE(keyword_kind("Actor1").has_value());
    CHECK(kinds("mainx") == std::vector<TokenKind>{TokenKind::Identifier});
}

TEST_CASE("tokenize: comments are skipped and positions tracked") {
    auto r = tokenize("// line\n/* block\n comment */ x\n  42");
    REQUIRE(r.ok());
    REQUIRE(r.tokens.size() == 2);
    CHECK(r.tokens[0].text == "x");
    CHECK(r.tokens[0].span.line == 3);
    CHECK(r.tokens[0].span.column == 13);
    CHECK(r.tokens[1].span.line == 4);
    CHECK(r.tokens[1].span.column == 3);
    CHECK(r.tokens[1].span.length == 2);
}

TEST_CASE("tokenize: operators") {
    CHECK(kinds("<= >= == != && || ! % < > = + - * /") ==
          std::vector<TokenKind>{TokenKind::LessEq, TokenKind::GreaterEq, TokenKind::EqualEqual, TokenKind::BangEqual,
                                 TokenKind::AndAnd, TokenKind::OrOr, TokenKind::Bang, TokenKind::Percent, TokenKind::Less,
                                 TokenKind::Greater, TokenKind::Assign, TokenKind::Plus, TokenKind::Minus,
                                 TokenKind::Star, TokenKind::Slash});
}

TEST_CASE("tokenize: lexical errors") {
    SUBCASE("illegal character") {
        auto r = tokenize("x = 1;\n  y @ 2;");
        REQUIRE_FALSE(r.ok());
        CHECK(r.error->line == 2);
        CHECK(r.error->column == 5);
        CHECK(r.error->message.find("illegal character '@'") != std::string::npos);
    }
    SUBCASE("single ampersand") { CHECK_FALSE(tokenize("a & b").ok()); }
    SUBCASE("unterminated comment") {
        auto r = tokenize("x /* never closed");
        REQUIRE_FALSE(r.ok());
        CHECK(r.error->message.find("unterminated") != std::string::npos);
        CHECK(r.error->column == 3);
    }
    SUBCASE("integer overflow") { CHECK_FALSE(tokenize("99999999999999999999").ok()); }
    SUBCASE("largest integer") {
        auto r = tokenize("9223372036854775807");
        REQUIRE(r.ok());
        CHECK(r.tokens[0].int_value == INT64_MAX);
    }
}

TEST_CASE("parse: Listing 1") {
    auto r = parse(support::model_text("listing1"));
    REQUIRE(r.ok());
    const auto& t = *r.tree;
    REQUIRE(t.classes.size() == 2);
    CHECK(t.classes[0].name == "Actor1");
    CHECK(t.classes[0].queue_capacity == 3);
    CHECK(t.classes[0].msgsrvs.size() == 3);
    CHECK(t.classes[0].constructor.has_value());
    CHECK(t.classes[0].known_rebecs.empty());
    CHECK(t.classes[1].name == "Actor2");
    CHECK(t.classes[1].msgsrvs.size() == 1);
    CHECK(t.classes[1].constructor.has_value());
    REQUIRE(t.classes[1].known_rebecs.size() == 1);
    CHECK(t.classes[1].known_rebecs[0].class_name == "Actor1");
    CHECK(t.classes[1].known_rebecs[0].field_name == "a1");
    REQUIRE(t.main.instances.size() == 2);
    CHECK(t.main.instances[1].bindings == std::vector<std::string>{"actor1"});

    const auto& job1 = t.classes[0].msgsrvs[0];
    REQUIRE(job1.body.size() == 2);
    const Stmt& send = job1.body[0];
    CHECK(send.kind == StmtKind::Send);
    CHECK(send.receiver == "self");
    CHECK(send.server == "job2");
    REQUIRE(send.after.has_value());
    CHECK(send.after->int_value == 1);
    REQUIRE(send.deadline.has_value());
    CHECK(send.deadline->int_value == 10);
    CHECK(job1.body[1].kind == StmtKind::Delay);
    CHECK(job1.body[1].value->int_value == 5);
    CHECK(job1.span.line == 5);
}

TEST_CASE("parse: minimal model") {
    auto r = parse("main { }");
    REQUIRE(r.ok());
    CHECK(r.tree->classes.empty());
    CHECK(r.tree->main.instances.empty());
}

TEST_CASE("parse: errors") {
    CHECK(first_error("reactiveclass A(0) { } main { }").find("queue capacity must be >= 1") != std::string::npos);
    CHECK(first_error("reactiveclass A(1) { }").find("missing 'main' block") != std::string::npos);
    CHECK(first_error("").find("missing 'main' block") != std::string::npos);
    CHECK(first_error("reactiveclass A(1) { msgsrv m() { } msgsrv m() { } } main { }").find("duplicate message server") !=
          std::string::npos);
    CHECK(first_error("reactiveclass A(1) { B() { } } main { }").find("constructor") != std::string::npos);
    CHECK(first_error("main { } main { }").find("expected end of input") != std::string::npos);
    CHECK(first_error("reactiveclass A(1) { msgsrv m() { self.m() deadline(2) after(1); } } main { }").size() > 0);
    CHECK(first_error("reactiveclass A(1) { msgsrv m() { x = ; } } main { }").find("expected") != std::string::npos);
    CHECK(first_error("reactiveclass A(1) { msgsrv m() { a.b.c(); } } main { }").size() > 0);
}

TEST_CASE("parse: unexpected token carries position and hint") {
    auto r = parse("reactiveclass A(1) {\n  msgsrv m() {\n    delay 5;\n  }\n}\nmain { }");
    REQUIRE_FALSE(r.ok());
    CHECK(r.diagnostics[0].line == 3);
    CHECK(r.diagnostics[0].column == 11);
    CHECK(r.diagnostics[0].message == "unexpected '5', expected '('");
    CHECK(to_string(r.diagnostics[0]) == "3:11: unexpected '5', expected '('");
}

TEST_CASE("parse: expression precedence") {
    auto e = parse_expression("1 + 2 * 3 < 4 && !flag || x == -y % 2", false);
    REQUIRE(e.ok());
    CHECK(print(*e.expr) == "((((1 + (2 * 3)) < 4) && !(flag)) || (x == (-(y) % 2)))");
    CHECK_FALSE(parse_expression("a.b", false).ok());
    CHECK(parse_expression("a.b", true).ok());
    CHECK_FALSE(parse_expression("1 +", false).ok());
}

TEST_CASE("parse: statement forms") {
    auto r = parse(R"(
reactiveclass A(2) {
    statevars { int[3] arr; byte b; boolean f; }
    A(int k) { arr[0] = k; }
    msgsrv m(int p, boolean q) {
        int i = 0;
        for (int j = 0; j < 3; j = j + 1) arr[j] = p;
        while (i < 2) { i = i + 1; }
        if (q) { b = 1; } else f = false;
        { delay(p); }
        self.m(1, true) after(2);
    }
}
main { A a():(-4); }
)");
    REQUIRE(r.ok());
    const auto& body = r.tree->classes[0].msgsrvs[0].body;
    REQUIRE(body.size() == 6);
    CHECK(body[0].kind == StmtKind::LocalDecl);
    CHECK(body[1].kind == StmtKind::For);
    CHECK(body[1].init.size() == 1);
    CHECK(body[1].step.size() == 1);
    CHECK(body[2].kind == StmtKind::While);
    CHECK(body[3].kind == StmtKind::If);
    CHECK(body[3].has_else);
    CHECK(body[4].kind == StmtKind::Block);
    CHECK(body[5].kind == StmtKind::Send);
    CHECK(r.tree->classes[0].state_vars[0].type.array_length == 3);
    CHECK(r.tree->main.instances[0].ctor_args[0].kind == ExprKind::Unary);
}

TEST_CASE("property: print/parse round trip on random trees") {
    for (unsigned seed = 1; seed <= 300; ++seed) {
        support::TreeGen gen(seed);
        SyntaxTree t = gen.tree();
        std::string text = print(t);
        auto back = parse(text);
        REQUIRE_MESSAGE(back.ok(), "seed " << seed << ": " << to_string(back.diagnostics.front()) << "\n" << text);
        CHECK_MESSAGE(*back.tree == t, "seed " << seed);
        CHECK(print(*back.tree) == text);
    }
}

TEST_CASE("property: round trip and determinism on model files") {
    for (const auto& path : support::corpus_with_listing1()) {
        std::string text = support::read_text(path);
        auto a = parse(text);
        auto b = parse(text);
        REQUIRE_MESSAGE(a.ok(), path.string());
        CHECK(*a.tree == *b.tree);
        auto again = parse(print(*a.tree));
        REQUIRE(again.ok());
        CHECK(*again.tree == *a.tree);
    }
}

TEST_CASE("property: diagnostics stay inside the input") {
    std::mt19937 rng(7);
    const std::string junk = "{}();.,:=+-*/%!<>&|@#$ \n0123abc";
    for (const auto& path : support::corpus_with_listing1()) {
        std::string base = support::read_text(path);
        for (int trial = 0; trial < 60; ++trial) {
            std::string text = base;
            int edits = std::uniform_int_distribution<int>(1, 4)(rng);
            for (int e = 0; e < edits; ++e) {
                std::size_t at = std::uniform_int_distribution<std::size_t>(0, text.size())(rng);
                int op = std::uniform_int_distribution<int>(0, 2)(rng);
                char c = junk[std::uniform_int_distribution<std::size_t>(0, junk.size() - 1)(rng)];
                if (op == 0 && at < text.size()) text.erase(at, 1);
                else if (op == 1) text.insert(at, 1, c);
                else text = text.substr(0, at);
            }
            auto r = parse(text);
            if (r.ok()) continue;
            for (const auto& d : r.diagnostics) {
                CHECK_MESSAGE(inside(text, d.line, d.column), path.filename().string() << " " << to_string(d));
            }
        }
    }
}
