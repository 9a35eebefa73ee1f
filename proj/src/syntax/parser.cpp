#include "tactor/syntax/parser.hpp"

#include <set>
#include <stdexcept>
#include <utility>

#include "tactor/syntax/lexer.hpp"

namespace tactor::syntax {

namespace {

struct ParseError : std::runtime_error {
    Diagnostic diag;
    explicit ParseError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
};

Span end_of_input(std::string_view source) {
    Span span;
    for (char c : source) {
        if (c == '\n') {
            ++span.line;
            span.column = 1;
        } else {
            ++span.column;
        }
    }
    return span;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, Span eof, bool allow_qualified)
        : tokens_(std::move(tokens)), allow_qualified_(allow_qualified) {
        Token end;
        end.kind = TokenKind::EndOfFile;
        end.span = eof;
        tokens_.push_back(end);
    }

    SyntaxTree parse_model() {
        SyntaxTree tree;
        while (check(TokenKind::KwReactiveClass)) tree.classes.push_back(parse_class());
        if (!check(TokenKind::KwMain)) {
            if (check(TokenKind::EndOfFile)) error_here("missing 'main' block");
            error_expected("'reactiveclass' or 'main'");
        }
        tree.main = parse_main();
        expect(TokenKind::EndOfFile);
        return tree;
    }

    Expr parse_standalone_expr() {
        Expr e = parse_expr();
        expect(TokenKind::EndOfFile);
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool check(TokenKind kind, std::size_t ahead = 0) const { return peek(ahead).kind == kind; }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool match(TokenKind kind) {
        if (!check(kind)) return false;
        advance();
        return true;
    }

    [[noreturn]] void error_at(const Span& span, std::string message) const {
        throw ParseError(Diagnostic{span.line, span.column, std::move(message)});
    }
    [[noreturn]] void error_here(std::string message) const { error_at(peek().span, std::move(message)); }
    [[noreturn]] void error_expected(std::string_view what) const {
        std::string found = check(TokenKind::EndOfFile) ? std::string("end of input") : "'" + peek().text + "'";
        error_here("unexpected " + found + ", expected " + std::string(what));
    }
    const Token& expect(TokenKind kind) {
        if (!check(kind)) error_expected(describe(kind));
        return advance();
    }

    static Span join(const Span& from, const Span& to) {
        Span s = from;
        if (to.line == from.line) s.length = to.column + to.length - from.column;
        return s;
    }

    ReactiveClassDecl parse_class() {
        ReactiveClassDecl cls;
        Span start = expect(TokenKind::KwReactiveClass).span;
        cls.name = expect(TokenKind::Identifier).text;
        expect(TokenKind::LParen);
        const Token& cap = expect(TokenKind::IntLiteral);
        if (cap.int_value < 1) error_at(cap.span, "queue capacity must be >= 1");
        cls.queue_capacity = cap.int_value;
        expect(TokenKind::RParen);
        expect(TokenKind::LBrace);

        if (match(TokenKind::KwKnownRebecs)) {
            expect(TokenKind::LBrace);
            while (check(TokenKind::Identifier)) {
                KnownRebecDecl kr;
                kr.span = peek().span;
                kr.class_name = advance().text;
                kr.field_name = expect(TokenKind::Identifier).text;
                expect(TokenKind::Semicolon);
                cls.known_rebecs.push_back(std::move(kr));
            }
            expect(TokenKind::RBrace);
        }
        if (match(TokenKind::KwStateVars)) {
            expect(TokenKind::LBrace);
            while (is_type_start()) {
                StateVarDecl sv;
                sv.span = peek().span;
                sv.type = parse_type();
                sv.name = expect(TokenKind::Identifier).text;
                expect(TokenKind::Semicolon);
                cls.state_vars.push_back(std::move(sv));
            }
            expect(TokenKind::RBrace);
        }
        if (check(TokenKind::Identifier)) {
            const Token& name = advance();
            if (name.text != cls.name) {
                error_at(name.span, "constructor name '" + name.text + "' must match class name '" + cls.name + "'");
            }
            MsgSrvDecl ctor;
            ctor.name = name.text;
            ctor.span = name.span;
            ctor.params = parse_params();
            ctor.body = parse_block();
            cls.constructor = std::move(ctor);
        }
        std::set<std::string> seen;
        while (check(TokenKind::KwMsgSrv)) {
            MsgSrvDecl m;
            m.span = advance().span;
            const Token& name = expect(TokenKind::Identifier);
            if (!seen.insert(name.text).second) {
                error_at(name.span, "duplicate message server '" + name.text + "' in class '" + cls.name + "'");
            }
            m.name = name.text;
            m.params = parse_params();
            m.body = parse_block();
            cls.msgsrvs.push_back(std::move(m));
        }
        if (!check(TokenKind::RBrace)) error_expected("'msgsrv' or '}'");
        cls.span = join(start, advance().span);
        return cls;
    }

    bool is_type_start() const {
        return check(TokenKind::KwInt) || check(TokenKind::KwBoolean) || check(TokenKind::KwByte);
    }

    TypeName parse_type() {
        TypeName t;
        if (match(TokenKind::KwInt)) t.scalar = ScalarTypeName::Int;
        else if (match(TokenKind::KwBoolean)) t.scalar = ScalarTypeName::Boolean;
        else if (match(TokenKind::KwByte)) t.scalar = ScalarTypeName::Byte;
        else error_expected("type");
        if (match(TokenKind::LBracket)) {
            const Token& len = expect(TokenKind::IntLiteral);
            if (len.int_value < 1) error_at(len.span, "array length must be >= 1");
            t.array_length = len.int_value;
            expect(TokenKind::RBracket);
        }
        return t;
    }

    std::vector<Param> parse_params() {
        std::vector<Param> params;
        expect(TokenKind::LParen);
        if (!check(TokenKind::RParen)) {
            do {
                Param p;
                p.span = peek().span;
                p.type = parse_type();
                p.name = expect(TokenKind::Identifier).text;
                params.push_back(std::move(p));
            } while (match(TokenKind::Comma));
        }
        expect(TokenKind::RParen);
        return params;
    }

    std::vector<Stmt> parse_block() {
        std::vector<Stmt> stmts;
        expect(TokenKind::LBrace);
        while (!check(TokenKind::RBrace)) {
            if (check(TokenKind::EndOfFile)) error_expected("'}'");
            stmts.push_back(parse_stmt());
        }
        advance();
        return stmts;
    }

    Stmt parse_stmt() {
        Stmt s;
        s.span = peek().span;
        switch (peek().kind) {
        case TokenKind::LBrace:
            s.kind = StmtKind::Block;
            s.body = parse_block();
            return s;
        case TokenKind::KwDelay:
            advance();
            s.kind = StmtKind::Delay;
            expect(TokenKind::LParen);
            s.value = parse_expr();
            expect(TokenKind::RParen);
            expect(TokenKind::Semicolon);
            return s;
        case TokenKind::KwIf:
            advance();
            s.kind = StmtKind::If;
            expect(TokenKind::LParen);
            s.condition = parse_expr();
            expect(TokenKind::RParen);
            s.body.push_back(parse_stmt());
            if (match(TokenKind::KwElse)) {
                s.has_else = true;
                s.else_body.push_back(parse_stmt());
            }
            return s;
        case TokenKind::KwWhile:
            advance();
            s.kind = StmtKind::While;
            expect(TokenKind::LParen);
            s.condition = parse_expr();
            expect(TokenKind::RParen);
            s.body.push_back(parse_stmt());
            return s;
        case TokenKind::KwFor:
            advance();
            s.kind = StmtKind::For;
            expect(TokenKind::LParen);
            if (!check(TokenKind::Semicolon)) {
                s.init.push_back(is_type_start() ? parse_local_decl() : parse_assign());
            }
            expect(TokenKind::Semicolon);
            s.condition = parse_expr();
            expect(TokenKind::Semicolon);
            if (!check(TokenKind::RParen)) s.step.push_back(parse_assign());
            expect(TokenKind::RParen);
            s.body.push_back(parse_stmt());
            return s;
        case TokenKind::KwInt:
        case TokenKind::KwBoolean:
        case TokenKind::KwByte:
            s = parse_local_decl();
            expect(TokenKind::Semicolon);
            return s;
        case TokenKind::KwSelf:
            return parse_send();
        case TokenKind::Identifier:
            if (check(TokenKind::Dot, 1)) return parse_send();
            s = parse_assign();
            expect(TokenKind::Semicolon);
            return s;
        default:
            error_expected("statement");
        }
    }

    Stmt parse_local_decl() {
        Stmt s;
        s.span = peek().span;
        s.kind = StmtKind::LocalDecl;
        s.local_type = parse_type();
        s.name = expect(TokenKind::Identifier).text;
        if (match(TokenKind::Assign)) s.value = parse_expr();
        return s;
    }

    Stmt parse_assign() {
        Stmt s;
        s.span = peek().span;
        s.kind = StmtKind::Assign;
        const Token& name = expect(TokenKind::Identifier);
        Expr target;
        target.kind = ExprKind::VarRef;
        target.name = name.text;
        target.span = name.span;
        if (match(TokenKind::LBracket)) {
            Expr index;
            index.kind = ExprKind::Index;
            index.span = name.span;
            index.operands.push_back(std::move(target));
            index.operands.push_back(parse_expr());
            expect(TokenKind::RBracket);
            target = std::move(index);
        }
        s.target = std::move(target);
        expect(TokenKind::Assign);
        s.value = parse_expr();
        return s;
    }

    Stmt parse_send() {
        Stmt s;
        s.span = peek().span;
        s.kind = StmtKind::Send;
        if (match(TokenKind::KwSelf)) s.receiver = "self";
        else s.receiver = expect(TokenKind::Identifier).text;
        expect(TokenKind::Dot);
        s.server = expect(TokenKind::Identifier).text;
        expect(TokenKind::LParen);
        if (!check(TokenKind::RParen)) {
            do {
                s.args.push_back(parse_expr());
            } while (match(TokenKind::Comma));
        }
        expect(TokenKind::RParen);
        if (match(TokenKind::KwAfter)) {
            expect(TokenKind::LParen);
            s.after = parse_expr();
            expect(TokenKind::RParen);
        }
        if (match(TokenKind::KwDeadline)) {
            expect(TokenKind::LParen);
            s.deadline = parse_expr();
            expect(TokenKind::RParen);
        }
        if (check(TokenKind::KwAfter)) error_here("'after' must precede 'deadline' and appear at most once");
        if (check(TokenKind::KwDeadline)) error_here("'deadline' may appear at most once");
        expect(TokenKind::Semicolon);
        return s;
    }

    MainDecl parse_main() {
        MainDecl m;
        m.span = expect(TokenKind::KwMain).span;
        expect(TokenKind::LBrace);
        while (check(TokenKind::Identifier)) {
            InstanceDecl inst;
            inst.span = peek().span;
            inst.class_name = advance().text;
            inst.instance_name = expect(TokenKind::Identifier).text;
            expect(TokenKind::LParen);
            if (!check(TokenKind::RParen)) {
                do {
                    const Token& b = expect(TokenKind::Identifier);
                    inst.bindings.push_back(b.text);
                    inst.binding_spans.push_back(b.span);
                } while (match(TokenKind::Comma));
            }
            expect(TokenKind::RParen);
            expect(TokenKind::Colon);
            expect(TokenKind::LParen);
            if (!check(TokenKind::RParen)) {
                do {
                    inst.ctor_args.push_back(parse_expr());
                } while (match(TokenKind::Comma));
            }
            expect(TokenKind::RParen);
            expect(TokenKind::Semicolon);
            m.instances.push_back(std::move(inst));
        }
        expect(TokenKind::RBrace);
        return m;
    }

    // Precedence climbing, loosest first.
    Expr parse_expr() { return parse_or(); }

    Expr binary(BinaryOp op, Expr lhs, Expr rhs, const Span& span) {
        Expr e;
        e.kind = ExprKind::Binary;
        e.binary_op = op;
        e.span = span;
        e.operands.push_back(std::move(lhs));
        e.operands.push_back(std::move(rhs));
        return e;
    }

    Expr parse_or() {
        Expr lhs = parse_and();
        while (check(TokenKind::OrOr)) {
            Span span = advance().span;
            lhs = binary(BinaryOp::Or, std::move(lhs), parse_and(), span);
        }
        return lhs;
    }
    Expr parse_and() {
        Expr lhs = parse_equality();
        while (check(TokenKind::AndAnd)) {
            Span span = advance().span;
            lhs = binary(BinaryOp::And, std::move(lhs), parse_equality(), span);
        }
        return lhs;
    }
    Expr parse_equality() {
        Expr lhs = parse_relational();
        for (;;) {
            BinaryOp op;
            if (check(TokenKind::EqualEqual)) op = BinaryOp::Equal;
            else if (check(TokenKind::BangEqual)) op = BinaryOp::NotEqual;
            else return lhs;
            Span span = advance().span;
            lhs = binary(op, std::move(lhs), parse_relational(), span);
        }
    }
    Expr parse_relational() {
        Expr lhs = parse_additive();
        for (;;) {
            BinaryOp op;
            if (check(TokenKind::Less)) op = BinaryOp::Less;
            else if (check(TokenKind::LessEq)) op = BinaryOp::LessEq;
            else if (check(TokenKind::Greater)) op = BinaryOp::Greater;
            else if (check(TokenKind::GreaterEq)) op = BinaryOp::GreaterEq;
            else return lhs;
            Span span = advance().span;
            lhs = binary(op, std::move(lhs), parse_additive(), span);
        }
    }
    Expr parse_additive() {
        Expr lhs = parse_multiplicative();
        for (;;) {
            BinaryOp op;
            if (check(TokenKind::Plus)) op = BinaryOp::Add;
            else if (check(TokenKind::Minus)) op = BinaryOp::Sub;
            else return lhs;
            Span span = advance().span;
            lhs = binary(op, std::move(lhs), parse_multiplicative(), span);
        }
    }
    Expr parse_multiplicative() {
        Expr lhs = parse_unary();
        for (;;) {
            BinaryOp op;
            if (check(TokenKind::Star)) op = BinaryOp::Mul;
            else if (check(TokenKind::Slash)) op = BinaryOp::Div;
            else if (check(TokenKind::Percent)) op = BinaryOp::Mod;
            else return lhs;
            Span span = advance().span;
            lhs = binary(op, std::move(lhs), parse_unary(), span);
        }
    }
    Expr parse_unary() {
        if (check(TokenKind::Minus) || check(TokenKind::Bang)) {
            Expr e;
            e.kind = ExprKind::Unary;
            e.unary_op = check(TokenKind::Minus) ? UnaryOp::Negate : UnaryOp::Not;
            e.span = advance().span;
            e.operands.push_back(parse_unary());
            return e;
        }
        return parse_primary();
    }
    Expr parse_primary() {
        Expr e;
        e.span = peek().span;
        switch (peek().kind) {
        case TokenKind::IntLiteral:
            e.kind = ExprKind::IntLiteral;
            e.int_value = advance().int_value;
            return e;
        case TokenKind::KwTrue:
        case TokenKind::KwFalse:
            e.kind = ExprKind::BoolLiteral;
            e.bool_value = advance().kind == TokenKind::KwTrue;
            return e;
        case TokenKind::LParen: {
            advance();
            Expr inner = parse_expr();
            expect(TokenKind::RParen);
            return inner;
        }
        case TokenKind::Identifier: {
            e.kind = ExprKind::VarRef;
            e.name = advance().text;
            if (allow_qualified_ && check(TokenKind::Dot)) {
                advance();
                e.kind = ExprKind::Qualified;
                e.qualifier = std::move(e.name);
                e.name = expect(TokenKind::Identifier).text;
            }
            if (match(TokenKind::LBracket)) {
                Expr index;
                index.kind = ExprKind::Index;
                index.span = e.span;
                index.operands.push_back(std::move(e));
                index.operands.push_back(parse_expr());
                expect(TokenKind::RBracket);
                return index;
            }
            return e;
        }
        default:
            error_expected("expression");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool allow_qualified_;
};

} // namespace

ParseResult parse(std::string_view source) {
    ParseResult result;
    LexResult lexed = tokenize(source);
    if (!lexed.ok()) {
        result.diagnostics.push_back(*lexed.error);
        return result;
    }
    try {
        Parser parser(std::move(lexed.tokens), end_of_input(source), false);
        result.tree = parser.parse_model();
    } catch (const ParseError& e) {
        result.diagnostics.push_back(e.diag);
    }
    return result;
}

ExprParseResult parse_expression(std::string_view source, bool allow_qualified) {
    ExprParseResult result;
    LexResult lexed = tokenize(source);
    if (!lexed.ok()) {
        result.diagnostics.push_back(*lexed.error);
        return result;
    }
    try {
        Parser parser(std::move(lexed.tokens), end_of_input(source), allow_qualified);
        result.expr = parser.parse_standalone_expr();
    } catch (const ParseError& e) {
        result.diagnostics.push_back(e.diag);
    }
    return result;
}

} // namespace tactor::syntax
