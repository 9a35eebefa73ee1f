#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tactor::syntax {

/// Source position of a node: 1-based line and column, length in characters.
///
/// Spans never participate in structural equality of syntax trees, so two
/// trees parsed from differently formatted text compare equal when their
/// shape and contents agree.
struct Span {
    int line = 1;
    int column = 1;
    int length = 0;

    friend bool operator==(const Span&, const Span&) { return true; }
};

enum class UnaryOp { Negate, Not };

enum class BinaryOp {
    Add, Sub, Mul, Div, Mod,
    Less, LessEq, Greater, GreaterEq, Equal, NotEqual,
    And, Or,
};

enum class ExprKind {
    IntLiteral,
    BoolLiteral,
    VarRef,    // name
    Qualified, // qualifier.name, only produced by assertion parsing
    Index,     // operands[0] is the array reference, operands[1] the index
    Unary,
    Binary,
};

struct Expr {
    ExprKind kind = ExprKind::IntLiteral;
    std::int64_t int_value = 0;
    bool bool_value = false;
    std::string name;
    std::string qualifier;
    UnaryOp unary_op = UnaryOp::Negate;
    BinaryOp binary_op = BinaryOp::Add;
    std::vector<Expr> operands;
    Span span;

    friend bool operator==(const Expr&, const Expr&) = default;
};

enum class ScalarTypeName { Int, Boolean, Byte };

struct TypeName {
    ScalarTypeName scalar = ScalarTypeName::Int;
    std::optional<std::int64_t> array_length;

    friend bool operator==(const TypeName&, const TypeName&) = default;
};

struct Param {
    TypeName type;
    std::string name;
    Span span;

    friend bool operator==(const Param&, const Param&) = default;
};

enum class StmtKind { Send, Delay, Assign, LocalDecl, If, While, For, Block };

/// Statement node. Which fields are meaningful depends on `kind`:
///   Send      receiver, server, args, after, deadline
///   Delay     value
///   Assign    target (VarRef or Index expression), value
///   LocalDecl local_type, name, value (optional initializer)
///   If        condition, body (then branch), else_body
///   While     condition, body
///   For       init (0 or 1 stmt), condition, step (0 or 1 stmt), body
///   Block     body
struct Stmt {
    StmtKind kind = StmtKind::Block;
    std::string receiver;
    std::string server;
    std::vector<Expr> args;
    std::optional<Expr> after;
    std::optional<Expr> deadline;
    std::optional<Expr> target;
    std::optional<Expr> value;
    TypeName local_type;
    std::string name;
    std::optional<Expr> condition;
    std::vector<Stmt> init;
    std::vector<Stmt> step;
    std::vector<Stmt> body;
    std::vector<Stmt> else_body;
    bool has_else = false;
    Span span;

    friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct KnownRebecDecl {
    std::string class_name;
    std::string field_name;
    Span span;

    friend bool operator==(const KnownRebecDecl&, const KnownRebecDecl&) = default;
};

struct StateVarDecl {
    TypeName type;
    std::string name;
    Span span;

    friend bool operator==(const StateVarDecl&, const StateVarDecl&) = default;
};

struct MsgSrvDecl {
    std::string name;
    std::vector<Param> params;
    std::vector<Stmt> body;
    Span span;

    friend bool operator==(const MsgSrvDecl&, const MsgSrvDecl&) = default;
};

struct ReactiveClassDecl {
    std::string name;
    std::int64_t queue_capacity = 1;
    std::vector<KnownRebecDecl> known_rebecs;
    std::vector<StateVarDecl> state_vars;
    std::optional<MsgSrvDecl> constructor;
    std::vector<MsgSrvDecl> msgsrvs;
    Span span;

    friend bool operator==(const ReactiveClassDecl&, const ReactiveClassDecl&) = default;
};

struct InstanceDecl {
    std::string class_name;
    std::string instance_name;
    std::vector<std::string> bindings;
    std::vector<Span> binding_spans;
    std::vector<Expr> ctor_args;
    Span span;

    friend bool operator==(const InstanceDecl&, const InstanceDecl&) = default;
};

struct MainDecl {
    std::vector<InstanceDecl> instances;
    Span span;

    friend bool operator==(const MainDecl&, const MainDecl&) = default;
};

struct SyntaxTree {
    std::vector<ReactiveClassDecl> classes;
    MainDecl main;

    friend bool operator==(const SyntaxTree&, const SyntaxTree&) = default;
};

struct Diagnostic {
    int line = 1;
    int column = 1;
    std::string message;
};

std::string to_string(const Diagnostic& diag);

} // namespace tactor::syntax
