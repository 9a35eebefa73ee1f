#include <sstream>

#include "tactor/syntax/parser.hpp"

namespace tactor::syntax {

namespace {

const char* binary_spelling(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Less: return "<";
    case BinaryOp::LessEq: return "<=";
    case BinaryOp::Greater: return ">";
    case BinaryOp::GreaterEq: return ">=";
    case BinaryOp::Equal: return "==";
    case BinaryOp::NotEqual: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    }
    return "?";
}

void print_expr(std::ostream& os, const Expr& e) {
    switch (e.kind) {
    case ExprKind::IntLiteral: os << e.int_value; break;
    case ExprKind::BoolLiteral: os << (e.bool_value ? "true" : "false"); break;
    case ExprKind::VarRef: os << e.name; break;
    case ExprKind::Qualified: os << e.qualifier << '.' << e.name; break;
    case ExprKind::Index:
        print_expr(os, e.operands[0]);
        os << '[';
        print_expr(os, e.operands[1]);
        os << ']';
        break;
    case ExprKind::Unary:
        os << (e.unary_op == UnaryOp::Negate ? "-" : "!") << '(';
        print_expr(os, e.operands[0]);
        os << ')';
        break;
    case ExprKind::Binary:
        os << '(';
        print_expr(os, e.operands[0]);
        os << ' ' << binary_spelling(e.binary_op) << ' ';
        print_expr(os, e.operands[1]);
        os << ')';
        break;
    }
}

void print_type(std::ostream& os, const TypeName& t) {
    switch (t.scalar) {
    case ScalarTypeName::Int: os << "int"; break;
    case ScalarTypeName::Boolean: os << "boolean"; break;
    case ScalarTypeName::Byte: os << "byte"; break;
    }
    if (t.array_length) os << '[' << *t.array_length << ']';
}

void indent(std::ostream& os, int depth) {
    for (int i = 0; i < depth; ++i) os << "    ";
}

void print_stmt(std::ostream& os, const Stmt& s, int depth);

void print_block(std::ostream& os, const std::vector<Stmt>& body, int depth) {
    os << "{\n";
    for (const auto& s : body) print_stmt(os, s, depth + 1);
    indent(os, depth);
    os << "}";
}

// Statement without trailing ';' or newline (used inside for headers).
void print_simple(std::ostream& os, const Stmt& s) {
    if (s.kind == StmtKind::Assign) {
        print_expr(os, *s.target);
        os << " = ";
        print_expr(os, *s.value);
    } else {
        print_type(os, s.local_type);
        os << ' ' << s.name;
        if (s.value) {
            os << " = ";
            print_expr(os, *s.value);
        }
    }
}

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
    indent(os, depth);
    switch (s.kind) {
    case StmtKind::Send:
        os << s.receiver << '.' << s.server << '(';
        for (std::size_t i = 0; i < s.args.size(); ++i) {
            if (i) os << ", ";
            print_expr(os, s.args[i]);
        }
        os << ')';
        if (s.after) {
            os << " after(";
            print_expr(os, *s.after);
            os << ')';
        }
        if (s.deadline) {
            os << " deadline(";
            print_expr(os, *s.deadline);
            os << ')';
        }
        os << ";\n";
        break;
    case StmtKind::Delay:
        os << "delay(";
        print_expr(os, *s.value);
        os << ");\n";
        break;
    case StmtKind::Assign:
    case StmtKind::LocalDecl:
        print_simple(os, s);
        os << ";\n";
        break;
    case StmtKind::If:
        os << "if (";
        print_expr(os, *s.condition);
        os << ")\n";
        print_stmt(os, s.body[0], depth + 1);
        if (s.has_else) {
            indent(os, depth);
            os << "else\n";
            print_stmt(os, s.else_body[0], depth + 1);
        }
        break;
    case StmtKind::While:
        os << "while (";
        print_expr(os, *s.condition);
        os << ")\n";
        print_stmt(os, s.body[0], depth + 1);
        break;
    case StmtKind::For:
        os << "for (";
        if (!s.init.empty()) print_simple(os, s.init[0]);
        os << "; ";
        print_expr(os, *s.condition);
        os << "; ";
        if (!s.step.empty()) print_simple(os, s.step[0]);
        os << ")\n";
        print_stmt(os, s.body[0], depth + 1);
        break;
    case StmtKind::Block:
        print_block(os, s.body, depth);
        os << '\n';
        break;
    }
}

void print_server(std::ostream& os, const MsgSrvDecl& m, bool is_ctor) {
    os << "    " << (is_ctor ? "" : "msgsrv ") << m.name << '(';
    for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (i) os << ", ";
        print_type(os, m.params[i].type);
        os << ' ' << m.params[i].name;
    }
    os << ") ";
    print_block(os, m.body, 1);
    os << '\n';
}

} // namespace

std::string print(const Expr& expr) {
    std::ostringstream os;
    print_expr(os, expr);
    return os.str();
}

std::string print(const SyntaxTree& tree) {
    std::ostringstream os;
    for (const auto& cls : tree.classes) {
        os << "reactiveclass " << cls.name << '(' << cls.queue_capacity << ") {\n";
        if (!cls.known_rebecs.empty()) {
            os << "    knownrebecs {\n";
            for (const auto& kr : cls.known_rebecs) os << "        " << kr.class_name << ' ' << kr.field_name << ";\n";
            os << "    }\n";
        }
        if (!cls.state_vars.empty()) {
            os << "    statevars {\n";
            for (const auto& sv : cls.state_vars) {
                os << "        ";
                print_type(os, sv.type);
                os << ' ' << sv.name << ";\n";
            }
            os << "    }\n";
        }
        if (cls.constructor) print_server(os, *cls.constructor, true);
        for (const auto& m : cls.msgsrvs) print_server(os, m, false);
        os << "}\n\n";
    }
    os << "main {\n";
    for (const auto& inst : tree.main.instances) {
        os << "    " << inst.class_name << ' ' << inst.instance_name << '(';
        for (std::size_t i = 0; i < inst.bindings.size(); ++i) {
            if (i) os << ", ";
            os << inst.bindings[i];
        }
        os << "):(";
        for (std::size_t i = 0; i < inst.ctor_args.size(); ++i) {
            if (i) os << ", ";
            print_expr(os, inst.ctor_args[i]);
        }
        os << ");\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace tactor::syntax
