#include "tactor/model/analyzer.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "tactor/syntax/parser.hpp"

namespace tactor::model {

using syntax::BinaryOp;
using syntax::Diagnostic;
using syntax::Expr;
using syntax::ExprKind;
using syntax::Span;
using syntax::Stmt;
using syntax::StmtKind;

const char* to_string(ScalarType t) {
    switch (t) {
    case ScalarType::Int: return "int";
    case ScalarType::Bool: return "boolean";
    case ScalarType::Byte: return "byte";
    }
    return "?";
}

const VarSlot* ClassInfo::find_state_var(const std::string& var) const {
    for (const auto& slot : state_vars) {
        if (slot.name == var) return &slot;
    }
    return nullptr;
}

std::optional<int> ClassInfo::find_server(const std::string& server) const {
    auto it = server_index.find(server);
    if (it == server_index.end()) return std::nullopt;
    return it->second;
}

std::optional<int> CompiledModel::find_instance(const std::string& name) const {
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].name == name) return static_cast<int>(i);
    }
    return std::nullopt;
}

std::optional<int> CompiledModel::find_class(const std::string& name) const {
    auto it = class_index.find(name);
    if (it == class_index.end()) return std::nullopt;
    return it->second;
}

namespace {

ScalarType scalar_of(syntax::ScalarTypeName t) {
    switch (t) {
    case syntax::ScalarTypeName::Int: return ScalarType::Int;
    case syntax::ScalarTypeName::Boolean: return ScalarType::Bool;
    case syntax::ScalarTypeName::Byte: return ScalarType::Byte;
    }
    return ScalarType::Int;
}

bool assignable(ScalarType to, ScalarType from) { return is_integer(to) == is_integer(from); }

/// Thrown inside expression compilation to abandon the current statement
/// after its diagnostic has been recorded.
struct Abandon {};

class Analyzer {
public:
    explicit Analyzer(const syntax::SyntaxTree& tree) : tree_(tree) {}

    AnalysisResult run() {
        declare_classes();
        for (std::size_t c = 0; c < tree_.classes.size(); ++c) {
            if (!class_ok_[c]) continue;
            compile_class(static_cast<int>(c));
        }
        build_instances();
        AnalysisResult result;
        result.diagnostics = std::move(diags_);
        if (result.diagnostics.empty()) result.model = std::move(model_);
        return result;
    }

    // Entry point used for assertion predicates over a finished model.
    static ExprCompileResult compile_predicate(const CompiledModel& model, const Expr& expr) {
        ExprCompileResult result;
        Analyzer a(model);
        try {
            CExpr c = a.compile_expr(expr);
            if (c.type != ScalarType::Bool) a.report(expr.span, "assertion must be a boolean expression");
            else result.expr = std::move(c);
        } catch (const Abandon&) {
        }
        result.diagnostics = std::move(a.diags_);
        if (!result.diagnostics.empty()) result.expr.reset();
        return result;
    }

private:
    explicit Analyzer(const CompiledModel& model) : tree_(empty_tree()), model_(model), global_mode_(true) {}

    static const syntax::SyntaxTree& empty_tree() {
        static const syntax::SyntaxTree tree;
        return tree;
    }

    void report(const Span& span, std::string message) {
        diags_.push_back(Diagnostic{span.line, span.column, std::move(message)});
    }
    [[noreturn]] void fail(const Span& span, std::string message) {
        report(span, std::move(message));
        throw Abandon{};
    }

    void declare_classes() {
        class_ok_.assign(tree_.classes.size(), true);
        for (std::size_t c = 0; c < tree_.classes.size(); ++c) {
            const auto& decl = tree_.classes[c];
            ClassInfo info;
            info.name = decl.name;
            info.queue_capacity = decl.queue_capacity;
            if (model_.class_index.count(decl.name)) {
                report(decl.span, "duplicate reactive class '" + decl.name + "'");
                class_ok_[c] = false;
            } else {
                model_.class_index[decl.name] = static_cast<int>(c);
            }
            model_.classes.push_back(std::move(info));
        }
        // Known rebecs, state vars and server signatures need the full class table.
        for (std::size_t c = 0; c < tree_.classes.size(); ++c) {
            if (!class_ok_[c]) continue;
            const auto& decl = tree_.classes[c];
            ClassInfo& info = model_.classes[c];
            std::set<std::string> names;
            for (const auto& kr : decl.known_rebecs) {
                if (!names.insert(kr.field_name).second) {
                    report(kr.span, "duplicate field '" + kr.field_name + "' in class '" + decl.name + "'");
                }
                auto cls = model_.find_class(kr.class_name);
                if (!cls) report(kr.span, "unknown reactive class '" + kr.class_name + "'");
                info.known_rebecs.push_back(KnownRebec{kr.field_name, kr.class_name, cls.value_or(-1)});
            }
            for (const auto& sv : decl.state_vars) {
                if (!names.insert(sv.name).second) {
                    report(sv.span, "duplicate field '" + sv.name + "' in class '" + decl.name + "'");
                }
                VarSlot slot{sv.name, scalar_of(sv.type.scalar), static_cast<int>(sv.type.array_length.value_or(0)),
                             info.state_size};
                info.state_size += slot.size();
                info.state_vars.push_back(std::move(slot));
            }
            for (const auto& m : decl.msgsrvs) {
                info.server_index[m.name] = static_cast<int>(info.servers.size());
                info.servers.push_back(signature(m));
            }
            if (decl.constructor) info.constructor = signature(*decl.constructor);
        }
    }

    ServerInfo signature(const syntax::MsgSrvDecl& m) {
        ServerInfo s;
        s.name = m.name;
        std::set<std::string> names;
        for (const auto& p : m.params) {
            if (p.type.array_length) report(p.span, "array parameters are not supported");
            if (!names.insert(p.name).second) report(p.span, "duplicate parameter '" + p.name + "'");
            VarSlot slot{p.name, scalar_of(p.type.scalar), 0, s.frame_size};
            s.frame_size += 1;
            s.params.push_back(slot);
            s.locals.push_back(slot);
        }
        return s;
    }

    void compile_class(int c) {
        const auto& decl = tree_.classes[c];
        current_class_ = c;
        if (decl.constructor) {
            in_constructor_ = true;
            compile_body(*decl.constructor, *model_.classes[c].constructor);
            in_constructor_ = false;
        }
        for (std::size_t i = 0; i < decl.msgsrvs.size(); ++i) {
            compile_body(decl.msgsrvs[i], model_.classes[c].servers[i]);
        }
    }

    void compile_body(const syntax::MsgSrvDecl& decl, ServerInfo& server) {
        server_ = &server;
        scopes_.clear();
        scopes_.emplace_back();
        for (std::size_t i = 0; i < server.params.size(); ++i) scopes_.back()[server.params[i].name] = static_cast<int>(i);
        for (const auto& s : decl.body) lower(s);
        scopes_.clear();
        server_ = nullptr;
    }

    int emit(Instr instr) {
        server_->code.push_back(std::move(instr));
        return static_cast<int>(server_->code.size()) - 1;
    }
    int here() const { return static_cast<int>(server_->code.size()); }

    void lower_scoped(const Stmt& s) {
        scopes_.emplace_back();
        lower(s);
        scopes_.pop_back();
    }

    void lower(const Stmt& s) {
        try {
            lower_unchecked(s);
        } catch (const Abandon&) {
        }
    }

    void lower_unchecked(const Stmt& s) {
        Instr instr;
        instr.line = s.span.line;
        switch (s.kind) {
        case StmtKind::Block:
            scopes_.emplace_back();
            for (const auto& inner : s.body) lower(inner);
            scopes_.pop_back();
            return;
        case StmtKind::LocalDecl: {
            if (scopes_.back().count(s.name)) fail(s.span, "duplicate local variable '" + s.name + "'");
            std::optional<CExpr> init;
            if (s.value) {
                if (s.local_type.array_length) fail(s.span, "array variables cannot be initialized");
                init = compile_expr(*s.value);
                if (!assignable(scalar_of(s.local_type.scalar), init->type)) {
                    fail(s.value->span, std::string("cannot initialize ") + to_string(scalar_of(s.local_type.scalar)) +
                                            " variable '" + s.name + "' with " + to_string(init->type));
                }
            }
            VarSlot slot{s.name, scalar_of(s.local_type.scalar), static_cast<int>(s.local_type.array_length.value_or(0)),
                         server_->frame_size};
            server_->frame_size += slot.size();
            scopes_.back()[s.name] = static_cast<int>(server_->locals.size());
            server_->locals.push_back(slot);
            instr.op = OpCode::InitLocal;
            instr.target = LValue{VarScope::Local, slot.offset, slot.length, slot.type, std::nullopt};
            instr.value = std::move(init);
            emit(std::move(instr));
            return;
        }
        case StmtKind::Assign: {
            instr.op = OpCode::Assign;
            instr.target = compile_lvalue(*s.target);
            instr.value = compile_expr(*s.value);
            if (!assignable(instr.target.type, instr.value->type)) {
                fail(s.value->span, std::string("cannot assign ") + to_string(instr.value->type) + " to " +
                                        to_string(instr.target.type));
            }
            emit(std::move(instr));
            return;
        }
        case StmtKind::Delay:
            if (in_constructor_) fail(s.span, "delay is not allowed in a constructor");
            instr.op = OpCode::Delay;
            instr.value = compile_integer(*s.value, "delay");
            emit(std::move(instr));
            return;
        case StmtKind::Send:
            lower_send(s, std::move(instr));
            return;
        case StmtKind::If: {
            instr.op = OpCode::JumpIfFalse;
            instr.value = compile_condition(*s.condition);
            int branch = emit(std::move(instr));
            lower_scoped(s.body[0]);
            if (s.has_else) {
                Instr skip;
                skip.op = OpCode::Jump;
                skip.line = s.span.line;
                int jump = emit(std::move(skip));
                server_->code[branch].jump_target = here();
                lower_scoped(s.else_body[0]);
                server_->code[jump].jump_target = here();
            } else {
                server_->code[branch].jump_target = here();
            }
            return;
        }
        case StmtKind::While: {
            int top = here();
            instr.op = OpCode::JumpIfFalse;
            instr.value = compile_condition(*s.condition);
            int branch = emit(std::move(instr));
            lower_scoped(s.body[0]);
            Instr back;
            back.op = OpCode::Jump;
            back.jump_target = top;
            back.line = s.span.line;
            emit(std::move(back));
            server_->code[branch].jump_target = here();
            return;
        }
        case StmtKind::For: {
            scopes_.emplace_back();
            for (const auto& init : s.init) lower(init);
            int top = here();
            instr.op = OpCode::JumpIfFalse;
            instr.value = compile_condition(*s.condition);
            int branch = emit(std::move(instr));
            lower_scoped(s.body[0]);
            for (const auto& step : s.step) lower(step);
            Instr back;
            back.op = OpCode::Jump;
            back.jump_target = top;
            back.line = s.span.line;
            emit(std::move(back));
            server_->code[branch].jump_target = here();
            scopes_.pop_back();
            return;
        }
        }
    }

    void lower_send(const Stmt& s, Instr instr) {
        const ClassInfo& self = model_.classes[current_class_];
        instr.op = OpCode::Send;
        int target_class = current_class_;
        if (s.receiver != "self") {
            auto it = std::find_if(self.known_rebecs.begin(), self.known_rebecs.end(),
                                   [&](const KnownRebec& kr) { return kr.field_name == s.receiver; });
            if (it == self.known_rebecs.end()) {
                fail(s.span, "unknown known rebec '" + s.receiver + "' in class '" + self.name + "'");
            }
            instr.receiver_rebec = static_cast<int>(it - self.known_rebecs.begin());
            target_class = it->class_id;
            if (target_class < 0) throw Abandon{}; // unknown class already reported
        }
        const ClassInfo& target = model_.classes[target_class];
        auto server = target.find_server(s.server);
        if (!server) fail(s.span, target.name + " has no message server " + s.server);
        const ServerInfo& callee = target.servers[*server];
        if (callee.params.size() != s.args.size()) {
            fail(s.span, "message server " + target.name + "." + s.server + " expects " +
                             std::to_string(callee.params.size()) + " argument(s), got " +
                             std::to_string(s.args.size()));
        }
        instr.receiver_class = target_class;
        instr.server = *server;
        for (std::size_t i = 0; i < s.args.size(); ++i) {
            CExpr arg = compile_expr(s.args[i]);
            if (!assignable(callee.params[i].type, arg.type)) {
                fail(s.args[i].span, "argument " + std::to_string(i + 1) + " of " + target.name + "." + s.server +
                                         ": expected " + to_string(callee.params[i].type) + ", got " +
                                         to_string(arg.type));
            }
            instr.args.push_back(std::move(arg));
            instr.arg_types.push_back(callee.params[i].type);
        }
        if (s.after) instr.after = compile_integer(*s.after, "after");
        if (s.deadline) instr.deadline = compile_integer(*s.deadline, "deadline");
        emit(std::move(instr));
    }

    CExpr compile_integer(const Expr& e, const char* what) {
        CExpr c = compile_expr(e);
        if (!is_integer(c.type)) fail(e.span, std::string(what) + " argument must be an integer");
        return c;
    }

    CExpr compile_condition(const Expr& e) {
        CExpr c = compile_expr(e);
        if (c.type != ScalarType::Bool) fail(e.span, "condition must be boolean");
        return c;
    }

    struct Resolved {
        VarScope scope;
        VarSlot slot;
        int instance = -1;
    };

    Resolved resolve(const Expr& ref) {
        if (ref.kind == ExprKind::Qualified) {
            auto inst = model_.find_instance(ref.qualifier);
            if (!inst) fail(ref.span, "unknown instance '" + ref.qualifier + "'");
            const ClassInfo& cls = model_.class_of(*inst);
            const VarSlot* slot = cls.find_state_var(ref.name);
            if (!slot) fail(ref.span, "instance '" + ref.qualifier + "' has no state variable '" + ref.name + "'");
            return Resolved{VarScope::State, *slot, *inst};
        }
        if (global_mode_) fail(ref.span, "assertion variables must be written instance.var");
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(ref.name);
            if (found != it->end()) return Resolved{VarScope::Local, server_->locals[found->second]};
        }
        const ClassInfo& cls = model_.classes[current_class_];
        if (const VarSlot* slot = cls.find_state_var(ref.name)) return Resolved{VarScope::State, *slot};
        for (const auto& kr : cls.known_rebecs) {
            if (kr.field_name == ref.name) fail(ref.span, "actor reference '" + ref.name + "' cannot be used as a value");
        }
        fail(ref.span, "unknown variable '" + ref.name + "'");
    }

    LValue compile_lvalue(const Expr& e) {
        if (e.kind == ExprKind::Index) {
            Resolved r = resolve(e.operands[0]);
            if (!r.slot.is_array()) fail(e.span, "'" + r.slot.name + "' is not an array");
            CExpr index = compile_expr(e.operands[1]);
            if (!is_integer(index.type)) fail(e.operands[1].span, "array index must be an integer");
            return LValue{r.scope, r.slot.offset, r.slot.length, r.slot.type, std::move(index)};
        }
        Resolved r = resolve(e);
        if (r.slot.is_array()) fail(e.span, "cannot assign whole array '" + r.slot.name + "'");
        return LValue{r.scope, r.slot.offset, 0, r.slot.type, std::nullopt};
    }

public:
    CExpr compile_expr(const Expr& e) {
        CExpr c;
        c.line = e.span.line;
        switch (e.kind) {
        case ExprKind::IntLiteral:
            c.kind = CExprKind::Const;
            c.type = ScalarType::Int;
            c.constant = e.int_value;
            return c;
        case ExprKind::BoolLiteral:
            c.kind = CExprKind::Const;
            c.type = ScalarType::Bool;
            c.constant = e.bool_value ? 1 : 0;
            return c;
        case ExprKind::VarRef:
        case ExprKind::Qualified: {
            Resolved r = resolve(e);
            if (r.slot.is_array()) fail(e.span, "array '" + r.slot.name + "' must be indexed");
            c.kind = r.instance >= 0 ? CExprKind::Qualified : CExprKind::Var;
            c.type = r.slot.type;
            c.scope = r.scope;
            c.offset = r.slot.offset;
            c.instance = r.instance;
            return c;
        }
        case ExprKind::Index: {
            Resolved r = resolve(e.operands[0]);
            if (!r.slot.is_array()) fail(e.span, "'" + r.slot.name + "' is not an array");
            CExpr index = compile_expr(e.operands[1]);
            if (!is_integer(index.type)) fail(e.operands[1].span, "array index must be an integer");
            c.kind = CExprKind::Index;
            c.type = r.slot.type;
            c.scope = r.scope;
            c.offset = r.slot.offset;
            c.length = r.slot.length;
            c.instance = r.instance;
            c.operands.push_back(std::move(index));
            return c;
        }
        case ExprKind::Unary: {
            CExpr x = compile_expr(e.operands[0]);
            c.kind = CExprKind::Unary;
            c.unary_op = e.unary_op;
            if (e.unary_op == syntax::UnaryOp::Negate) {
                if (!is_integer(x.type)) fail(e.span, "operand of '-' must be an integer");
                c.type = ScalarType::Int;
            } else {
                if (x.type != ScalarType::Bool) fail(e.span, "operand of '!' must be boolean");
                c.type = ScalarType::Bool;
            }
            c.operands.push_back(std::move(x));
            return c;
        }
        case ExprKind::Binary: {
            CExpr lhs = compile_expr(e.operands[0]);
            CExpr rhs = compile_expr(e.operands[1]);
            c.kind = CExprKind::Binary;
            c.binary_op = e.binary_op;
            switch (e.binary_op) {
            case BinaryOp::Add: case BinaryOp::Sub: case BinaryOp::Mul:
            case BinaryOp::Div: case BinaryOp::Mod:
                if (!is_integer(lhs.type) || !is_integer(rhs.type)) fail(e.span, "arithmetic operands must be integers");
                c.type = ScalarType::Int;
                break;
            case BinaryOp::Less: case BinaryOp::LessEq:
            case BinaryOp::Greater: case BinaryOp::GreaterEq:
                if (!is_integer(lhs.type) || !is_integer(rhs.type)) fail(e.span, "comparison operands must be integers");
                c.type = ScalarType::Bool;
                break;
            case BinaryOp::Equal: case BinaryOp::NotEqual:
                if (is_integer(lhs.type) != is_integer(rhs.type)) fail(e.span, "type mismatch in equality comparison");
                c.type = ScalarType::Bool;
                break;
            case BinaryOp::And: case BinaryOp::Or:
                if (lhs.type != ScalarType::Bool || rhs.type != ScalarType::Bool) {
                    fail(e.span, "logical operands must be boolean");
                }
                c.type = ScalarType::Bool;
                break;
            }
            c.operands.push_back(std::move(lhs));
            c.operands.push_back(std::move(rhs));
            return c;
        }
        }
        fail(e.span, "unsupported expression");
    }

private:
    std::optional<std::int64_t> literal_value(const Expr& e, ScalarType& type) {
        if (e.kind == ExprKind::IntLiteral) {
            type = ScalarType::Int;
            return e.int_value;
        }
        if (e.kind == ExprKind::BoolLiteral) {
            type = ScalarType::Bool;
            return e.bool_value ? 1 : 0;
        }
        if (e.kind == ExprKind::Unary && e.unary_op == syntax::UnaryOp::Negate &&
            e.operands[0].kind == ExprKind::IntLiteral) {
            type = ScalarType::Int;
            return -e.operands[0].int_value;
        }
        return std::nullopt;
    }

    void build_instances() {
        const auto& decls = tree_.main.instances;
        std::map<std::string, int> by_name;
        for (std::size_t i = 0; i < decls.size(); ++i) {
            if (!by_name.emplace(decls[i].instance_name, static_cast<int>(i)).second) {
                report(decls[i].span, "duplicate instance name '" + decls[i].instance_name + "'");
            }
        }
        for (const auto& d : decls) {
            InstanceInfo inst;
            inst.name = d.instance_name;
            auto cls = model_.find_class(d.class_name);
            if (!cls) {
                report(d.span, "unknown reactive class '" + d.class_name + "' for instance '" + d.instance_name + "'");
                model_.instances.push_back(std::move(inst));
                continue;
            }
            inst.class_id = *cls;
            const ClassInfo& info = model_.classes[*cls];
            const auto& kr = info.known_rebecs;
            for (std::size_t b = 0; b < d.bindings.size(); ++b) {
                auto target = by_name.find(d.bindings[b]);
                if (target == by_name.end()) {
                    report(d.binding_spans[b], "instance '" + d.instance_name + "': unknown instance '" +
                                                   d.bindings[b] + "'");
                    continue;
                }
                if (b < kr.size() && decls[target->second].class_name != kr[b].class_name) {
                    report(d.binding_spans[b], "instance '" + d.instance_name + "': known rebec " + kr[b].field_name +
                                                   " expects class " + kr[b].class_name + ", got " +
                                                   decls[target->second].class_name);
                }
                inst.bindings.push_back(target->second);
            }
            if (d.bindings.size() < kr.size()) {
                for (std::size_t b = d.bindings.size(); b < kr.size(); ++b) {
                    report(d.span, "instance '" + d.instance_name + "': known rebec " + kr[b].field_name + " unbound");
                }
            } else if (d.bindings.size() > kr.size()) {
                report(d.span, "instance '" + d.instance_name + "': too many known-rebec bindings (class " + info.name +
                                   " declares " + std::to_string(kr.size()) + ")");
            }
            std::size_t expected = info.constructor ? info.constructor->params.size() : 0;
            if (d.ctor_args.size() != expected) {
                report(d.span, "instance '" + d.instance_name + "': constructor expects " + std::to_string(expected) +
                                   " argument(s), got " + std::to_string(d.ctor_args.size()));
            } else {
                for (std::size_t a = 0; a < d.ctor_args.size(); ++a) {
                    ScalarType type = ScalarType::Int;
                    auto value = literal_value(d.ctor_args[a], type);
                    if (!value) {
                        report(d.ctor_args[a].span, "constructor arguments must be literals");
                        continue;
                    }
                    ScalarType param = info.constructor->params[a].type;
                    if (!assignable(param, type)) {
                        report(d.ctor_args[a].span, std::string("constructor argument ") + std::to_string(a + 1) +
                                                        ": expected " + to_string(param) + ", got " + to_string(type));
                    } else if (param == ScalarType::Byte && (*value < 0 || *value > 255)) {
                        report(d.ctor_args[a].span, "byte constructor argument out of range 0..255");
                    }
                    inst.ctor_args.push_back(*value);
                }
            }
            model_.instances.push_back(std::move(inst));
        }
    }

    const syntax::SyntaxTree& tree_;
    CompiledModel model_;
    bool global_mode_ = false;
    std::vector<bool> class_ok_;
    std::vector<Diagnostic> diags_;
    int current_class_ = -1;
    bool in_constructor_ = false;
    ServerInfo* server_ = nullptr;
    std::vector<std::map<std::string, int>> scopes_; // name -> index into server_->locals
};

} // namespace

AnalysisResult analyze(const syntax::SyntaxTree& tree) { return Analyzer(tree).run(); }

AnalysisResult load_model(std::string_view source) {
    auto parsed = syntax::parse(source);
    if (!parsed.ok()) {
        AnalysisResult result;
        result.diagnostics = std::move(parsed.diagnostics);
        return result;
    }
    return analyze(*parsed.tree);
}

ExprCompileResult compile_global_predicate(const CompiledModel& model, const Expr& expr) {
    return Analyzer::compile_predicate(model, expr);
}

namespace {
void collect_instances(const CExpr& e, std::set<int>& out) {
    if (e.kind == CExprKind::Qualified || (e.kind == CExprKind::Index && e.instance >= 0)) out.insert(e.instance);
    for (const auto& op : e.operands) collect_instances(op, out);
}
} // namespace

std::vector<int> referenced_instances(const CExpr& expr) {
    std::set<int> ids;
    collect_instances(expr, ids);
    return {ids.begin(), ids.end()};
}

} // namespace tactor::model
