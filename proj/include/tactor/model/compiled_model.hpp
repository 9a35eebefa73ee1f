#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tactor/syntax/ast.hpp"

namespace tactor::model {

enum class ScalarType { Int, Bool, Byte };

inline bool is_integer(ScalarType t) { return t != ScalarType::Bool; }

const char* to_string(ScalarType t);

/// A typed variable occupying `size()` consecutive 64-bit slots.
struct VarSlot {
    std::string name;
    ScalarType type = ScalarType::Int;
    int length = 0; // 0 for scalars
    int offset = 0;

    bool is_array() const { return length > 0; }
    int size() const { return length > 0 ? length : 1; }
};

enum class VarScope { State, Local };

enum class CExprKind { Const, Var, Index, Unary, Binary, Qualified };

/// Type-checked expression with every name resolved to a slot.
struct CExpr {
    CExprKind kind = CExprKind::Const;
    ScalarType type = ScalarType::Int;
    std::int64_t constant = 0;
    VarScope scope = VarScope::State;
    int offset = 0;
    int length = 0;   // array length for Index, 0 otherwise
    int instance = -1; // Qualified only
    syntax::UnaryOp unary_op = syntax::UnaryOp::Negate;
    syntax::BinaryOp binary_op = syntax::BinaryOp::Add;
    std::vector<CExpr> operands; // Index: [index]; Unary: [x]; Binary: [lhs, rhs]
    int line = 0;
};

struct LValue {
    VarScope scope = VarScope::State;
    int offset = 0;
    int length = 0;
    ScalarType type = ScalarType::Int;
    std::optional<CExpr> index;
};

enum class OpCode { Assign, InitLocal, Send, Delay, JumpIfFalse, Jump };

/// One instruction of a flattened message-server body. Structured control
/// flow compiles to conditional and unconditional jumps so that a suspended
/// execution is fully described by (server, pc, local frame).
struct Instr {
    OpCode op = OpCode::Jump;
    LValue target;                // Assign, InitLocal
    std::optional<CExpr> value;   // Assign, InitLocal (absent = zero), Delay, JumpIfFalse
    int receiver_rebec = -1;      // Send: -1 for self, otherwise known-rebec index
    int receiver_class = -1;      // Send
    int server = -1;              // Send
    std::vector<CExpr> args;      // Send
    std::vector<ScalarType> arg_types; // Send: declared parameter types
    std::optional<CExpr> after;   // Send
    std::optional<CExpr> deadline; // Send
    int jump_target = 0;          // Jump, JumpIfFalse
    int line = 0;
};

struct ServerInfo {
    std::string name;
    std::vector<VarSlot> params;
    std::vector<VarSlot> locals; // params first, then every local declaration
    int frame_size = 0;
    std::vector<Instr> code;
};

struct KnownRebec {
    std::string field_name;
    std::string class_name;
    int class_id = -1;
};

struct ClassInfo {
    std::string name;
    std::int64_t queue_capacity = 1;
    std::vector<KnownRebec> known_rebecs;
    std::vector<VarSlot> state_vars;
    int state_size = 0;
    std::vector<ServerInfo> servers;
    std::map<std::string, int> server_index;
    std::optional<ServerInfo> constructor;

    const VarSlot* find_state_var(const std::string& name) const;
    std::optional<int> find_server(const std::string& name) const;
};

struct InstanceInfo {
    std::string name;
    int class_id = -1;
    std::vector<int> bindings; // instance ids, one per known rebec
    std::vector<std::int64_t> ctor_args;
};

struct CompiledModel {
    std::vector<ClassInfo> classes;
    std::map<std::string, int> class_index;
    std::vector<InstanceInfo> instances;

    const ClassInfo& class_of(int instance) const { return classes[instances[instance].class_id]; }
    std::optional<int> find_instance(const std::string& name) const;
    std::optional<int> find_class(const std::string& name) const;
};

} // namespace tactor::model
