#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tactor/model/compiled_model.hpp"
#include "tactor/syntax/ast.hpp"

namespace tactor::model {

struct AnalysisResult {
    std::optional<CompiledModel> model;
    std::vector<syntax::Diagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Resolves names, checks types and lowers message-server bodies. Reports
/// every diagnostic it finds; a model is produced only when there are none.
AnalysisResult analyze(const syntax::SyntaxTree& tree);

/// parse + analyze.
AnalysisResult load_model(std::string_view source);

struct ExprCompileResult {
    std::optional<CExpr> expr;
    std::vector<syntax::Diagnostic> diagnostics;

    bool ok() const { return expr.has_value(); }
};

/// Compiles an expression over `instance.var` references into a Qualified
/// expression tree. The result type must be boolean.
ExprCompileResult compile_global_predicate(const CompiledModel& model, const syntax::Expr& expr);

/// Set of instance ids referenced by a compiled predicate.
std::vector<int> referenced_instances(const CExpr& expr);

} // namespace tactor::model
