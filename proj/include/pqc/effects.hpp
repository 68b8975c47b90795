#pragma once

#include "pqc/algebra.hpp"
#include "pqc/ast.hpp"
#include "pqc/eval.hpp"
#include "pqc/gate_spec.hpp"
#include "pqc/typecheck.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pqc {

/// Γ ⊢ M : A ; e. Arrow, Bang and Circ components of `type` carry resolved
/// effects. dom(e) = α(♯Γ) in canonical context order, cod(e) = α(♯A).
struct EffectJudgment {
    ast::TypePtr type;
    Effect effect;
};

/// Bottom-up effect inference over a simply typed term, parameterized by a
/// circuit algebra. Exchange is realized by precomposing each rule with the
/// permutation from canonical context order to the order the rule needs.
class EffectChecker {
public:
    EffectChecker(const CircuitAlgebra& algebra, const GateSpec& spec) : algebra_(algebra), spec_(spec) {}

    /// `ctx` holds annotated types.
    EffectJudgment infer_term(const TypingContext& ctx, const ast::Term& m);
    ast::TypePtr infer_value(const TypingContext& ctx, const ast::Value& v);

    /// Source types with literal annotations resolved to effects.
    ast::TypePtr resolve(const ast::TypePtr& t) const;

    /// A <: B: contravariant arguments, covariant results, leq on effects.
    /// Missing annotations on `b` accept anything.
    bool subtype(const ast::Type& a, const ast::Type& b) const;
    /// Least upper bound of two types differing only in annotations.
    ast::TypePtr join_type(const ast::TypePtr& a, const ast::TypePtr& b, SourceLoc loc) const;

    AlgebraObject object_of(const CircuitObject& obj) const { return algebra_.object_of(obj); }
    const CircuitAlgebra& algebra() const { return algebra_; }

private:
    Effect perm_effect(const std::vector<Binding>& from, const std::vector<Binding>& to) const;
    std::vector<Binding> value_order(const TypingContext& ctx, const ast::Value& v) const;
    Effect require_effect(const ast::Type& t, const std::string& rule, SourceLoc loc) const;
    void check_endpoints(const TypingContext& ctx, const ast::Type& type, const Effect& e, SourceLoc loc) const;

    const CircuitAlgebra& algebra_;
    const GateSpec& spec_;
};

/// Sub rule: inferred ≲ declared. Throws EffectObjectMismatch when the
/// endpoints differ.
bool check_ascription(const CircuitAlgebra& algebra, const Effect& inferred, const Effect& declared);

/// Effect of a desugared program's main term under its inputs.
EffectJudgment infer_program(const ast::Program& p, const CircuitAlgebra& algebra, const GateSpec& spec);

struct VerifyReport {
    Effect inferred;
    /// α of the produced extension, read in the order of the result value.
    Effect observed;
    bool holds = false;
    ValueConfiguration result;
};

/// Evaluates the program and checks α(F) ≲ e for the produced extension F.
VerifyReport verify_dynamic(const ast::Program& p, const CircuitAlgebra& algebra, const GateSpec& spec,
                            std::optional<std::uint64_t> fuel = std::nullopt);

} // namespace pqc
