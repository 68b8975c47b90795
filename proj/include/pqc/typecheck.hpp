#pragma once

#include "pqc/ast.hpp"
#include "pqc/labels.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pqc {

/// A linear binding. `key` fixes the canonical order of the context:
/// labels by declaration position, variables by binding time.
struct Binding {
    std::string name;
    ast::TypePtr type;
    std::uint64_t key = 0;
};

/// Φ, Γ: parameters are unordered and reusable; linear bindings are kept
/// sorted by key.
class TypingContext {
public:
    TypingContext() = default;

    /// Labels in context order with keys 0, 1, ...
    static TypingContext from_labels(const LabelContext& labels);

    const std::vector<Binding>& linear() const { return linear_; }
    const std::map<std::string, ast::TypePtr>& params() const { return params_; }
    const Binding* find_linear(const std::string& name) const;
    ast::TypePtr find_param(const std::string& name) const;

    /// Adds `name`, as a parameter if its type is one, otherwise as a linear
    /// binding with the next key. Shadows any earlier binding of `name`.
    TypingContext bind(const std::string& name, ast::TypePtr type) const;
    /// Keeps the parameters and the linear bindings named in `names`.
    TypingContext restrict_to(const std::set<std::string>& names) const;
    TypingContext without_linear() const;
    /// Replaces the linear bindings, assigning keys in the given order.
    TypingContext with_linear(std::vector<Binding> ordered) const;

private:
    std::vector<Binding> linear_;
    std::map<std::string, ast::TypePtr> params_;
    std::uint64_t next_key_ = 0;
};

/// ♯A: the wires captured by a value of type A.
BundleType sharp(const ast::Type& t);
CircuitObject sharp_wires(const ast::Type& t);
/// Wires of the given bindings, concatenated in order.
CircuitObject wires_of(const std::vector<Binding>& bindings);
/// Right-nested tensor of ♯ of each binding type; I when empty.
BundleType sharp_context(const std::vector<Binding>& bindings);

bool is_parameter(const ast::Type& t);

/// Type equality ignoring effect annotations. 1 and I are identified, and
/// closure captures are compared as flat wire lists.
bool same_type(const ast::Type& a, const ast::Type& b);

/// Partition of the linear bindings of `ctx` between two subterms, checking
/// that every binding goes to exactly one side.
std::pair<TypingContext, TypingContext> split_context(const TypingContext& ctx, const std::set<std::string>& left,
                                                      const std::set<std::string>& right, const std::string& rule,
                                                      SourceLoc loc);

/// The simple linear type system.
class TypeChecker {
public:
    ast::TypePtr infer_value(const TypingContext& ctx, const ast::Value& v);
    ast::TypePtr infer_term(const TypingContext& ctx, const ast::Term& m);
    /// Check mode for values: closure captures may be reordered (exchange)
    /// to match the expected capture annotation.
    bool check_value(const TypingContext& ctx, const ast::Value& v, const ast::Type& expected);
};

struct TypedProgram {
    ast::TypePtr type;
    TypingContext context;
};

/// Types the main term of a desugared program under its declared inputs.
TypedProgram typecheck_program(const ast::Program& p);

struct ConfigurationType {
    ast::TypePtr type;
    /// Outputs of the circuit not mentioned by the term, in circuit order.
    LabelContext passthrough;
};

/// ⊢ (C, M) : A; Q'. `out_ctx` names the outputs of `c`.
ConfigurationType check_configuration(const LabelContext& in_ctx, const Circuit& c, const LabelContext& out_ctx,
                                      const ast::Term& m);

/// Check-mode variant for value configurations against an expected type.
bool check_value_configuration(const LabelContext& in_ctx, const Circuit& c, const LabelContext& out_ctx,
                               const ast::Value& v, const ast::Type& expected);

} // namespace pqc
