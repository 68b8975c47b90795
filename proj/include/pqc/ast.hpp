#pragma once

#include "pqc/algebra.hpp"
#include "pqc/boxed.hpp"
#include "pqc/error.hpp"
#include "pqc/labels.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pqc::ast {

struct Type;
struct Value;
struct Term;
using TypePtr = std::shared_ptr<const Type>;
using ValuePtr = std::shared_ptr<const Value>;
using TermPtr = std::shared_ptr<const Term>;

/// 1 | Nat | w | I | A ⊗ B | A ⊸_T B | !A | Circ(T, U)
///
/// Arrow, Bang and Circ carry an optional effect annotation: an integer
/// literal from source, or a resolved Effect after effect checking.
struct Type {
    enum class Kind { Unit, Nat, Wire, BundleUnit, Tensor, Arrow, Bang, Circ };

    Kind kind = Kind::Unit;
    WireType wire = WireType::Qubit;
    /// Tensor: components. Arrow: argument and result. Bang: left only.
    TypePtr left;
    TypePtr right;
    /// Arrow: captured wires. Circ: input and output bundles.
    BundleType captured;
    BundleType circ_in;
    BundleType circ_out;
    std::optional<std::uint64_t> effect_literal;
    std::shared_ptr<const Effect> effect;
};

TypePtr unit_type();
TypePtr nat_type();
TypePtr wire_type(WireType w);
TypePtr bundle_unit_type();
TypePtr tensor_type(TypePtr a, TypePtr b);
TypePtr arrow_type(TypePtr arg, TypePtr result, BundleType captured = BundleType::unit(),
                   std::optional<std::uint64_t> literal = std::nullopt);
TypePtr bang_type(TypePtr inner, std::optional<std::uint64_t> literal = std::nullopt);
TypePtr circ_type(BundleType in, BundleType out, std::optional<std::uint64_t> literal = std::nullopt);

TypePtr from_bundle(const BundleType& t);
std::optional<BundleType> to_bundle(const Type& t);

struct UnitValue {};
struct NatValue {
    std::uint64_t n = 0;
};
struct VarValue {
    std::string name;
};
struct LabelValue {
    Label label;
};
struct LambdaValue {
    std::string param;
    TypePtr param_type;
    TermPtr body;
};
struct LiftValue {
    TermPtr body;
};
/// `gate` names the gate literal the circuit came from, if any.
struct BoxedValue {
    std::shared_ptr<const BoxedCircuit> circuit;
    std::string gate;
};
struct PairValue {
    ValuePtr first;
    ValuePtr second;
};
/// Surface only: (V1, ..., Vn) for n > 2 before desugaring.
struct TupleValue {
    std::vector<ValuePtr> items;
};
/// Surface only: @name before desugaring.
struct GateRefValue {
    std::string name;
};

struct Value {
    std::variant<UnitValue, NatValue, VarValue, LabelValue, LambdaValue, LiftValue, BoxedValue, PairValue,
                 TupleValue, GateRefValue>
        node;
    SourceLoc loc;
};

struct AppTerm {
    ValuePtr fn;
    ValuePtr arg;
};
struct DestTerm {
    std::string first;
    std::string second;
    ValuePtr pair;
    TermPtr body;
};
struct IfzTerm {
    ValuePtr cond;
    TermPtr then_branch;
    TermPtr else_branch;
};
struct ForceTerm {
    ValuePtr thunk;
};
struct BoxTerm {
    BundleType input;
    ValuePtr fn;
};
struct ApplyTerm {
    ValuePtr circuit;
    ValuePtr arg;
};
struct ReturnTerm {
    ValuePtr value;
};
struct LetTerm {
    std::string name;
    TermPtr bound;
    TermPtr body;
};
/// Surface only: let (x1, ..., xn) = M in N, where exactly one of
/// `bound_term` and `bound_value` is set.
struct LetTupleTerm {
    std::vector<std::string> names;
    TermPtr bound_term;
    ValuePtr bound_value;
    TermPtr body;
};

struct Term {
    std::variant<AppTerm, DestTerm, IfzTerm, ForceTerm, BoxTerm, ApplyTerm, ReturnTerm, LetTerm, LetTupleTerm> node;
    SourceLoc loc;
};

template <typename Node>
ValuePtr make_value(Node node, SourceLoc loc = {}) {
    return std::make_shared<const Value>(Value{std::move(node), loc});
}

template <typename Node>
TermPtr make_term(Node node, SourceLoc loc = {}) {
    return std::make_shared<const Term>(Term{std::move(node), loc});
}

ValuePtr var(std::string name);
ValuePtr label(Label l);
ValuePtr pair(ValuePtr a, ValuePtr b);
ValuePtr boxed(BoxedCircuit c, std::string gate = {});
TermPtr ret(ValuePtr v);

/// A source file: declared input labels in wire order, an optional gate-spec
/// path and the main term.
struct Program {
    LabelContext inputs;
    std::optional<std::string> gates_path;
    TermPtr main;
};

/// Free variables and labels; labels appear as "#<id>".
std::set<std::string> free_names(const Term& m);
std::set<std::string> free_names(const Value& v);
std::string name_of(Label l);

/// Structural equality up to renaming of bound variables. Effect
/// annotations are compared as literals.
bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const Value& a, const Value& b);
bool type_equal_syntactic(const Type& a, const Type& b);

} // namespace pqc::ast
