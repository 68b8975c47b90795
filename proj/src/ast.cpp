#include "pqc/ast.hpp"

#include "overloaded.hpp"

#include <algorithm>

namespace pqc::ast {

namespace {

TypePtr make(Type t) {
    return std::make_shared<const Type>(std::move(t));
}

} // namespace

TypePtr unit_type() {
    return make(Type{});
}

TypePtr nat_type() {
    Type t;
    t.kind = Type::Kind::Nat;
    return make(std::move(t));
}

TypePtr wire_type(WireType w) {
    Type t;
    t.kind = Type::Kind::Wire;
    t.wire = w;
    return make(std::move(t));
}

TypePtr bundle_unit_type() {
    Type t;
    t.kind = Type::Kind::BundleUnit;
    return make(std::move(t));
}

TypePtr tensor_type(TypePtr a, TypePtr b) {
    Type t;
    t.kind = Type::Kind::Tensor;
    t.left = std::move(a);
    t.right = std::move(b);
    return make(std::move(t));
}

TypePtr arrow_type(TypePtr arg, TypePtr result, BundleType captured, std::optional<std::uint64_t> literal) {
    Type t;
    t.kind = Type::Kind::Arrow;
    t.left = std::move(arg);
    t.right = std::move(result);
    t.captured = std::move(captured);
    t.effect_literal = literal;
    return make(std::move(t));
}

TypePtr bang_type(TypePtr inner, std::optional<std::uint64_t> literal) {
    Type t;
    t.kind = Type::Kind::Bang;
    t.left = std::move(inner);
    t.effect_literal = literal;
    return make(std::move(t));
}

TypePtr circ_type(BundleType in, BundleType out, std::optional<std::uint64_t> literal) {
    Type t;
    t.kind = Type::Kind::Circ;
    t.circ_in = std::move(in);
    t.circ_out = std::move(out);
    t.effect_literal = literal;
    return make(std::move(t));
}

TypePtr from_bundle(const BundleType& t) {
    switch (t.kind()) {
    case BundleType::Kind::Unit: return bundle_unit_type();
    case BundleType::Kind::Wire: return wire_type(t.wire_type());
    case BundleType::Kind::Tensor: return tensor_type(from_bundle(t.left()), from_bundle(t.right()));
    }
    return bundle_unit_type();
}

std::optional<BundleType> to_bundle(const Type& t) {
    switch (t.kind) {
    case Type::Kind::BundleUnit: return BundleType::unit();
    case Type::Kind::Wire: return BundleType::wire(t.wire);
    case Type::Kind::Tensor: {
        auto a = to_bundle(*t.left);
        auto b = to_bundle(*t.right);
        if (!a || !b) return std::nullopt;
        return BundleType::tensor(std::move(*a), std::move(*b));
    }
    default: return std::nullopt;
    }
}

ValuePtr var(std::string name) {
    return make_value(VarValue{std::move(name)});
}

ValuePtr label(Label l) {
    return make_value(LabelValue{l});
}

ValuePtr pair(ValuePtr a, ValuePtr b) {
    return make_value(PairValue{std::move(a), std::move(b)});
}

ValuePtr boxed(BoxedCircuit c, std::string gate) {
    return make_value(BoxedValue{std::make_shared<const BoxedCircuit>(std::move(c)), std::move(gate)});
}

TermPtr ret(ValuePtr v) {
    return make_term(ReturnTerm{std::move(v)});
}

std::string name_of(Label l) {
    return to_string(l);
}

namespace {

void collect(const Term& m, std::set<std::string>& out);

void collect(const Value& v, std::set<std::string>& out) {
    std::visit(overloaded{
                   [](const UnitValue&) {},
                   [](const NatValue&) {},
                   [&](const VarValue& x) { out.insert(x.name); },
                   [&](const LabelValue& l) { out.insert(name_of(l.label)); },
                   [&](const LambdaValue& f) {
                       std::set<std::string> inner;
                       collect(*f.body, inner);
                       inner.erase(f.param);
                       out.insert(inner.begin(), inner.end());
                   },
                   [&](const LiftValue& l) { collect(*l.body, out); },
                   [](const BoxedValue&) {},
                   [&](const PairValue& p) {
                       collect(*p.first, out);
                       collect(*p.second, out);
                   },
                   [&](const TupleValue& t) {
                       for (const auto& item : t.items) collect(*item, out);
                   },
                   [](const GateRefValue&) {},
               },
               v.node);
}

void collect(const Term& m, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const AppTerm& t) {
                       collect(*t.fn, out);
                       collect(*t.arg, out);
                   },
                   [&](const DestTerm& t) {
                       collect(*t.pair, out);
                       std::set<std::string> inner;
                       collect(*t.body, inner);
                       inner.erase(t.first);
                       inner.erase(t.second);
                       out.insert(inner.begin(), inner.end());
                   },
                   [&](const IfzTerm& t) {
                       collect(*t.cond, out);
                       collect(*t.then_branch, out);
                       collect(*t.else_branch, out);
                   },
                   [&](const ForceTerm& t) { collect(*t.thunk, out); },
                   [&](const BoxTerm& t) { collect(*t.fn, out); },
                   [&](const ApplyTerm& t) {
                       collect(*t.circuit, out);
                       collect(*t.arg, out);
                   },
                   [&](const ReturnTerm& t) { collect(*t.value, out); },
                   [&](const LetTerm& t) {
                       collect(*t.bound, out);
                       std::set<std::string> inner;
                       collect(*t.body, inner);
                       inner.erase(t.name);
                       out.insert(inner.begin(), inner.end());
                   },
                   [&](const LetTupleTerm& t) {
                       if (t.bound_term) collect(*t.bound_term, out);
                       if (t.bound_value) collect(*t.bound_value, out);
                       std::set<std::string> inner;
                       collect(*t.body, inner);
                       for (const auto& n : t.names) inner.erase(n);
                       out.insert(inner.begin(), inner.end());
                   },
               },
               m.node);
}

/// Bound-variable correspondence, innermost last.
using Scope = std::vector<std::pair<std::string, std::string>>;

bool same_var(const Scope& scope, const std::string& a, const std::string& b) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        const bool ha = it->first == a;
        const bool hb = it->second == b;
        if (ha || hb) return ha && hb;
    }
    return a == b;
}

bool eq(const Term& a, const Term& b, Scope& scope);

bool eq(const Value& a, const Value& b, Scope& scope) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [](const UnitValue&) { return true; },
            [&](const NatValue& x) { return x.n == std::get<NatValue>(b.node).n; },
            [&](const VarValue& x) { return same_var(scope, x.name, std::get<VarValue>(b.node).name); },
            [&](const LabelValue& x) { return x.label == std::get<LabelValue>(b.node).label; },
            [&](const LambdaValue& x) {
                const auto& y = std::get<LambdaValue>(b.node);
                if (!type_equal_syntactic(*x.param_type, *y.param_type)) return false;
                scope.emplace_back(x.param, y.param);
                const bool r = eq(*x.body, *y.body, scope);
                scope.pop_back();
                return r;
            },
            [&](const LiftValue& x) { return eq(*x.body, *std::get<LiftValue>(b.node).body, scope); },
            [&](const BoxedValue& x) { return *x.circuit == *std::get<BoxedValue>(b.node).circuit; },
            [&](const PairValue& x) {
                const auto& y = std::get<PairValue>(b.node);
                return eq(*x.first, *y.first, scope) && eq(*x.second, *y.second, scope);
            },
            [&](const TupleValue& x) {
                const auto& y = std::get<TupleValue>(b.node);
                if (x.items.size() != y.items.size()) return false;
                for (std::size_t i = 0; i < x.items.size(); ++i)
                    if (!eq(*x.items[i], *y.items[i], scope)) return false;
                return true;
            },
            [&](const GateRefValue& x) { return x.name == std::get<GateRefValue>(b.node).name; },
        },
        a.node);
}

bool eq(const Term& a, const Term& b, Scope& scope) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const AppTerm& x) {
                const auto& y = std::get<AppTerm>(b.node);
                return eq(*x.fn, *y.fn, scope) && eq(*x.arg, *y.arg, scope);
            },
            [&](const DestTerm& x) {
                const auto& y = std::get<DestTerm>(b.node);
                if (!eq(*x.pair, *y.pair, scope)) return false;
                scope.emplace_back(x.first, y.first);
                scope.emplace_back(x.second, y.second);
                const bool r = eq(*x.body, *y.body, scope);
                scope.resize(scope.size() - 2);
                return r;
            },
            [&](const IfzTerm& x) {
                const auto& y = std::get<IfzTerm>(b.node);
                return eq(*x.cond, *y.cond, scope) && eq(*x.then_branch, *y.then_branch, scope) &&
                       eq(*x.else_branch, *y.else_branch, scope);
            },
            [&](const ForceTerm& x) { return eq(*x.thunk, *std::get<ForceTerm>(b.node).thunk, scope); },
            [&](const BoxTerm& x) {
                const auto& y = std::get<BoxTerm>(b.node);
                return x.input == y.input && eq(*x.fn, *y.fn, scope);
            },
            [&](const ApplyTerm& x) {
                const auto& y = std::get<ApplyTerm>(b.node);
                return eq(*x.circuit, *y.circuit, scope) && eq(*x.arg, *y.arg, scope);
            },
            [&](const ReturnTerm& x) { return eq(*x.value, *std::get<ReturnTerm>(b.node).value, scope); },
            [&](const LetTerm& x) {
                const auto& y = std::get<LetTerm>(b.node);
                if (!eq(*x.bound, *y.bound, scope)) return false;
                scope.emplace_back(x.name, y.name);
                const bool r = eq(*x.body, *y.body, scope);
                scope.pop_back();
                return r;
            },
            [&](const LetTupleTerm& x) {
                const auto& y = std::get<LetTupleTerm>(b.node);
                if (x.names.size() != y.names.size()) return false;
                if ((x.bound_term != nullptr) != (y.bound_term != nullptr)) return false;
                if (x.bound_term && !eq(*x.bound_term, *y.bound_term, scope)) return false;
                if (x.bound_value && !eq(*x.bound_value, *y.bound_value, scope)) return false;
                for (std::size_t i = 0; i < x.names.size(); ++i) scope.emplace_back(x.names[i], y.names[i]);
                const bool r = eq(*x.body, *y.body, scope);
                scope.resize(scope.size() - x.names.size());
                return r;
            },
        },
        a.node);
}

} // namespace

std::set<std::string> free_names(const Term& m) {
    std::set<std::string> out;
    collect(m, out);
    return out;
}

std::set<std::string> free_names(const Value& v) {
    std::set<std::string> out;
    collect(v, out);
    return out;
}

bool alpha_equal(const Term& a, const Term& b) {
    Scope scope;
    return eq(a, b, scope);
}

bool alpha_equal(const Value& a, const Value& b) {
    Scope scope;
    return eq(a, b, scope);
}

bool type_equal_syntactic(const Type& a, const Type& b) {
    if (a.kind != b.kind || a.effect_literal != b.effect_literal) return false;
    switch (a.kind) {
    case Type::Kind::Unit:
    case Type::Kind::Nat:
    case Type::Kind::BundleUnit: return true;
    case Type::Kind::Wire: return a.wire == b.wire;
    case Type::Kind::Tensor:
        return type_equal_syntactic(*a.left, *b.left) && type_equal_syntactic(*a.right, *b.right);
    case Type::Kind::Arrow:
        return a.captured == b.captured && type_equal_syntactic(*a.left, *b.left) &&
               type_equal_syntactic(*a.right, *b.right);
    case Type::Kind::Bang: return type_equal_syntactic(*a.left, *b.left);
    case Type::Kind::Circ: return a.circ_in == b.circ_in && a.circ_out == b.circ_out;
    }
    return false;
}

} // namespace pqc::ast
