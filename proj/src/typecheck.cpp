#include "pqc/typecheck.hpp"

#include "pqc/syntax.hpp"

#include "overloaded.hpp"

#include <algorithm>
#include <functional>

namespace pqc {

using namespace ast;

TypingContext TypingContext::from_labels(const LabelContext& labels) {
    TypingContext ctx;
    for (const auto& [l, w] : labels.entries())
        ctx.linear_.push_back(Binding{name_of(l), wire_type(w), ctx.next_key_++});
    return ctx;
}

const Binding* TypingContext::find_linear(const std::string& name) const {
    for (const Binding& b : linear_)
        if (b.name == name) return &b;
    return nullptr;
}

TypePtr TypingContext::find_param(const std::string& name) const {
    auto it = params_.find(name);
    return it == params_.end() ? nullptr : it->second;
}

TypingContext TypingContext::bind(const std::string& name, TypePtr type) const {
    if (find_linear(name))
        throw TypeError("LinearityViolation", "bind", "binding " + name + " shadows an unconsumed linear binding", {});
    TypingContext out = *this;
    out.params_.erase(name);
    if (is_parameter(*type)) {
        out.params_.emplace(name, std::move(type));
    } else {
        out.linear_.push_back(Binding{name, std::move(type), out.next_key_++});
    }
    return out;
}

TypingContext TypingContext::restrict_to(const std::set<std::string>& names) const {
    TypingContext out = *this;
    out.linear_.clear();
    for (const Binding& b : linear_)
        if (names.count(b.name)) out.linear_.push_back(b);
    return out;
}

TypingContext TypingContext::without_linear() const {
    TypingContext out = *this;
    out.linear_.clear();
    return out;
}

TypingContext TypingContext::with_linear(std::vector<Binding> ordered) const {
    TypingContext out = *this;
    out.linear_ = std::move(ordered);
    std::uint64_t key = 0;
    for (Binding& b : out.linear_) b.key = key++;
    out.next_key_ = std::max(next_key_, key);
    return out;
}

BundleType sharp(const Type& t) {
    switch (t.kind) {
    case Type::Kind::Wire: return BundleType::wire(t.wire);
    case Type::Kind::Tensor: return BundleType::tensor(sharp(*t.left), sharp(*t.right));
    case Type::Kind::Arrow: return t.captured;
    default: return BundleType::unit();
    }
}

CircuitObject sharp_wires(const Type& t) {
    return sharp(t).flatten();
}

CircuitObject wires_of(const std::vector<Binding>& bindings) {
    CircuitObject out;
    for (const Binding& b : bindings) {
        CircuitObject w = sharp_wires(*b.type);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

BundleType sharp_context(const std::vector<Binding>& bindings) {
    if (bindings.empty()) return BundleType::unit();
    BundleType acc = sharp(*bindings.back().type);
    for (std::size_t i = bindings.size() - 1; i-- > 0;) acc = BundleType::tensor(sharp(*bindings[i].type), acc);
    return acc;
}

bool is_parameter(const Type& t) {
    switch (t.kind) {
    case Type::Kind::Unit:
    case Type::Kind::Nat:
    case Type::Kind::BundleUnit:
    case Type::Kind::Bang:
    case Type::Kind::Circ: return true;
    case Type::Kind::Tensor: return is_parameter(*t.left) && is_parameter(*t.right);
    case Type::Kind::Wire:
    case Type::Kind::Arrow: return false;
    }
    return false;
}

namespace {

bool unitlike(const Type& t) {
    return t.kind == Type::Kind::Unit || t.kind == Type::Kind::BundleUnit;
}

} // namespace

bool same_type(const Type& a, const Type& b) {
    if (unitlike(a) && unitlike(b)) return true;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Type::Kind::Unit:
    case Type::Kind::Nat:
    case Type::Kind::BundleUnit: return true;
    case Type::Kind::Wire: return a.wire == b.wire;
    case Type::Kind::Tensor: return same_type(*a.left, *b.left) && same_type(*a.right, *b.right);
    case Type::Kind::Arrow:
        return a.captured.flatten() == b.captured.flatten() && same_type(*a.left, *b.left) &&
               same_type(*a.right, *b.right);
    case Type::Kind::Bang: return same_type(*a.left, *b.left);
    case Type::Kind::Circ: return a.circ_in == b.circ_in && a.circ_out == b.circ_out;
    }
    return false;
}

std::pair<TypingContext, TypingContext> split_context(const TypingContext& ctx, const std::set<std::string>& left,
                                                      const std::set<std::string>& right, const std::string& rule,
                                                      SourceLoc loc) {
    std::set<std::string> l;
    std::set<std::string> r;
    for (const Binding& b : ctx.linear()) {
        const bool in_l = left.count(b.name) > 0;
        const bool in_r = right.count(b.name) > 0;
        if (in_l && in_r)
            throw TypeError("LinearityViolation", rule, "linear " + b.name + " is used more than once at " + to_string(loc),
                            loc);
        if (!in_l && !in_r)
            throw TypeError("LinearityViolation", rule, "linear " + b.name + " is never used at " + to_string(loc), loc);
        (in_l ? l : r).insert(b.name);
    }
    return {ctx.restrict_to(l), ctx.restrict_to(r)};
}

namespace {

[[noreturn]] void type_error(const std::string& code, const std::string& rule, const std::string& msg, SourceLoc loc) {
    throw TypeError(code, rule, msg + " at " + to_string(loc), loc);
}

void require_no_linear(const TypingContext& ctx, const std::string& rule, SourceLoc loc) {
    if (!ctx.linear().empty())
        type_error("LinearityViolation", rule, "linear " + ctx.linear().front().name + " is never used", loc);
}

std::set<std::string> minus(std::set<std::string> s, std::initializer_list<std::string> names) {
    for (const auto& n : names) s.erase(n);
    return s;
}

} // namespace

TypePtr TypeChecker::infer_value(const TypingContext& ctx, const Value& v) {
    return std::visit(
        overloaded{
            [&](const UnitValue&) {
                require_no_linear(ctx, "unit", v.loc);
                return unit_type();
            },
            [&](const NatValue&) {
                require_no_linear(ctx, "nat", v.loc);
                return nat_type();
            },
            [&](const VarValue& x) -> TypePtr {
                if (const Binding* b = ctx.find_linear(x.name)) {
                    if (ctx.linear().size() != 1)
                        for (const Binding& other : ctx.linear())
                            if (other.name != x.name)
                                type_error("LinearityViolation", "var", "linear " + other.name + " is never used", v.loc);
                    return b->type;
                }
                if (TypePtr t = ctx.find_param(x.name)) {
                    require_no_linear(ctx, "var", v.loc);
                    return t;
                }
                type_error("UnboundName", "var", "unbound variable " + x.name, v.loc);
            },
            [&](const LabelValue& l) -> TypePtr {
                const std::string name = name_of(l.label);
                const Binding* b = ctx.find_linear(name);
                if (!b) type_error("UnboundName", "label", "unbound label " + name, v.loc);
                for (const Binding& other : ctx.linear())
                    if (other.name != name)
                        type_error("LinearityViolation", "label", "linear " + other.name + " is never used", v.loc);
                return b->type;
            },
            [&](const LambdaValue& f) {
                const std::set<std::string> fv = free_names(v);
                for (const Binding& b : ctx.linear())
                    if (!fv.count(b.name))
                        type_error("LinearityViolation", "abs", "linear " + b.name + " is never used", v.loc);
                TypePtr body = infer_term(ctx.bind(f.param, f.param_type), *f.body);
                return arrow_type(f.param_type, body, sharp_context(ctx.linear()));
            },
            [&](const LiftValue& l) {
                if (!ctx.linear().empty())
                    type_error("NotAParameter", "lift", "lift captures linear " + ctx.linear().front().name, v.loc);
                return bang_type(infer_term(ctx, *l.body));
            },
            [&](const BoxedValue& b) {
                require_no_linear(ctx, "circ", v.loc);
                return circ_type(b.circuit->input_type(), b.circuit->output_type());
            },
            [&](const PairValue& p) {
                auto [c1, c2] = split_context(ctx, free_names(*p.first), free_names(*p.second), "pair", v.loc);
                TypePtr a = infer_value(c1, *p.first);
                TypePtr b = infer_value(c2, *p.second);
                return tensor_type(a, b);
            },
            [&](const TupleValue&) -> TypePtr {
                type_error("Internal", "tuple", "tuple value was not desugared", v.loc);
            },
            [&](const GateRefValue& g) -> TypePtr {
                type_error("Internal", "gate", "gate reference @" + g.name + " was not desugared", v.loc);
            },
        },
        v.node);
}

TypePtr TypeChecker::infer_term(const TypingContext& ctx, const Term& m) {
    return std::visit(
        overloaded{
            [&](const AppTerm& t) {
                auto [c1, c2] = split_context(ctx, free_names(*t.fn), free_names(*t.arg), "app", m.loc);
                TypePtr f = infer_value(c1, *t.fn);
                if (f->kind != Type::Kind::Arrow)
                    type_error("NotAFunction", "app", "applying a value of type " + print(*f), m.loc);
                TypePtr a = infer_value(c2, *t.arg);
                if (!same_type(*a, *f->left))
                    type_error("ShapeMismatch", "app",
                               "argument has type " + print(*a) + ", expected " + print(*f->left), m.loc);
                return f->right;
            },
            [&](const DestTerm& t) {
                if (t.first == t.second)
                    type_error("LinearityViolation", "dest", "pattern binds " + t.first + " twice", m.loc);
                auto [c1, c2] = split_context(ctx, free_names(*t.pair),
                                              minus(free_names(*t.body), {t.first, t.second}), "dest", m.loc);
                TypePtr p = infer_value(c1, *t.pair);
                if (p->kind != Type::Kind::Tensor)
                    type_error("ShapeMismatch", "dest", "destructuring a value of type " + print(*p), m.loc);
                return infer_term(c2.bind(t.first, p->left).bind(t.second, p->right), *t.body);
            },
            [&](const IfzTerm& t) {
                TypePtr c = infer_value(ctx.without_linear(), *t.cond);
                if (c->kind != Type::Kind::Nat)
                    type_error("ShapeMismatch", "ifz", "condition has type " + print(*c) + ", expected Nat", m.loc);
                TypePtr a = infer_term(ctx, *t.then_branch);
                TypePtr b = infer_term(ctx, *t.else_branch);
                if (!same_type(*a, *b))
                    type_error("ShapeMismatch", "ifz", "branches have types " + print(*a) + " and " + print(*b), m.loc);
                return a;
            },
            [&](const ForceTerm& t) {
                require_no_linear(ctx, "force", m.loc);
                TypePtr th = infer_value(ctx, *t.thunk);
                if (th->kind != Type::Kind::Bang)
                    type_error("ShapeMismatch", "force", "forcing a value of type " + print(*th), m.loc);
                return th->left;
            },
            [&](const BoxTerm& t) {
                TypePtr f = infer_value(ctx, *t.fn);
                if (f->kind != Type::Kind::Arrow)
                    type_error("NotAFunction", "box", "boxing a value of type " + print(*f), m.loc);
                if (!f->captured.flatten().empty())
                    type_error("BoxCapturesWires", "box", "boxed function captures " + f->captured.to_string(), m.loc);
                if (!ctx.linear().empty())
                    type_error("NotAParameter", "box", "box uses linear " + ctx.linear().front().name, m.loc);
                if (!same_type(*f->left, *from_bundle(t.input)))
                    type_error("ShapeMismatch", "box",
                               "function takes " + print(*f->left) + ", box expects " + t.input.to_string(), m.loc);
                auto out = to_bundle(*f->right);
                if (!out) type_error("ShapeMismatch", "box", "boxed function returns " + print(*f->right), m.loc);
                return circ_type(t.input, *out);
            },
            [&](const ApplyTerm& t) {
                auto [c1, c2] = split_context(ctx, free_names(*t.circuit), free_names(*t.arg), "apply", m.loc);
                TypePtr c = infer_value(c1, *t.circuit);
                if (c->kind != Type::Kind::Circ)
                    type_error("NotACircuit", "apply", "applying a value of type " + print(*c), m.loc);
                TypePtr a = infer_value(c2, *t.arg);
                if (!same_type(*a, *from_bundle(c->circ_in)))
                    type_error("ShapeMismatch", "apply",
                               "argument has type " + print(*a) + ", circuit expects " + c->circ_in.to_string(), m.loc);
                return from_bundle(c->circ_out);
            },
            [&](const ReturnTerm& t) { return infer_value(ctx, *t.value); },
            [&](const LetTerm& t) {
                auto [c1, c2] =
                    split_context(ctx, free_names(*t.bound), minus(free_names(*t.body), {t.name}), "let", m.loc);
                TypePtr a = infer_term(c1, *t.bound);
                return infer_term(c2.bind(t.name, a), *t.body);
            },
            [&](const LetTupleTerm&) -> TypePtr {
                type_error("Internal", "let", "tuple pattern was not desugared", m.loc);
            },
        },
        m.node);
}

bool TypeChecker::check_value(const TypingContext& ctx, const Value& v, const Type& expected) {
    if (const auto* p = std::get_if<PairValue>(&v.node); p && expected.kind == Type::Kind::Tensor) {
        try {
            auto [c1, c2] = split_context(ctx, free_names(*p->first), free_names(*p->second), "pair", v.loc);
            return check_value(c1, *p->first, *expected.left) && check_value(c2, *p->second, *expected.right);
        } catch (const TypeError&) {
            return false;
        }
    }
    if (const auto* f = std::get_if<LambdaValue>(&v.node); f && expected.kind == Type::Kind::Arrow) {
        const CircuitObject target = expected.captured.flatten();
        std::vector<Binding> pool = ctx.linear();
        std::vector<Binding> chosen;
        std::vector<bool> used(pool.size(), false);
        // Depth-first search over capture orders whose wires spell `target`.
        std::function<bool(std::size_t)> search = [&](std::size_t offset) -> bool {
            if (chosen.size() == pool.size()) {
                if (offset != target.size()) return false;
                try {
                    TypingContext inner = ctx.with_linear(chosen);
                    if (!same_type(*f->param_type, *expected.left)) return false;
                    TypePtr body = infer_term(inner.bind(f->param, f->param_type), *f->body);
                    return same_type(*body, *expected.right);
                } catch (const TypeError&) {
                    return false;
                }
            }
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (used[i]) continue;
                const CircuitObject w = sharp_wires(*pool[i].type);
                if (offset + w.size() > target.size() ||
                    !std::equal(w.begin(), w.end(), target.begin() + static_cast<std::ptrdiff_t>(offset)))
                    continue;
                used[i] = true;
                chosen.push_back(pool[i]);
                if (search(offset + w.size())) return true;
                chosen.pop_back();
                used[i] = false;
            }
            return false;
        };
        return search(0);
    }
    try {
        return same_type(*infer_value(ctx, v), expected);
    } catch (const TypeError&) {
        return false;
    }
}

TypedProgram typecheck_program(const Program& p) {
    TypingContext ctx = TypingContext::from_labels(p.inputs);
    TypeChecker checker;
    return TypedProgram{checker.infer_term(ctx, *p.main), ctx};
}

namespace {

TypingContext configuration_context(const LabelContext& in_ctx, const Circuit& c, const LabelContext& out_ctx,
                                    const std::set<std::string>& fv, LabelContext& passthrough) {
    if (c.dom() != in_ctx.object())
        type_error("ShapeMismatch", "config", "circuit domain " + to_string(c.dom()) + " does not match inputs", {});
    if (c.cod() != out_ctx.object())
        type_error("ShapeMismatch", "config", "circuit codomain " + to_string(c.cod()) + " does not match outputs", {});
    LabelContext used;
    for (const auto& [l, w] : out_ctx.entries()) (fv.count(name_of(l)) ? used : passthrough).push_back(l, w);
    for (const std::string& name : fv)
        if (!name.empty() && name[0] == '#') {
            bool found = false;
            for (const auto& [l, w] : used.entries()) found = found || name_of(l) == name;
            if (!found) type_error("UnboundName", "config", "label " + name + " is not a circuit output", {});
        }
    return TypingContext::from_labels(used);
}

} // namespace

ConfigurationType check_configuration(const LabelContext& in_ctx, const Circuit& c, const LabelContext& out_ctx,
                                      const Term& m) {
    ConfigurationType out;
    TypingContext ctx = configuration_context(in_ctx, c, out_ctx, free_names(m), out.passthrough);
    TypeChecker checker;
    out.type = checker.infer_term(ctx, m);
    return out;
}

bool check_value_configuration(const LabelContext& in_ctx, const Circuit& c, const LabelContext& out_ctx,
                               const Value& v, const Type& expected) {
    LabelContext passthrough;
    try {
        TypingContext ctx = configuration_context(in_ctx, c, out_ctx, free_names(v), passthrough);
        TypeChecker checker;
        return checker.check_value(ctx, v, expected);
    } catch (const TypeError&) {
        return false;
    }
}

} // namespace pqc
