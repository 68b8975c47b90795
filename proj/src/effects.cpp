#include "pqc/effects.hpp"

#include "pqc/error.hpp"
#include "pqc/syntax.hpp"

#include "overloaded.hpp"

#include <algorithm>
#include <map>

namespace pqc {

using namespace ast;

namespace {

TypePtr with_effect(const TypePtr& t, std::optional<Effect> e) {
    auto out = std::make_shared<Type>(*t);
    out->effect = e ? std::make_shared<const Effect>(std::move(*e)) : nullptr;
    return out;
}

bool unitlike(const Type& t) {
    return t.kind == Type::Kind::Unit || t.kind == Type::Kind::BundleUnit;
}

[[noreturn]] void effect_error(const std::string& code, const std::string& msg, SourceLoc loc) {
    throw EffectError(code, msg + " at " + to_string(loc), loc);
}

std::set<std::string> minus(std::set<std::string> s, std::initializer_list<std::string> names) {
    for (const auto& n : names) s.erase(n);
    return s;
}

} // namespace

TypePtr EffectChecker::resolve(const TypePtr& t) const {
    switch (t->kind) {
    case Type::Kind::Tensor: {
        auto out = std::make_shared<Type>(*t);
        out->left = resolve(t->left);
        out->right = resolve(t->right);
        return out;
    }
    case Type::Kind::Arrow:
    case Type::Kind::Bang:
    case Type::Kind::Circ: {
        auto out = std::make_shared<Type>(*t);
        CircuitObject dom;
        CircuitObject cod;
        if (t->kind == Type::Kind::Arrow) {
            out->left = resolve(t->left);
            out->right = resolve(t->right);
            dom = concat(t->captured.flatten(), sharp_wires(*t->left));
            cod = sharp_wires(*t->right);
        } else if (t->kind == Type::Kind::Bang) {
            out->left = resolve(t->left);
            cod = sharp_wires(*t->left);
        } else {
            dom = t->circ_in.flatten();
            cod = t->circ_out.flatten();
        }
        if (t->effect_literal) {
            auto e = algebra_.from_literal(*t->effect_literal, object_of(dom), object_of(cod));
            if (!e)
                throw EffectError("UnsupportedLiteral", "algebra " + std::string(metric_name(algebra_.metric())) +
                                                            " has no integer annotations; found " + print(*t));
            out->effect = std::make_shared<const Effect>(std::move(*e));
        }
        return out;
    }
    default: return t;
    }
}

bool EffectChecker::subtype(const Type& a, const Type& b) const {
    if (unitlike(a) && unitlike(b)) return true;
    if (a.kind != b.kind) return false;
    auto effect_leq = [&] {
        if (!b.effect) return true;
        return a.effect && algebra_.leq(*a.effect, *b.effect);
    };
    switch (a.kind) {
    case Type::Kind::Wire: return a.wire == b.wire;
    case Type::Kind::Tensor: return subtype(*a.left, *b.left) && subtype(*a.right, *b.right);
    case Type::Kind::Arrow:
        return a.captured.flatten() == b.captured.flatten() && subtype(*b.left, *a.left) &&
               subtype(*a.right, *b.right) && effect_leq();
    case Type::Kind::Bang: return subtype(*a.left, *b.left) && effect_leq();
    case Type::Kind::Circ: return a.circ_in == b.circ_in && a.circ_out == b.circ_out && effect_leq();
    default: return true;
    }
}

TypePtr EffectChecker::join_type(const TypePtr& a, const TypePtr& b, SourceLoc loc) const {
    if (unitlike(*a) && unitlike(*b)) return a;
    if (!same_type(*a, *b)) effect_error("ShapeMismatch", "branches have types " + print(*a) + " and " + print(*b), loc);
    auto joined = [&]() -> std::optional<Effect> {
        if (!a->effect || !b->effect) return std::nullopt;
        return algebra_.join(*a->effect, *b->effect);
    };
    switch (a->kind) {
    case Type::Kind::Tensor: {
        auto out = std::make_shared<Type>(*a);
        out->left = join_type(a->left, b->left, loc);
        out->right = join_type(a->right, b->right, loc);
        return out;
    }
    case Type::Kind::Arrow: {
        if (!subtype(*a->left, *b->left) || !subtype(*b->left, *a->left))
            effect_error("NoJoin", "function arguments " + print(*a->left) + " and " + print(*b->left) + " differ", loc);
        auto out = std::make_shared<Type>(*with_effect(a, joined()));
        out->right = join_type(a->right, b->right, loc);
        return out;
    }
    case Type::Kind::Bang: {
        auto out = std::make_shared<Type>(*with_effect(a, joined()));
        out->left = join_type(a->left, b->left, loc);
        return out;
    }
    case Type::Kind::Circ: return with_effect(a, joined());
    default: return a;
    }
}

Effect EffectChecker::perm_effect(const std::vector<Binding>& from, const std::vector<Binding>& to) const {
    const CircuitObject obj = wires_of(from);
    std::map<std::string, std::size_t> offset;
    std::size_t pos = 0;
    for (const Binding& b : from) {
        offset[b.name] = pos;
        pos += sharp_wires(*b.type).size();
    }
    std::vector<std::size_t> sources;
    for (const Binding& b : to) {
        auto it = offset.find(b.name);
        if (it == offset.end()) throw EffectError("EffectObjectMismatch", "binding " + b.name + " missing from context");
        const std::size_t n = sharp_wires(*b.type).size();
        for (std::size_t k = 0; k < n; ++k) sources.push_back(it->second + k);
    }
    if (sources.size() != obj.size() || to.size() != from.size())
        throw EffectError("EffectObjectMismatch", "context reordering does not cover the context");
    return algebra_.abstract(Circuit::permutation(obj, std::move(sources)), spec_);
}

std::vector<Binding> EffectChecker::value_order(const TypingContext& ctx, const Value& v) const {
    if (const auto* x = std::get_if<VarValue>(&v.node)) {
        if (const Binding* b = ctx.find_linear(x->name)) return {*b};
        return {};
    }
    if (const auto* l = std::get_if<LabelValue>(&v.node)) {
        if (const Binding* b = ctx.find_linear(name_of(l->label))) return {*b};
        return {};
    }
    if (const auto* p = std::get_if<PairValue>(&v.node)) {
        std::vector<Binding> out = value_order(ctx, *p->first);
        std::vector<Binding> rest = value_order(ctx, *p->second);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }
    if (std::holds_alternative<LambdaValue>(v.node)) {
        const std::set<std::string> fv = free_names(v);
        std::vector<Binding> out;
        for (const Binding& b : ctx.linear())
            if (fv.count(b.name)) out.push_back(b);
        return out;
    }
    return {};
}

Effect EffectChecker::require_effect(const Type& t, const std::string& rule, SourceLoc loc) const {
    if (!t.effect)
        effect_error("MissingEffectAnnotation", rule + " needs an effect annotation on " + print(t), loc);
    return *t.effect;
}

void EffectChecker::check_endpoints(const TypingContext& ctx, const Type& type, const Effect& e, SourceLoc loc) const {
    if (e.dom != object_of(wires_of(ctx.linear())) || e.cod != object_of(sharp_wires(type)))
        effect_error("EffectObjectMismatch", "effect " + to_string(e) + " does not match the judgment", loc);
}

TypePtr EffectChecker::infer_value(const TypingContext& ctx, const Value& v) {
    return std::visit(
        overloaded{
            [&](const UnitValue&) { return unit_type(); },
            [&](const NatValue&) { return nat_type(); },
            [&](const VarValue& x) -> TypePtr {
                if (const Binding* b = ctx.find_linear(x.name)) return b->type;
                if (TypePtr t = ctx.find_param(x.name)) return t;
                effect_error("UnboundName", "unbound variable " + x.name, v.loc);
            },
            [&](const LabelValue& l) -> TypePtr {
                if (const Binding* b = ctx.find_linear(name_of(l.label))) return b->type;
                effect_error("UnboundName", "unbound label " + name_of(l.label), v.loc);
            },
            [&](const LambdaValue& f) {
                TypePtr param = resolve(f.param_type);
                EffectJudgment body = infer_term(ctx.bind(f.param, param), *f.body);
                return with_effect(arrow_type(param, body.type, sharp_context(ctx.linear())), body.effect);
            },
            [&](const LiftValue& l) {
                EffectJudgment body = infer_term(ctx, *l.body);
                return with_effect(bang_type(body.type), body.effect);
            },
            [&](const BoxedValue& b) {
                Effect e = algebra_.abstract(b.circuit->normalized(), spec_);
                return with_effect(circ_type(b.circuit->input_type(), b.circuit->output_type()), e);
            },
            [&](const PairValue& p) {
                auto [c1, c2] = split_context(ctx, free_names(*p.first), free_names(*p.second), "pair", v.loc);
                TypePtr a = infer_value(c1, *p.first);
                TypePtr b = infer_value(c2, *p.second);
                return tensor_type(a, b);
            },
            [&](const TupleValue&) -> TypePtr { effect_error("Internal", "tuple value was not desugared", v.loc); },
            [&](const GateRefValue&) -> TypePtr {
                effect_error("Internal", "gate reference was not desugared", v.loc);
            },
        },
        v.node);
}

EffectJudgment EffectChecker::infer_term(const TypingContext& ctx, const Term& m) {
    auto concat_bindings = [](std::vector<Binding> a, const std::vector<Binding>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    EffectJudgment j = std::visit(
        overloaded{
            [&](const ReturnTerm& t) {
                TypePtr type = infer_value(ctx, *t.value);
                return EffectJudgment{type, perm_effect(ctx.linear(), value_order(ctx, *t.value))};
            },
            [&](const LetTerm& t) {
                auto [c1, c2] =
                    split_context(ctx, free_names(*t.bound), minus(free_names(*t.body), {t.name}), "let", m.loc);
                EffectJudgment first = infer_term(c1, *t.bound);
                EffectJudgment second = infer_term(c2.bind(t.name, first.type), *t.body);
                Effect e = perm_effect(ctx.linear(), concat_bindings(c2.linear(), c1.linear()));
                e = algebra_.compose(e, algebra_.whisker_left(object_of(wires_of(c2.linear())), first.effect));
                return EffectJudgment{second.type, algebra_.compose(e, second.effect)};
            },
            [&](const DestTerm& t) {
                auto [c1, c2] = split_context(ctx, free_names(*t.pair),
                                              minus(free_names(*t.body), {t.first, t.second}), "dest", m.loc);
                TypePtr p = infer_value(c1, *t.pair);
                if (p->kind != Type::Kind::Tensor)
                    effect_error("ShapeMismatch", "destructuring a value of type " + print(*p), m.loc);
                EffectJudgment body = infer_term(c2.bind(t.first, p->left).bind(t.second, p->right), *t.body);
                Effect e = perm_effect(ctx.linear(), concat_bindings(c2.linear(), value_order(c1, *t.pair)));
                return EffectJudgment{body.type, algebra_.compose(e, body.effect)};
            },
            [&](const AppTerm& t) {
                auto [c1, c2] = split_context(ctx, free_names(*t.fn), free_names(*t.arg), "app", m.loc);
                TypePtr f = infer_value(c1, *t.fn);
                TypePtr a = infer_value(c2, *t.arg);
                if (f->kind != Type::Kind::Arrow)
                    effect_error("NotAFunction", "applying a value of type " + print(*f), m.loc);
                if (!subtype(*a, *f->left))
                    effect_error("EffectAnnotationViolated",
                                 "argument of type " + print(*a) + " exceeds the annotation " + print(*f->left), m.loc);
                Effect e = perm_effect(ctx.linear(), concat_bindings(value_order(c1, *t.fn), value_order(c2, *t.arg)));
                return EffectJudgment{f->right, algebra_.compose(e, require_effect(*f, "app", m.loc))};
            },
            [&](const ApplyTerm& t) {
                auto [c1, c2] = split_context(ctx, free_names(*t.circuit), free_names(*t.arg), "apply", m.loc);
                TypePtr c = infer_value(c1, *t.circuit);
                infer_value(c2, *t.arg);
                if (c->kind != Type::Kind::Circ)
                    effect_error("NotACircuit", "applying a value of type " + print(*c), m.loc);
                Effect e =
                    perm_effect(ctx.linear(), concat_bindings(value_order(c1, *t.circuit), value_order(c2, *t.arg)));
                return EffectJudgment{from_bundle(c->circ_out),
                                      algebra_.compose(e, require_effect(*c, "apply", m.loc))};
            },
            [&](const ForceTerm& t) {
                TypePtr b = infer_value(ctx, *t.thunk);
                if (b->kind != Type::Kind::Bang)
                    effect_error("ShapeMismatch", "forcing a value of type " + print(*b), m.loc);
                return EffectJudgment{b->left, require_effect(*b, "force", m.loc)};
            },
            [&](const BoxTerm& t) {
                TypePtr f = infer_value(ctx, *t.fn);
                if (f->kind != Type::Kind::Arrow)
                    effect_error("NotAFunction", "boxing a value of type " + print(*f), m.loc);
                auto out = to_bundle(*f->right);
                if (!out) effect_error("ShapeMismatch", "boxed function returns " + print(*f->right), m.loc);
                Effect e = require_effect(*f, "box", m.loc);
                return EffectJudgment{with_effect(circ_type(t.input, *out), e), algebra_.identity(object_of({}))};
            },
            [&](const IfzTerm& t) {
                infer_value(ctx.without_linear(), *t.cond);
                EffectJudgment a = infer_term(ctx, *t.then_branch);
                EffectJudgment b = infer_term(ctx, *t.else_branch);
                return EffectJudgment{join_type(a.type, b.type, m.loc), algebra_.join(a.effect, b.effect)};
            },
            [&](const LetTupleTerm&) -> EffectJudgment {
                effect_error("Internal", "tuple pattern was not desugared", m.loc);
            },
        },
        m.node);
    check_endpoints(ctx, *j.type, j.effect, m.loc);
    return j;
}

bool check_ascription(const CircuitAlgebra& algebra, const Effect& inferred, const Effect& declared) {
    if (inferred.metric != declared.metric || inferred.dom != declared.dom || inferred.cod != declared.cod)
        throw EffectError("EffectObjectMismatch",
                          "cannot compare " + to_string(inferred) + " with " + to_string(declared));
    return algebra.leq(inferred, declared);
}

EffectJudgment infer_program(const Program& p, const CircuitAlgebra& algebra, const GateSpec& spec) {
    typecheck_program(p);
    EffectChecker checker(algebra, spec);
    return checker.infer_term(TypingContext::from_labels(p.inputs), *p.main);
}

namespace {

/// Labels of a value in the order its type lays out their wires. Closures
/// list captured labels by first occurrence.
void collect_labels(const Value& v, std::vector<Label>& out);

void collect_labels(const Term& m, std::vector<Label>& out) {
    std::visit(overloaded{
                   [&](const AppTerm& t) {
                       collect_labels(*t.fn, out);
                       collect_labels(*t.arg, out);
                   },
                   [&](const DestTerm& t) {
                       collect_labels(*t.pair, out);
                       collect_labels(*t.body, out);
                   },
                   [&](const IfzTerm& t) {
                       collect_labels(*t.then_branch, out);
                       collect_labels(*t.else_branch, out);
                   },
                   [&](const ForceTerm& t) { collect_labels(*t.thunk, out); },
                   [&](const BoxTerm& t) { collect_labels(*t.fn, out); },
                   [&](const ApplyTerm& t) {
                       collect_labels(*t.circuit, out);
                       collect_labels(*t.arg, out);
                   },
                   [&](const ReturnTerm& t) { collect_labels(*t.value, out); },
                   [&](const LetTerm& t) {
                       collect_labels(*t.bound, out);
                       collect_labels(*t.body, out);
                   },
                   [&](const LetTupleTerm& t) {
                       if (t.bound_term) collect_labels(*t.bound_term, out);
                       if (t.bound_value) collect_labels(*t.bound_value, out);
                       collect_labels(*t.body, out);
                   },
               },
               m.node);
}

void collect_labels(const Value& v, std::vector<Label>& out) {
    std::visit(overloaded{
                   [&](const LabelValue& l) {
                       if (std::find(out.begin(), out.end(), l.label) == out.end()) out.push_back(l.label);
                   },
                   [&](const LambdaValue& f) { collect_labels(*f.body, out); },
                   [&](const LiftValue& l) { collect_labels(*l.body, out); },
                   [&](const PairValue& p) {
                       collect_labels(*p.first, out);
                       collect_labels(*p.second, out);
                   },
                   [&](const TupleValue& t) {
                       for (const auto& item : t.items) collect_labels(*item, out);
                   },
                   [&](const auto&) {},
               },
               v.node);
}

} // namespace

VerifyReport verify_dynamic(const Program& p, const CircuitAlgebra& algebra, const GateSpec& spec,
                            std::optional<std::uint64_t> fuel) {
    EffectJudgment j = infer_program(p, algebra, spec);
    ValueConfiguration result = run_program(p, fuel);
    Circuit f = extension(Circuit::identity(p.inputs.object()), result.circuit);

    std::vector<Label> order;
    collect_labels(*result.value, order);
    for (Label l : result.out_ctx.labels())
        if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);
    std::vector<std::size_t> sources;
    for (Label l : order) {
        auto idx = result.out_ctx.index_of(l);
        if (!idx) throw EvalError("Stuck", "result mentions " + to_string(l) + ", which is not a circuit output");
        sources.push_back(*idx);
    }
    f = compose(f, Circuit::permutation(f.cod(), std::move(sources)));

    Effect observed = algebra.abstract(f, spec);
    const bool comparable = observed.dom == j.effect.dom && observed.cod == j.effect.cod;
    const bool holds = comparable && algebra.leq(observed, j.effect);
    return VerifyReport{j.effect, std::move(observed), holds, std::move(result)};
}

} // namespace pqc
