#include "pqc/eval.hpp"

#include "pqc/error.hpp"
#include "pqc/syntax.hpp"

#include "overloaded.hpp"

#include <algorithm>

namespace pqc {

using namespace ast;

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string name = base + "'";
    while (avoid.count(name)) name += "'";
    return name;
}

class Substituter {
public:
    Substituter(const std::string& x, const ValuePtr& v) : x_(x), v_(v), fv_(free_names(*v)) {}

    ValuePtr value(const ValuePtr& w) {
        return std::visit(
            overloaded{
                [&](const VarValue& y) { return y.name == x_ ? v_ : w; },
                [&](const LambdaValue& f) {
                    if (f.param == x_) return w;
                    auto [param, body] = rebind(f.param, f.body);
                    return make_value(LambdaValue{param, f.param_type, term(body)}, w->loc);
                },
                [&](const LiftValue& l) { return make_value(LiftValue{term(l.body)}, w->loc); },
                [&](const PairValue& p) { return make_value(PairValue{value(p.first), value(p.second)}, w->loc); },
                [&](const TupleValue& t) {
                    TupleValue out;
                    for (const auto& item : t.items) out.items.push_back(value(item));
                    return make_value(std::move(out), w->loc);
                },
                [&](const auto&) { return w; },
            },
            w->node);
    }

    TermPtr term(const TermPtr& m) {
        return std::visit(
            overloaded{
                [&](const AppTerm& t) { return make_term(AppTerm{value(t.fn), value(t.arg)}, m->loc); },
                [&](const DestTerm& t) {
                    ValuePtr pair = value(t.pair);
                    if (t.first == x_ || t.second == x_) return make_term(DestTerm{t.first, t.second, pair, t.body}, m->loc);
                    auto [first, body1] = rebind(t.first, t.body);
                    auto [second, body2] = rebind(t.second, body1);
                    return make_term(DestTerm{first, second, pair, term(body2)}, m->loc);
                },
                [&](const IfzTerm& t) {
                    return make_term(IfzTerm{value(t.cond), term(t.then_branch), term(t.else_branch)}, m->loc);
                },
                [&](const ForceTerm& t) { return make_term(ForceTerm{value(t.thunk)}, m->loc); },
                [&](const BoxTerm& t) { return make_term(BoxTerm{t.input, value(t.fn)}, m->loc); },
                [&](const ApplyTerm& t) { return make_term(ApplyTerm{value(t.circuit), value(t.arg)}, m->loc); },
                [&](const ReturnTerm& t) { return make_term(ReturnTerm{value(t.value)}, m->loc); },
                [&](const LetTerm& t) {
                    TermPtr bound = term(t.bound);
                    if (t.name == x_) return make_term(LetTerm{t.name, bound, t.body}, m->loc);
                    auto [name, body] = rebind(t.name, t.body);
                    return make_term(LetTerm{name, bound, term(body)}, m->loc);
                },
                [&](const LetTupleTerm& t) {
                    LetTupleTerm out{t.names, t.bound_term ? term(t.bound_term) : nullptr,
                                     t.bound_value ? value(t.bound_value) : nullptr, t.body};
                    if (std::find(t.names.begin(), t.names.end(), x_) == t.names.end()) {
                        TermPtr body = t.body;
                        for (auto& name : out.names) std::tie(name, body) = rebind(name, body);
                        out.body = term(body);
                    }
                    return make_term(std::move(out), m->loc);
                },
            },
            m->node);
    }

private:
    /// Renames binder `y` in `body` when it would capture a free name of V.
    std::pair<std::string, TermPtr> rebind(const std::string& y, const TermPtr& body) {
        if (!fv_.count(y)) return {y, body};
        std::set<std::string> avoid = fv_;
        const std::set<std::string> inner = free_names(*body);
        avoid.insert(inner.begin(), inner.end());
        avoid.insert(x_);
        std::string fresh = fresh_name(y, avoid);
        return {fresh, substitute(body, y, make_value(VarValue{fresh}))};
    }

    const std::string& x_;
    const ValuePtr& v_;
    std::set<std::string> fv_;
};

[[noreturn]] void stuck(const std::string& what, SourceLoc loc) {
    throw EvalError("Stuck", "evaluation is stuck: " + what + " at " + to_string(loc));
}

} // namespace

TermPtr substitute(const TermPtr& m, const std::string& x, const ValuePtr& v) {
    return Substituter(x, v).term(m);
}

ValuePtr substitute(const ValuePtr& w, const std::string& x, const ValuePtr& v) {
    return Substituter(x, v).value(w);
}

ValuePtr bundle_value(const WireBundle& b) {
    switch (b.kind()) {
    case WireBundle::Kind::Unit: return make_value(UnitValue{});
    case WireBundle::Kind::Label: return label(b.label());
    case WireBundle::Kind::Pair: return pair(bundle_value(b.first()), bundle_value(b.second()));
    }
    return nullptr;
}

std::optional<WireBundle> value_bundle(const Value& v) {
    if (std::holds_alternative<UnitValue>(v.node)) return WireBundle::unit();
    if (const auto* l = std::get_if<LabelValue>(&v.node)) return WireBundle::label(l->label);
    if (const auto* p = std::get_if<PairValue>(&v.node)) {
        auto a = value_bundle(*p->first);
        auto b = value_bundle(*p->second);
        if (a && b) return WireBundle::pair(*a, *b);
    }
    return std::nullopt;
}

LabelSupply supply_after(const LabelContext& inputs) {
    std::uint64_t next = 0;
    for (Label l : inputs.labels()) next = std::max(next, l.id + 1);
    return LabelSupply(next);
}

void Evaluator::tick() {
    ++steps_;
    if (fuel_ && steps_ > *fuel_) throw EvalError("FuelExhausted", "evaluation exceeded " + std::to_string(*fuel_) + " steps");
}

ValueConfiguration Evaluator::evaluate(const Configuration& cfg) {
    if (cfg.circuit.cod() != cfg.out_ctx.object())
        throw EvalError("Stuck", "configuration context does not match the circuit outputs");
    Circuit c = cfg.circuit;
    LabelContext ctx = cfg.out_ctx;
    ValuePtr v = eval(c, ctx, cfg.term);
    return ValueConfiguration{std::move(c), std::move(ctx), std::move(v)};
}

ValuePtr Evaluator::eval(Circuit& c, LabelContext& ctx, TermPtr m) {
    for (;;) {
        tick();
        const SourceLoc loc = m->loc;
        if (const auto* t = std::get_if<ReturnTerm>(&m->node)) return t->value;
        if (const auto* t = std::get_if<LetTerm>(&m->node)) {
            ValuePtr v = eval(c, ctx, t->bound);
            m = substitute(t->body, t->name, v);
            continue;
        }
        if (const auto* t = std::get_if<AppTerm>(&m->node)) {
            const auto* f = std::get_if<LambdaValue>(&t->fn->node);
            if (!f) stuck("applying a non-function", loc);
            m = substitute(f->body, f->param, t->arg);
            continue;
        }
        if (const auto* t = std::get_if<DestTerm>(&m->node)) {
            const auto* p = std::get_if<PairValue>(&t->pair->node);
            if (!p) stuck("destructuring a non-pair", loc);
            m = substitute(substitute(t->body, t->first, p->first), t->second, p->second);
            continue;
        }
        if (const auto* t = std::get_if<IfzTerm>(&m->node)) {
            const auto* n = std::get_if<NatValue>(&t->cond->node);
            if (!n) stuck("branching on a non-natural", loc);
            m = n->n == 0 ? t->then_branch : t->else_branch;
            continue;
        }
        if (const auto* t = std::get_if<ForceTerm>(&m->node)) {
            const auto* l = std::get_if<LiftValue>(&t->thunk->node);
            if (!l) stuck("forcing a non-thunk", loc);
            m = l->body;
            continue;
        }
        if (const auto* t = std::get_if<BoxTerm>(&m->node)) {
            return boxed(box(t->input, t->fn));
        }
        if (const auto* t = std::get_if<ApplyTerm>(&m->node)) {
            const auto* b = std::get_if<BoxedValue>(&t->circuit->node);
            if (!b) stuck("applying a non-circuit", loc);
            auto attach = value_bundle(*t->arg);
            if (!attach) stuck("applying a circuit to a non-bundle", loc);
            AppendResult r = append(c, ctx, *attach, *b->circuit, supply_);
            c = std::move(r.circuit);
            ctx = std::move(r.context);
            return bundle_value(r.outputs);
        }
        stuck("surface syntax was not desugared", loc);
    }
}

BoxedCircuit Evaluator::box(const BundleType& input, const ValuePtr& fn) {
    auto [qctx, inputs] = freshlabels(input, supply_);
    Circuit c = Circuit::identity(qctx.object());
    LabelContext ctx = qctx;
    ValuePtr v = eval(c, ctx, make_term(AppTerm{fn, bundle_value(inputs)}));
    auto outputs = value_bundle(*v);
    if (!outputs) stuck("boxed function returned a non-bundle", {});
    return BoxedCircuit(inputs, std::move(c), *outputs, qctx.labels(), ctx.labels());
}

ValueConfiguration run_program(const Program& p, std::optional<std::uint64_t> fuel) {
    LabelSupply supply = supply_after(p.inputs);
    Evaluator ev(supply, fuel);
    return ev.evaluate(Configuration{Circuit::identity(p.inputs.object()), p.inputs, p.main});
}

} // namespace pqc
