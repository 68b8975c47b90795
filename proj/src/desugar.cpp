#include "pqc/syntax.hpp"

#include "overloaded.hpp"

namespace pqc {

namespace {

using namespace ast;

class Desugarer {
public:
    explicit Desugarer(const GateSpec& spec) : spec_(spec) {}

    ValuePtr value(const ValuePtr& v) {
        return std::visit(
            overloaded{
                [&](const LambdaValue& f) {
                    return make_value(LambdaValue{f.param, f.param_type, term(f.body)}, v->loc);
                },
                [&](const LiftValue& l) { return make_value(LiftValue{term(l.body)}, v->loc); },
                [&](const PairValue& p) { return make_value(PairValue{value(p.first), value(p.second)}, v->loc); },
                [&](const TupleValue& t) {
                    ValuePtr acc = value(t.items.back());
                    for (std::size_t i = t.items.size() - 1; i-- > 0;)
                        acc = make_value(PairValue{value(t.items[i]), acc}, t.items[i]->loc);
                    return make_value(acc->node, v->loc);
                },
                [&](const GateRefValue& g) {
                    if (!spec_.has_literal(g.name))
                        throw ParseError("UnknownGate", "unknown gate '@" + g.name + "' at " + to_string(v->loc), v->loc);
                    return make_value(
                        BoxedValue{std::make_shared<const BoxedCircuit>(spec_.literal(g.name)), g.name}, v->loc);
                },
                [&](const auto&) { return v; },
            },
            v->node);
    }

    TermPtr term(const TermPtr& m) {
        return std::visit(
            overloaded{
                [&](const AppTerm& t) { return make_term(AppTerm{value(t.fn), value(t.arg)}, m->loc); },
                [&](const DestTerm& t) {
                    return make_term(DestTerm{t.first, t.second, value(t.pair), term(t.body)}, m->loc);
                },
                [&](const IfzTerm& t) {
                    return make_term(IfzTerm{value(t.cond), term(t.then_branch), term(t.else_branch)}, m->loc);
                },
                [&](const ForceTerm& t) { return make_term(ForceTerm{value(t.thunk)}, m->loc); },
                [&](const BoxTerm& t) { return make_term(BoxTerm{t.input, value(t.fn)}, m->loc); },
                [&](const ApplyTerm& t) { return make_term(ApplyTerm{value(t.circuit), value(t.arg)}, m->loc); },
                [&](const ReturnTerm& t) { return make_term(ReturnTerm{value(t.value)}, m->loc); },
                [&](const LetTerm& t) { return make_term(LetTerm{t.name, term(t.bound), term(t.body)}, m->loc); },
                [&](const LetTupleTerm& t) { return let_tuple(t, m->loc); },
            },
            m->node);
    }

private:
    std::string fresh() { return "$p" + std::to_string(counter_++); }

    // let (x1, ..., xn) = V in N
    //   ~> dest x1, p1 = V in dest x2, p2 = p1 in ... dest x(n-1), xn = p(n-2) in N
    TermPtr dest_chain(const std::vector<std::string>& names, std::size_t from, ValuePtr source,
                       const TermPtr& body, SourceLoc loc) {
        if (names.size() - from == 2)
            return make_term(DestTerm{names[from], names[from + 1], std::move(source), body}, loc);
        std::string rest = fresh();
        TermPtr inner = dest_chain(names, from + 1, make_value(VarValue{rest}, loc), body, loc);
        return make_term(DestTerm{names[from], rest, std::move(source), std::move(inner)}, loc);
    }

    TermPtr let_tuple(const LetTupleTerm& t, SourceLoc loc) {
        TermPtr body = term(t.body);
        if (t.bound_value) return dest_chain(t.names, 0, value(t.bound_value), body, loc);
        std::string tmp = fresh();
        TermPtr dests = dest_chain(t.names, 0, make_value(VarValue{tmp}, loc), body, loc);
        return make_term(LetTerm{tmp, term(t.bound_term), std::move(dests)}, loc);
    }

    const GateSpec& spec_;
    std::size_t counter_ = 0;
};

} // namespace

ast::TermPtr desugar(const ast::TermPtr& m, const GateSpec& spec) {
    return Desugarer(spec).term(m);
}

ast::ValuePtr desugar(const ast::ValuePtr& v, const GateSpec& spec) {
    return Desugarer(spec).value(v);
}

} // namespace pqc
