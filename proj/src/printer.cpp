#include "pqc/syntax.hpp"

#include "overloaded.hpp"

namespace pqc {

namespace {

using namespace ast;

bool generated(const std::string& name) {
    return !name.empty() && name[0] == '$';
}

std::string annotation(const Type& t) {
    if (t.effect_literal) return std::to_string(*t.effect_literal);
    if (t.effect) return "{" + to_string(*t.effect) + "}";
    return {};
}

std::string type_str(const Type& t, int prec);

std::string type_atom(const Type& t) {
    return type_str(t, 2);
}

// prec: 0 arrow position, 1 tensor operand, 2 prefix operand.
std::string type_str(const Type& t, int prec) {
    switch (t.kind) {
    case Type::Kind::Unit: return "1";
    case Type::Kind::Nat: return "Nat";
    case Type::Kind::BundleUnit: return "I";
    case Type::Kind::Wire: return std::string(to_string(t.wire));
    case Type::Kind::Tensor: {
        std::string s = type_str(*t.left, 2) + " * " + type_str(*t.right, 1);
        return prec >= 2 ? "(" + s + ")" : s;
    }
    case Type::Kind::Arrow: {
        std::string s = type_str(*t.left, 1) + " -o";
        const std::string eff = annotation(t);
        const bool has_capture = t.captured.kind() != BundleType::Kind::Unit;
        if (has_capture || !eff.empty()) {
            s += "[" + t.captured.to_string();
            if (!eff.empty()) s += "; " + eff;
            s += "]";
        }
        s += " " + type_str(*t.right, 0);
        return prec >= 1 ? "(" + s + ")" : s;
    }
    case Type::Kind::Bang: {
        const std::string eff = annotation(t);
        return "!" + (eff.empty() ? "" : "[" + eff + "]") + type_atom(*t.left);
    }
    case Type::Kind::Circ: {
        const std::string eff = annotation(t);
        return "Circ" + (eff.empty() ? "" : "[" + eff + "]") + "(" + t.circ_in.to_string() + ", " +
               t.circ_out.to_string() + ")";
    }
    }
    return {};
}

std::string term_str(const Term& m);
std::string value_str(const Value& v);

/// Lambdas and lifts extend to the right, so they are parenthesized
/// wherever something may follow.
std::string operand_str(const Value& v) {
    if (std::holds_alternative<LambdaValue>(v.node) || std::holds_alternative<LiftValue>(v.node))
        return "(" + value_str(v) + ")";
    return value_str(v);
}

std::string circuit_str(const BoxedValue& b) {
    if (!b.gate.empty()) return "@" + b.gate;
    const BoxedCircuit& c = *b.circuit;
    return "<circuit " + c.inputs().to_string() + " : " + to_string(c.body().dom()) + " -> " +
           to_string(c.body().cod()) + " : " + c.outputs().to_string() + ">";
}

std::string value_str(const Value& v) {
    return std::visit(overloaded{
                          [](const UnitValue&) -> std::string { return "*"; },
                          [](const NatValue& n) { return std::to_string(n.n); },
                          [](const VarValue& x) { return x.name; },
                          [](const LabelValue& l) { return to_string(l.label); },
                          [](const LambdaValue& f) {
                              return "\\" + f.param + ":" + type_str(*f.param_type, 0) + ". " + term_str(*f.body);
                          },
                          [](const LiftValue& l) { return "lift " + term_str(*l.body); },
                          [](const BoxedValue& b) { return circuit_str(b); },
                          [](const PairValue& p) {
                              std::string s = "(" + operand_str(*p.first);
                              const Value* rest = p.second.get();
                              while (const auto* q = std::get_if<PairValue>(&rest->node)) {
                                  s += ", " + operand_str(*q->first);
                                  rest = q->second.get();
                              }
                              return s + ", " + operand_str(*rest) + ")";
                          },
                          [](const TupleValue& t) {
                              std::string s = "(";
                              for (std::size_t i = 0; i < t.items.size(); ++i)
                                  s += (i ? ", " : "") + operand_str(*t.items[i]);
                              return s + ")";
                          },
                          [](const GateRefValue& g) { return "@" + g.name; },
                      },
                      v.node);
}

/// Bound term of a let, wrapped when it would otherwise swallow "in".
std::string bound_str(const Term& m) {
    const bool open = std::holds_alternative<LetTerm>(m.node) || std::holds_alternative<DestTerm>(m.node) ||
                      std::holds_alternative<LetTupleTerm>(m.node) || std::holds_alternative<IfzTerm>(m.node);
    return open ? "(" + term_str(m) + ")" : term_str(m);
}

/// Recognizes dest chains produced by desugaring a tuple pattern on `source`:
///   dest x1, $p = source in dest x2, $q = $p in ... in N
/// Collects x1, x2, ... and returns N.
const Term* tuple_chain(const DestTerm& d, std::vector<std::string>& names) {
    names.push_back(d.first);
    const DestTerm* cur = &d;
    for (;;) {
        if (!generated(cur->second)) {
            names.push_back(cur->second);
            return cur->body.get();
        }
        const auto* inner = std::get_if<DestTerm>(&cur->body->node);
        if (!inner) break;
        const auto* src = std::get_if<VarValue>(&inner->pair->node);
        if (!src || src->name != cur->second) break;
        if (free_names(*inner->body).count(cur->second)) break;
        names.push_back(inner->first);
        cur = inner;
    }
    names.push_back(cur->second);
    return cur->body.get();
}

std::string pattern_str(const std::vector<std::string>& names) {
    std::string s = "(";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
    return s + ")";
}

std::string term_str(const Term& m) {
    return std::visit(
        overloaded{
            [](const AppTerm& t) { return operand_str(*t.fn) + " " + operand_str(*t.arg); },
            [](const DestTerm& t) {
                std::vector<std::string> names;
                const Term* body = tuple_chain(t, names);
                return "let " + pattern_str(names) + " = " + operand_str(*t.pair) + " in " + term_str(*body);
            },
            [](const IfzTerm& t) {
                return "ifz " + operand_str(*t.cond) + " then " + bound_str(*t.then_branch) + " else " +
                       term_str(*t.else_branch);
            },
            [](const ForceTerm& t) { return "force " + operand_str(*t.thunk); },
            [](const BoxTerm& t) { return "box[" + t.input.to_string() + "] " + operand_str(*t.fn); },
            [](const ApplyTerm& t) {
                return "apply(" + operand_str(*t.circuit) + ", " + operand_str(*t.arg) + ")";
            },
            [](const ReturnTerm& t) { return "return " + operand_str(*t.value); },
            [](const LetTerm& t) {
                if (generated(t.name)) {
                    if (const auto* d = std::get_if<DestTerm>(&t.body->node)) {
                        const auto* src = std::get_if<VarValue>(&d->pair->node);
                        if (src && src->name == t.name) {
                            std::vector<std::string> names;
                            const Term* body = tuple_chain(*d, names);
                            if (!free_names(*body).count(t.name))
                                return "let " + pattern_str(names) + " = " + bound_str(*t.bound) + " in " +
                                       term_str(*body);
                        }
                    }
                }
                return "let " + t.name + " = " + bound_str(*t.bound) + " in " + term_str(*t.body);
            },
            [](const LetTupleTerm& t) {
                const std::string bound = t.bound_term ? bound_str(*t.bound_term) : operand_str(*t.bound_value);
                return "let " + pattern_str(t.names) + " = " + bound + " in " + term_str(*t.body);
            },
        },
        m.node);
}

} // namespace

std::string print(const ast::Term& m) {
    return term_str(m);
}

std::string print(const ast::Value& v) {
    return value_str(v);
}

std::string print(const ast::Type& t) {
    return type_str(t, 0);
}

std::string print(const ast::Program& p) {
    std::string s;
    if (!p.inputs.empty()) s += "inputs " + p.inputs.to_string() + ";\n";
    if (p.gates_path) s += "gates \"" + *p.gates_path + "\";\n";
    return s + term_str(*p.main) + "\n";
}

} // namespace pqc
