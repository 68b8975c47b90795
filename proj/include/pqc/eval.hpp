#pragma once

#include "pqc/ast.hpp"
#include "pqc/boxed.hpp"
#include "pqc/circuit.hpp"
#include "pqc/labels.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace pqc {

/// (C, M): `out_ctx` names the outputs of `circuit`, in order.
struct Configuration {
    Circuit circuit;
    LabelContext out_ctx;
    ast::TermPtr term;
};

/// (C, V): the result of evaluation.
struct ValueConfiguration {
    Circuit circuit;
    LabelContext out_ctx;
    ast::ValuePtr value;
};

/// Capture-avoiding M[V/x].
ast::TermPtr substitute(const ast::TermPtr& m, const std::string& x, const ast::ValuePtr& v);
ast::ValuePtr substitute(const ast::ValuePtr& w, const std::string& x, const ast::ValuePtr& v);

/// The value spelling a wire bundle: * for I, labels and pairs.
ast::ValuePtr bundle_value(const WireBundle& b);
/// The wire bundle spelled by a value, if it is built from *, labels and pairs.
std::optional<WireBundle> value_bundle(const ast::Value& v);

/// Label supply for evaluating a program over `inputs`: one past the largest
/// input label.
LabelSupply supply_after(const LabelContext& inputs);

/// Big-step evaluator. Every fresh label comes from `supply`; one supply
/// serves one evaluation at a time.
class Evaluator {
public:
    explicit Evaluator(LabelSupply& supply, std::optional<std::uint64_t> fuel = std::nullopt)
        : supply_(supply), fuel_(fuel) {}

    /// Throws EvalError with code Stuck when no rule applies and
    /// FuelExhausted when the step budget runs out.
    ValueConfiguration evaluate(const Configuration& cfg);

    std::uint64_t steps() const { return steps_; }

private:
    ast::ValuePtr eval(Circuit& c, LabelContext& ctx, ast::TermPtr m);
    BoxedCircuit box(const BundleType& input, const ast::ValuePtr& fn);
    void tick();

    LabelSupply& supply_;
    std::optional<std::uint64_t> fuel_;
    std::uint64_t steps_ = 0;
};

/// Evaluates a program's main term from the identity circuit on its inputs.
ValueConfiguration run_program(const ast::Program& p, std::optional<std::uint64_t> fuel = std::nullopt);

} // namespace pqc
