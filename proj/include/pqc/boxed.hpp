#pragma once

#include "pqc/circuit.hpp"
#include "pqc/labels.hpp"

#include <vector>

namespace pqc {

/// A closed circuit value (ℓ⃗, C, k⃗). `dom_labels()[i]` names position i of
/// `body().dom()` and `cod_labels()[j]` names position j of `body().cod()`.
/// The input bundle mentions every domain label exactly once, likewise the
/// output bundle for the codomain.
class BoxedCircuit {
public:
    BoxedCircuit(WireBundle inputs, Circuit body, WireBundle outputs,
                 std::vector<Label> dom_labels, std::vector<Label> cod_labels);

    /// Wraps a circuit whose interfaces are already in bundle order; the
    /// bundles take the given shapes with local labels 0, 1, ...
    static BoxedCircuit literal(const Circuit& body, const BundleType& dom_shape,
                                const BundleType& cod_shape);

    const WireBundle& inputs() const { return inputs_; }
    const WireBundle& outputs() const { return outputs_; }
    const Circuit& body() const { return body_; }
    const std::vector<Label>& dom_labels() const { return dom_labels_; }
    const std::vector<Label>& cod_labels() const { return cod_labels_; }

    /// Wire types in input-bundle order.
    CircuitObject input_object() const;
    CircuitObject output_object() const;
    BundleType input_type() const;
    BundleType output_type() const;

    /// The body conjugated by the interface permutations, so that its domain
    /// is in input-bundle order and its codomain in output-bundle order.
    Circuit normalized() const;

    bool operator==(const BoxedCircuit&) const = default;

private:
    WireBundle inputs_;
    Circuit body_;
    WireBundle outputs_;
    std::vector<Label> dom_labels_;
    std::vector<Label> cod_labels_;
};

struct AppendResult {
    Circuit circuit;
    WireBundle outputs;
    LabelContext context;
};

/// Attaches `boxed` to the wires of `c` named by `attach`. The outputs get
/// fresh labels. Attached wires are first permuted into a contiguous block
/// at the position of the lowest attached wire; when input and output
/// arities agree the inverse permutation follows, so unrelated wires keep
/// their positions. Zero-input circuits add their outputs at the end.
AppendResult append(const Circuit& c, const LabelContext& out_ctx, const WireBundle& attach,
                    const BoxedCircuit& boxed, LabelSupply& supply);

} // namespace pqc
