#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pqc {

enum class WireType : unsigned char { Qubit, Bit };

std::string_view to_string(WireType w);
std::optional<WireType> parse_wire_type(std::string_view s);

/// An object of the circuit category: an ordered list of wire types.
using CircuitObject = std::vector<WireType>;

std::string to_string(const CircuitObject& obj);
CircuitObject concat(const CircuitObject& a, const CircuitObject& b);

struct Gate {
    std::string name;
    CircuitObject dom;
    CircuitObject cod;

    bool operator==(const Gate&) const = default;
};

class GateRegistry {
public:
    /// H, X, Z, CNOT, meas, init, discard.
    static const GateRegistry& builtin();

    void add(Gate gate);
    const Gate* find(std::string_view name) const;
    const Gate& at(std::string_view name) const;
    const std::map<std::string, Gate, std::less<>>& gates() const { return gates_; }

private:
    std::map<std::string, Gate, std::less<>> gates_;
};

struct Placement {
    Gate gate;
    std::size_t at = 0;

    bool operator==(const Placement&) const = default;
};

/// Gates acting in parallel on disjoint contiguous wire ranges. Placements
/// are sorted by `at`; wires not covered pass through unchanged.
struct Layer {
    std::vector<Placement> placements;

    bool operator==(const Layer&) const = default;
};

/// Output wire j carries input wire sources[j].
struct Perm {
    std::vector<std::size_t> sources;

    bool is_identity() const;
    bool operator==(const Perm&) const = default;
};

using PrimStep = std::variant<Layer, Perm>;

/// Output object of a step applied to `in`; throws CircuitError when the step
/// does not fit.
CircuitObject step_output(const CircuitObject& in, const PrimStep& step);

/// Morphism of the free strict symmetric premonoidal category: a domain and
/// a sequence of steps. The codomain is derived and cached.
class Circuit {
public:
    Circuit() = default;

    static Circuit identity(CircuitObject obj);
    static Circuit from_steps(CircuitObject dom, std::vector<PrimStep> steps);
    static Circuit gate(const Gate& g);
    static Circuit layer(CircuitObject dom, Layer layer);
    static Circuit permutation(CircuitObject dom, std::vector<std::size_t> sources);

    const CircuitObject& dom() const { return dom_; }
    const CircuitObject& cod() const { return cod_; }
    const std::vector<PrimStep>& steps() const { return steps_; }
    bool is_identity() const { return steps_.empty(); }

    /// Appends a step in place.
    void push(PrimStep step);
    /// Appends every step of `tail`, whose domain must equal this codomain.
    void extend(const Circuit& tail);

    bool operator==(const Circuit&) const = default;

private:
    CircuitObject dom_;
    CircuitObject cod_;
    std::vector<PrimStep> steps_;
};

Circuit compose(const Circuit& c, const Circuit& d);
Circuit whisker_left(const CircuitObject& a, const Circuit& c);
Circuit whisker_right(const Circuit& c, const CircuitObject& b);
/// Swaps the blocks a and b: a ++ b -> b ++ a.
Circuit symmetry(const CircuitObject& a, const CircuitObject& b);
/// Fuses adjacent permutations and drops identity permutations.
Circuit canonicalize(const Circuit& c);

/// Steps of `final` beyond those of `prefix`; `prefix` must be a prefix of `final`.
Circuit extension(const Circuit& prefix, const Circuit& final);

/// Number of gate placements.
std::size_t gate_count(const Circuit& c);

} // namespace pqc
