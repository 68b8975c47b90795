#pragma once

#include "pqc/circuit.hpp"
#include "pqc/tropical.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pqc {

class GateSpec;

enum class Metric { GateCount, NaiveDepth, Width, Depth, Assert };

inline constexpr Metric kAllMetrics[] = {Metric::GateCount, Metric::NaiveDepth, Metric::Width,
                                         Metric::Depth, Metric::Assert};

/// CLI spelling: gates, depth-naive, width, depth, assert.
std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

/// Objects of every algebra are wire counts; the single-object algebras use 0.
using AlgebraObject = std::size_t;

/// (A, v, w): A[i][j] is the longest input i to output j path, v[i] the
/// longest path from input i into a gate without outputs, w[j] the longest
/// path from a gate without inputs to output j.
struct DepthTriple {
    TropicalMatrix a;
    std::vector<Tropical> v;
    std::vector<Tropical> w;

    bool operator==(const DepthTriple&) const = default;
};

/// Largest entry of A, v and w.
Tropical depth_bound(const DepthTriple& t);

/// Predicate transformer over computational basis states. Entry (b, z) is
/// the largest cost of reaching basis state z from b, −∞ when unreachable.
/// Bit i of a basis index, counted from the most significant end, is the
/// value of wire i.
class AssertTable {
public:
    struct Image {
        std::vector<std::uint64_t> post;
        std::uint64_t cost = 0;

        bool operator==(const Image&) const = default;
    };

    AssertTable() : AssertTable(0, 0) {}
    AssertTable(std::size_t in_qubits, std::size_t out_qubits);
    static AssertTable identity(std::size_t qubits);

    std::size_t in_qubits() const { return in_; }
    std::size_t out_qubits() const { return out_; }
    std::uint64_t in_states() const { return std::uint64_t{1} << in_; }
    std::uint64_t out_states() const { return std::uint64_t{1} << out_; }

    Tropical cost(std::uint64_t pre, std::uint64_t post) const { return matrix_.at(pre, post); }
    void set(std::uint64_t pre, std::uint64_t post, Tropical cost) { matrix_.at(pre, post) = cost; }
    const TropicalMatrix& matrix() const { return matrix_; }
    TropicalMatrix& matrix() { return matrix_; }

    /// Row view of a single basis state.
    Image row(std::uint64_t pre) const;
    /// Set extension: union of postsets, maximum of costs; (∅, 0) on ∅.
    Image extend(const std::vector<std::uint64_t>& pre) const;

    bool operator==(const AssertTable&) const = default;

private:
    std::size_t in_;
    std::size_t out_;
    TropicalMatrix matrix_;
};

/// Renders basis state `value` as `width` characters, wire 0 first.
std::string basis_string(std::uint64_t value, std::size_t width);
std::uint64_t parse_basis_string(std::string_view bits);

/// Largest number of qubits an assertion table may span.
inline constexpr std::size_t kMaxAssertQubits = 12;

using EffectValue = std::variant<std::uint64_t, DepthTriple, AssertTable>;

struct Effect {
    Metric metric = Metric::GateCount;
    AlgebraObject dom = 0;
    AlgebraObject cod = 0;
    EffectValue value;

    std::uint64_t scalar() const { return std::get<std::uint64_t>(value); }
    const DepthTriple& depth() const { return std::get<DepthTriple>(value); }
    const AssertTable& asserts() const { return std::get<AssertTable>(value); }

    bool operator==(const Effect&) const = default;
};

std::string to_string(const Effect& e);

/// A symmetric premonoidal preorder-enriched category of effects together
/// with its abstraction functor from circuits.
class CircuitAlgebra {
public:
    virtual ~CircuitAlgebra() = default;

    virtual Metric metric() const = 0;
    virtual AlgebraObject object_of(const CircuitObject& obj) const = 0;
    virtual Effect identity(AlgebraObject a) const = 0;
    virtual Effect compose(const Effect& e, const Effect& f) const = 0;
    virtual Effect whisker_left(AlgebraObject a, const Effect& e) const = 0;
    virtual Effect whisker_right(const Effect& e, AlgebraObject a) const = 0;
    virtual AlgebraObject tensor(AlgebraObject a, AlgebraObject b) const = 0;
    virtual bool leq(const Effect& e, const Effect& f) const = 0;
    virtual Effect join(const Effect& e, const Effect& f) const;
    /// Effect denoted by an integer annotation; nullopt when the algebra has
    /// no integer literals.
    virtual std::optional<Effect> from_literal(std::uint64_t n, AlgebraObject dom, AlgebraObject cod) const;

    /// The abstraction functor: left fold of `compose` over the steps.
    Effect abstract(const Circuit& c, const GateSpec& spec) const;
    Effect abstract_step(const CircuitObject& in, const PrimStep& step, const GateSpec& spec) const;

protected:
    virtual Effect abstract_layer(const CircuitObject& in, const Layer& layer, const GateSpec& spec) const = 0;
    virtual Effect abstract_perm(const CircuitObject& in, const Perm& perm) const = 0;
    void check_composable(const Effect& e, const Effect& f) const;
    void check_parallel(const Effect& e, const Effect& f) const;
};

std::unique_ptr<CircuitAlgebra> make_algebra(Metric m);

} // namespace pqc
