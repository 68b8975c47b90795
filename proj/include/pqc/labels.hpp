#pragma once

#include "pqc/circuit.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pqc {

struct Label {
    std::uint64_t id = 0;

    friend auto operator<=>(const Label&, const Label&) = default;
};

/// Source syntax of a label: "#<id>".
std::string to_string(Label l);

/// Ordered assignment of wire types to distinct labels. The order matches
/// the wire positions of the circuit object it types.
class LabelContext {
public:
    LabelContext() = default;

    void push_back(Label l, WireType w);
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::pair<Label, WireType>& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<std::pair<Label, WireType>>& entries() const { return entries_; }

    std::optional<std::size_t> index_of(Label l) const;
    std::vector<Label> labels() const;
    CircuitObject object() const;
    std::string to_string() const;

    bool operator==(const LabelContext&) const = default;

private:
    std::vector<std::pair<Label, WireType>> entries_;
};

/// I | w | T ⊗ U
class BundleType {
public:
    enum class Kind { Unit, Wire, Tensor };

    BundleType() = default;
    static BundleType unit();
    static BundleType wire(WireType w);
    static BundleType tensor(BundleType a, BundleType b);
    /// Right-nested tensor of the given wires; I when empty.
    static BundleType from_object(const CircuitObject& obj);

    Kind kind() const { return kind_; }
    WireType wire_type() const { return wire_; }
    const BundleType& left() const { return children_->first; }
    const BundleType& right() const { return children_->second; }

    CircuitObject flatten() const;
    std::string to_string() const;

    friend bool operator==(const BundleType& a, const BundleType& b);

private:
    Kind kind_ = Kind::Unit;
    WireType wire_ = WireType::Qubit;
    std::shared_ptr<const std::pair<BundleType, BundleType>> children_;
};

/// * | ℓ | (t, u)
class WireBundle {
public:
    enum class Kind { Unit, Label, Pair };

    WireBundle() = default;
    static WireBundle unit();
    static WireBundle label(Label l);
    static WireBundle pair(WireBundle a, WireBundle b);

    Kind kind() const { return kind_; }
    Label label() const { return label_; }
    const WireBundle& first() const { return children_->first; }
    const WireBundle& second() const { return children_->second; }

    std::vector<Label> labels() const;
    std::string to_string() const;

    friend bool operator==(const WireBundle& a, const WireBundle& b);

private:
    Kind kind_ = Kind::Unit;
    Label label_;
    std::shared_ptr<const std::pair<WireBundle, WireBundle>> children_;
};

/// Monotone source of labels.
class LabelSupply {
public:
    explicit LabelSupply(std::uint64_t next = 0) : next_(next) {}

    Label fresh() { return Label{next_++}; }
    std::uint64_t peek() const { return next_; }

private:
    std::uint64_t next_;
};

/// Fresh labels for every wire of `t`, returned as a context in wire order
/// and as a bundle shaped like `t`.
std::pair<LabelContext, WireBundle> freshlabels(const BundleType& t, LabelSupply& supply);

} // namespace pqc
