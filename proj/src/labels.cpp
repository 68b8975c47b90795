#include "pqc/labels.hpp"

#include "pqc/error.hpp"

namespace pqc {

std::string to_string(Label l) {
    return "#" + std::to_string(l.id);
}

void LabelContext::push_back(Label l, WireType w) {
    if (index_of(l))
        throw CircuitError("DuplicateLabel", "label " + pqc::to_string(l) + " bound twice");
    entries_.emplace_back(l, w);
}

std::optional<std::size_t> LabelContext::index_of(Label l) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].first == l) return i;
    return std::nullopt;
}

std::vector<Label> LabelContext::labels() const {
    std::vector<Label> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
}

CircuitObject LabelContext::object() const {
    CircuitObject out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.second);
    return out;
}

std::string LabelContext::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ", ";
        out += pqc::to_string(entries_[i].first) + ":" + std::string(pqc::to_string(entries_[i].second));
    }
    return out;
}

BundleType BundleType::unit() {
    return BundleType{};
}

BundleType BundleType::wire(WireType w) {
    BundleType t;
    t.kind_ = Kind::Wire;
    t.wire_ = w;
    return t;
}

BundleType BundleType::tensor(BundleType a, BundleType b) {
    BundleType t;
    t.kind_ = Kind::Tensor;
    t.children_ = std::make_shared<const std::pair<BundleType, BundleType>>(std::move(a), std::move(b));
    return t;
}

BundleType BundleType::from_object(const CircuitObject& obj) {
    if (obj.empty()) return unit();
    BundleType t = wire(obj.back());
    for (std::size_t i = obj.size() - 1; i-- > 0;) t = tensor(wire(obj[i]), std::move(t));
    return t;
}

CircuitObject BundleType::flatten() const {
    switch (kind_) {
    case Kind::Unit: return {};
    case Kind::Wire: return {wire_};
    case Kind::Tensor: return concat(left().flatten(), right().flatten());
    }
    return {};
}

std::string BundleType::to_string() const {
    switch (kind_) {
    case Kind::Unit: return "I";
    case Kind::Wire: return std::string(pqc::to_string(wire_));
    case Kind::Tensor: {
        std::string l = left().to_string();
        if (left().kind() == Kind::Tensor) l = "(" + l + ")";
        return l + " * " + right().to_string();
    }
    }
    return {};
}

bool operator==(const BundleType& a, const BundleType& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
    case BundleType::Kind::Unit: return true;
    case BundleType::Kind::Wire: return a.wire_ == b.wire_;
    case BundleType::Kind::Tensor: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

WireBundle WireBundle::unit() {
    return WireBundle{};
}

WireBundle WireBundle::label(Label l) {
    WireBundle b;
    b.kind_ = Kind::Label;
    b.label_ = l;
    return b;
}

WireBundle WireBundle::pair(WireBundle a, WireBundle b) {
    WireBundle out;
    out.kind_ = Kind::Pair;
    out.children_ = std::make_shared<const std::pair<WireBundle, WireBundle>>(std::move(a), std::move(b));
    return out;
}

std::vector<Label> WireBundle::labels() const {
    switch (kind_) {
    case Kind::Unit: return {};
    case Kind::Label: return {label_};
    case Kind::Pair: {
        std::vector<Label> out = first().labels();
        std::vector<Label> rest = second().labels();
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }
    }
    return {};
}

std::string WireBundle::to_string() const {
    switch (kind_) {
    case Kind::Unit: return "*";
    case Kind::Label: return pqc::to_string(label_);
    case Kind::Pair: return "(" + first().to_string() + ", " + second().to_string() + ")";
    }
    return {};
}

bool operator==(const WireBundle& a, const WireBundle& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
    case WireBundle::Kind::Unit: return true;
    case WireBundle::Kind::Label: return a.label_ == b.label_;
    case WireBundle::Kind::Pair: return a.first() == b.first() && a.second() == b.second();
    }
    return false;
}

namespace {

WireBundle fresh_bundle(const BundleType& t, LabelSupply& supply, LabelContext& ctx) {
    switch (t.kind()) {
    case BundleType::Kind::Unit: return WireBundle::unit();
    case BundleType::Kind::Wire: {
        Label l = supply.fresh();
        ctx.push_back(l, t.wire_type());
        return WireBundle::label(l);
    }
    case BundleType::Kind::Tensor: {
        WireBundle a = fresh_bundle(t.left(), supply, ctx);
        WireBundle b = fresh_bundle(t.right(), supply, ctx);
        return WireBundle::pair(std::move(a), std::move(b));
    }
    }
    return WireBundle::unit();
}

} // namespace

std::pair<LabelContext, WireBundle> freshlabels(const BundleType& t, LabelSupply& supply) {
    LabelContext ctx;
    WireBundle bundle = fresh_bundle(t, supply, ctx);
    return {std::move(ctx), std::move(bundle)};
}

} // namespace pqc
