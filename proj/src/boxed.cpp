#include "pqc/boxed.hpp"

#include "pqc/error.hpp"

#include <algorithm>
#include <map>

namespace pqc {

namespace {

std::size_t index_in(const std::vector<Label>& labels, Label l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    return static_cast<std::size_t>(it - labels.begin());
}

void check_interface(const WireBundle& bundle, const std::vector<Label>& labels,
                     std::size_t width, const char* side) {
    if (labels.size() != width)
        throw CircuitError("InvalidBox", std::string(side) + " labels do not match circuit width");
    std::vector<Label> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw CircuitError("InvalidBox", std::string(side) + " labels are not distinct");
    std::vector<Label> mentioned = bundle.labels();
    std::sort(mentioned.begin(), mentioned.end());
    if (mentioned != sorted)
        throw CircuitError("InvalidBox", std::string(side) + " bundle does not enumerate the interface");
}

BundleType typed_shape(const WireBundle& b, const std::vector<Label>& labels, const CircuitObject& obj) {
    switch (b.kind()) {
    case WireBundle::Kind::Unit: return BundleType::unit();
    case WireBundle::Kind::Label: return BundleType::wire(obj[index_in(labels, b.label())]);
    case WireBundle::Kind::Pair:
        return BundleType::tensor(typed_shape(b.first(), labels, obj), typed_shape(b.second(), labels, obj));
    }
    return BundleType::unit();
}

std::vector<std::size_t> identity_sources(std::size_t n) {
    std::vector<std::size_t> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = i;
    return s;
}

} // namespace

BoxedCircuit::BoxedCircuit(WireBundle inputs, Circuit body, WireBundle outputs,
                           std::vector<Label> dom_labels, std::vector<Label> cod_labels)
    : inputs_(std::move(inputs)),
      body_(std::move(body)),
      outputs_(std::move(outputs)),
      dom_labels_(std::move(dom_labels)),
      cod_labels_(std::move(cod_labels)) {
    check_interface(inputs_, dom_labels_, body_.dom().size(), "input");
    check_interface(outputs_, cod_labels_, body_.cod().size(), "output");
}

BoxedCircuit BoxedCircuit::literal(const Circuit& body, const BundleType& dom_shape,
                                   const BundleType& cod_shape) {
    if (dom_shape.flatten() != body.dom() || cod_shape.flatten() != body.cod())
        throw CircuitError("ObjectMismatch", "literal shape does not match circuit interface");
    LabelSupply local;
    auto [in_ctx, in_bundle] = freshlabels(dom_shape, local);
    auto [out_ctx, out_bundle] = freshlabels(cod_shape, local);
    return BoxedCircuit(std::move(in_bundle), body, std::move(out_bundle), in_ctx.labels(), out_ctx.labels());
}

CircuitObject BoxedCircuit::input_object() const {
    return input_type().flatten();
}

CircuitObject BoxedCircuit::output_object() const {
    return output_type().flatten();
}

BundleType BoxedCircuit::input_type() const {
    return typed_shape(inputs_, dom_labels_, body_.dom());
}

BundleType BoxedCircuit::output_type() const {
    return typed_shape(outputs_, cod_labels_, body_.cod());
}

Circuit BoxedCircuit::normalized() const {
    const std::vector<Label> in_order = inputs_.labels();
    const std::vector<Label> out_order = outputs_.labels();

    std::vector<std::size_t> in_sources;
    for (Label l : dom_labels_) in_sources.push_back(index_in(in_order, l));
    std::vector<std::size_t> out_sources;
    for (Label l : out_order) out_sources.push_back(index_in(cod_labels_, l));

    Circuit out = Circuit::identity(input_object());
    if (in_sources != identity_sources(in_sources.size())) out.push(Perm{std::move(in_sources)});
    out.extend(body_);
    if (out_sources != identity_sources(out_sources.size())) out.push(Perm{std::move(out_sources)});
    return out;
}

namespace {

WireBundle rename(const WireBundle& b, const std::map<Label, Label>& renaming) {
    switch (b.kind()) {
    case WireBundle::Kind::Unit: return b;
    case WireBundle::Kind::Label: return WireBundle::label(renaming.at(b.label()));
    case WireBundle::Kind::Pair:
        return WireBundle::pair(rename(b.first(), renaming), rename(b.second(), renaming));
    }
    return b;
}

} // namespace

AppendResult append(const Circuit& c, const LabelContext& out_ctx, const WireBundle& attach,
                    const BoxedCircuit& boxed, LabelSupply& supply) {
    if (c.cod() != out_ctx.object())
        throw CircuitError("ObjectMismatch", "label context does not type the circuit outputs");

    const std::vector<Label> targets = attach.labels();
    const CircuitObject expected = boxed.input_object();
    if (targets.size() != expected.size())
        throw CircuitError("WireTypeMismatch", "bundle " + attach.to_string() + " has " +
                                                   std::to_string(targets.size()) + " wires, circuit expects " +
                                                   std::to_string(expected.size()));

    const std::size_t n = out_ctx.size();
    std::vector<std::size_t> positions;
    std::vector<bool> attached(n, false);
    for (std::size_t j = 0; j < targets.size(); ++j) {
        auto idx = out_ctx.index_of(targets[j]);
        if (!idx) throw CircuitError("LabelNotFound", "label " + to_string(targets[j]) + " is not an output");
        if (attached[*idx])
            throw CircuitError("DuplicateLabel", "label " + to_string(targets[j]) + " attached twice");
        if (out_ctx[*idx].second != expected[j])
            throw CircuitError("WireTypeMismatch", "label " + to_string(targets[j]) + " has type " +
                                                       std::string(to_string(out_ctx[*idx].second)) +
                                                       ", circuit expects " + std::string(to_string(expected[j])));
        attached[*idx] = true;
        positions.push_back(*idx);
    }

    const std::size_t start =
        positions.empty() ? n : *std::min_element(positions.begin(), positions.end());
    std::vector<std::size_t> before;
    std::vector<std::size_t> after;
    for (std::size_t i = 0; i < n; ++i) {
        if (attached[i]) continue;
        (i < start ? before : after).push_back(i);
    }

    std::vector<std::size_t> order = before;
    order.insert(order.end(), positions.begin(), positions.end());
    order.insert(order.end(), after.begin(), after.end());
    const bool moved = order != identity_sources(n);

    const Circuit d = boxed.normalized();
    CircuitObject before_obj;
    for (std::size_t i : before) before_obj.push_back(out_ctx[i].second);
    CircuitObject after_obj;
    for (std::size_t i : after) after_obj.push_back(out_ctx[i].second);

    Circuit out = c;
    if (moved) out.push(Perm{order});
    out.extend(whisker_left(before_obj, whisker_right(d, after_obj)));

    std::map<Label, Label> renaming;
    std::vector<Label> fresh;
    for (Label l : boxed.outputs().labels()) {
        Label f = supply.fresh();
        renaming.emplace(l, f);
        fresh.push_back(f);
    }
    WireBundle outputs = rename(boxed.outputs(), renaming);
    const CircuitObject out_types = d.cod();

    // Wire order after the attached block: before ++ fresh ++ after.
    std::vector<std::pair<Label, WireType>> mid;
    for (std::size_t i : before) mid.push_back(out_ctx[i]);
    for (std::size_t j = 0; j < fresh.size(); ++j) mid.emplace_back(fresh[j], out_types[j]);
    for (std::size_t i : after) mid.push_back(out_ctx[i]);

    std::vector<std::pair<Label, WireType>> final_order = mid;
    if (moved && fresh.size() == targets.size()) {
        std::vector<std::size_t> restore(n);
        for (std::size_t k = 0; k < n; ++k) restore[order[k]] = k;
        final_order.clear();
        for (std::size_t i = 0; i < n; ++i) final_order.push_back(mid[restore[i]]);
        out.push(Perm{std::move(restore)});
    }

    LabelContext ctx;
    for (const auto& [l, w] : final_order) ctx.push_back(l, w);
    return AppendResult{std::move(out), std::move(outputs), std::move(ctx)};
}

} // namespace pqc
