#include "pqc/circuit.hpp"

#include "pqc/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pqc {

std::string to_string(const SourceLoc& loc) {
    return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

std::string_view to_string(WireType w) {
    return w == WireType::Qubit ? "Qubit" : "Bit";
}

std::optional<WireType> parse_wire_type(std::string_view s) {
    if (s == "Qubit") return WireType::Qubit;
    if (s == "Bit") return WireType::Bit;
    return std::nullopt;
}

std::string to_string(const CircuitObject& obj) {
    if (obj.empty()) return "[]";
    std::string out = "[";
    for (std::size_t i = 0; i < obj.size(); ++i) {
        if (i) out += ",";
        out += to_string(obj[i]);
    }
    return out + "]";
}

CircuitObject concat(const CircuitObject& a, const CircuitObject& b) {
    CircuitObject out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

const GateRegistry& GateRegistry::builtin() {
    static const GateRegistry registry = [] {
        const CircuitObject q{WireType::Qubit};
        const CircuitObject qq{WireType::Qubit, WireType::Qubit};
        GateRegistry r;
        r.add({"H", q, q});
        r.add({"X", q, q});
        r.add({"Z", q, q});
        r.add({"CNOT", qq, qq});
        r.add({"meas", q, {WireType::Bit}});
        r.add({"init", {}, q});
        r.add({"discard", q, {}});
        return r;
    }();
    return registry;
}

void GateRegistry::add(Gate gate) {
    std::string name = gate.name;
    gates_.insert_or_assign(std::move(name), std::move(gate));
}

const Gate* GateRegistry::find(std::string_view name) const {
    auto it = gates_.find(name);
    return it == gates_.end() ? nullptr : &it->second;
}

const Gate& GateRegistry::at(std::string_view name) const {
    if (const Gate* g = find(name)) return *g;
    throw CircuitError("UnknownGate", "unknown gate '" + std::string(name) + "'");
}

bool Perm::is_identity() const {
    for (std::size_t j = 0; j < sources.size(); ++j)
        if (sources[j] != j) return false;
    return true;
}

namespace {

CircuitObject layer_output(const CircuitObject& in, const Layer& layer) {
    if (layer.placements.empty())
        throw CircuitError("InvalidStep", "layer without gates");
    CircuitObject out;
    std::size_t pos = 0;
    std::size_t next_free = 0;
    for (const Placement& p : layer.placements) {
        // Each placement claims at least one position so that zero-input
        // gates sharing a position cannot be reordered.
        if (p.at < next_free)
            throw CircuitError("InvalidStep", "overlapping or unsorted placement of " + p.gate.name +
                                                  " at " + std::to_string(p.at));
        if (p.at + p.gate.dom.size() > in.size())
            throw CircuitError("ObjectMismatch", "gate " + p.gate.name + " at " +
                                                     std::to_string(p.at) + " exceeds " +
                                                     to_string(in));
        out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(pos),
                   in.begin() + static_cast<std::ptrdiff_t>(p.at));
        if (!std::equal(p.gate.dom.begin(), p.gate.dom.end(),
                        in.begin() + static_cast<std::ptrdiff_t>(p.at)))
            throw CircuitError("ObjectMismatch", "gate " + p.gate.name + " expects " +
                                                     to_string(p.gate.dom) + " at " +
                                                     std::to_string(p.at) + " of " + to_string(in));
        out.insert(out.end(), p.gate.cod.begin(), p.gate.cod.end());
        pos = p.at + p.gate.dom.size();
        next_free = p.at + std::max<std::size_t>(p.gate.dom.size(), 1);
    }
    out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(pos), in.end());
    return out;
}

CircuitObject perm_output(const CircuitObject& in, const Perm& perm) {
    if (perm.sources.size() != in.size())
        throw CircuitError("ObjectMismatch", "permutation of " + std::to_string(perm.sources.size()) +
                                                 " wires applied to " + to_string(in));
    std::vector<bool> seen(in.size(), false);
    CircuitObject out;
    out.reserve(in.size());
    for (std::size_t s : perm.sources) {
        if (s >= in.size() || seen[s])
            throw CircuitError("InvalidStep", "permutation is not a bijection");
        seen[s] = true;
        out.push_back(in[s]);
    }
    return out;
}

} // namespace

CircuitObject step_output(const CircuitObject& in, const PrimStep& step) {
    if (const auto* layer = std::get_if<Layer>(&step)) return layer_output(in, *layer);
    return perm_output(in, std::get<Perm>(step));
}

Circuit Circuit::identity(CircuitObject obj) {
    Circuit c;
    c.dom_ = obj;
    c.cod_ = std::move(obj);
    return c;
}

Circuit Circuit::from_steps(CircuitObject dom, std::vector<PrimStep> steps) {
    Circuit c = identity(std::move(dom));
    for (PrimStep& s : steps) c.push(std::move(s));
    return c;
}

Circuit Circuit::gate(const Gate& g) {
    return layer(g.dom, Layer{{Placement{g, 0}}});
}

Circuit Circuit::layer(CircuitObject dom, Layer layer) {
    Circuit c = identity(std::move(dom));
    c.push(std::move(layer));
    return c;
}

Circuit Circuit::permutation(CircuitObject dom, std::vector<std::size_t> sources) {
    Circuit c = identity(std::move(dom));
    c.push(Perm{std::move(sources)});
    return c;
}

void Circuit::push(PrimStep step) {
    cod_ = step_output(cod_, step);
    steps_.push_back(std::move(step));
}

void Circuit::extend(const Circuit& tail) {
    if (tail.dom_ != cod_)
        throw CircuitError("ObjectMismatch",
                           "cannot compose " + to_string(cod_) + " with " + to_string(tail.dom_));
    steps_.insert(steps_.end(), tail.steps_.begin(), tail.steps_.end());
    cod_ = tail.cod_;
}

Circuit compose(const Circuit& c, const Circuit& d) {
    Circuit out = c;
    out.extend(d);
    return out;
}

Circuit whisker_left(const CircuitObject& a, const Circuit& c) {
    const std::size_t k = a.size();
    std::vector<PrimStep> steps;
    steps.reserve(c.steps().size());
    for (const PrimStep& s : c.steps()) {
        if (const auto* layer = std::get_if<Layer>(&s)) {
            Layer shifted = *layer;
            for (Placement& p : shifted.placements) p.at += k;
            steps.emplace_back(std::move(shifted));
        } else {
            Perm perm;
            perm.sources.resize(k);
            std::iota(perm.sources.begin(), perm.sources.end(), std::size_t{0});
            for (std::size_t src : std::get<Perm>(s).sources) perm.sources.push_back(src + k);
            steps.emplace_back(std::move(perm));
        }
    }
    return Circuit::from_steps(concat(a, c.dom()), std::move(steps));
}

Circuit whisker_right(const Circuit& c, const CircuitObject& b) {
    Circuit out = Circuit::identity(concat(c.dom(), b));
    for (const PrimStep& s : c.steps()) {
        if (std::holds_alternative<Layer>(s)) {
            out.push(s);
        } else {
            Perm perm = std::get<Perm>(s);
            const std::size_t n = perm.sources.size();
            for (std::size_t i = 0; i < b.size(); ++i) perm.sources.push_back(n + i);
            out.push(std::move(perm));
        }
    }
    return out;
}

Circuit symmetry(const CircuitObject& a, const CircuitObject& b) {
    const CircuitObject dom = concat(a, b);
    if (a.empty() || b.empty()) return Circuit::identity(dom);
    std::vector<std::size_t> sources;
    for (std::size_t i = 0; i < b.size(); ++i) sources.push_back(a.size() + i);
    for (std::size_t i = 0; i < a.size(); ++i) sources.push_back(i);
    return Circuit::permutation(dom, std::move(sources));
}

Circuit canonicalize(const Circuit& c) {
    Circuit out = Circuit::identity(c.dom());
    std::optional<Perm> pending;
    auto flush = [&] {
        if (pending && !pending->is_identity()) out.push(*pending);
        pending.reset();
    };
    for (const PrimStep& s : c.steps()) {
        if (const auto* perm = std::get_if<Perm>(&s)) {
            if (!pending) {
                pending = *perm;
            } else {
                Perm fused;
                fused.sources.reserve(perm->sources.size());
                for (std::size_t src : perm->sources) fused.sources.push_back(pending->sources[src]);
                pending = std::move(fused);
            }
        } else {
            flush();
            out.push(s);
        }
    }
    flush();
    return out;
}

Circuit extension(const Circuit& prefix, const Circuit& final) {
    const auto& ps = prefix.steps();
    const auto& fs = final.steps();
    if (prefix.dom() != final.dom() || ps.size() > fs.size() ||
        !std::equal(ps.begin(), ps.end(), fs.begin()))
        throw CircuitError("NotAPrefix", "circuit is not a prefix of the evaluated circuit");
    return Circuit::from_steps(prefix.cod(), std::vector<PrimStep>(fs.begin() + static_cast<std::ptrdiff_t>(ps.size()), fs.end()));
}

std::size_t gate_count(const Circuit& c) {
    std::size_t n = 0;
    for (const PrimStep& s : c.steps())
        if (const auto* layer = std::get_if<Layer>(&s)) n += layer->placements.size();
    return n;
}

} // namespace pqc
