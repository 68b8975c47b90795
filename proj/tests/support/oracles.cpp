#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace pqc::testing {

namespace {

struct Node {
    enum class Kind { Input, Gate, Output } kind;
    std::size_t index = 0;
    Tropical weight = 0;
    bool source = false;
    bool sink = false;
    std::vector<std::size_t> succ;
};

struct Graph {
    std::vector<Node> nodes;
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;
};

Graph build_graph(const Circuit& c, const GateSpec& spec) {
    Graph g;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < c.dom().size(); ++i) {
        g.nodes.push_back(Node{Node::Kind::Input, i, 0, false, false, {}});
        g.inputs.push_back(g.nodes.size() - 1);
        current.push_back(g.nodes.size() - 1);
    }
    for (const PrimStep& step : c.steps()) {
        if (const auto* perm = std::get_if<Perm>(&step)) {
            std::vector<std::size_t> next;
            for (std::size_t s : perm->sources) next.push_back(current[s]);
            current = std::move(next);
            continue;
        }
        const Layer& layer = std::get<Layer>(step);
        std::vector<std::size_t> next;
        std::size_t pos = 0;
        for (const Placement& p : layer.placements) {
            for (; pos < p.at; ++pos) next.push_back(current[pos]);
            const auto weight = static_cast<Tropical>(spec.at(p.gate.name).depth);
            g.nodes.push_back(Node{Node::Kind::Gate, 0, weight, p.gate.dom.empty(), p.gate.cod.empty(), {}});
            const std::size_t id = g.nodes.size() - 1;
            for (std::size_t k = 0; k < p.gate.dom.size(); ++k) g.nodes[current[p.at + k]].succ.push_back(id);
            for (std::size_t k = 0; k < p.gate.cod.size(); ++k) next.push_back(id);
            pos = p.at + p.gate.dom.size();
        }
        for (; pos < current.size(); ++pos) next.push_back(current[pos]);
        current = std::move(next);
    }
    for (std::size_t j = 0; j < current.size(); ++j) {
        g.nodes.push_back(Node{Node::Kind::Output, j, 0, false, false, {}});
        g.nodes[current[j]].succ.push_back(g.nodes.size() - 1);
        g.outputs.push_back(g.nodes.size() - 1);
    }
    return g;
}

/// Visits every path leaving `from`, reporting each endpoint with the
/// accumulated weight of the gates after `from`.
void walk(const Graph& g, std::size_t from, Tropical acc,
          const std::function<void(const Node&, Tropical)>& at_end) {
    const Node& n = g.nodes[from];
    if (n.kind == Node::Kind::Output || n.sink) at_end(n, acc);
    for (std::size_t s : n.succ) walk(g, s, acc + g.nodes[s].weight, at_end);
}

} // namespace

DepthTriple depth_oracle(const Circuit& c, const GateSpec& spec) {
    const Graph g = build_graph(c, spec);
    DepthTriple t{TropicalMatrix(c.dom().size(), c.cod().size()), std::vector<Tropical>(c.dom().size(), kNegInf),
                  std::vector<Tropical>(c.cod().size(), kNegInf)};
    for (std::size_t i = 0; i < g.inputs.size(); ++i) {
        walk(g, g.inputs[i], 0, [&](const Node& end, Tropical w) {
            if (end.kind == Node::Kind::Output) {
                t.a.at(i, end.index) = std::max(t.a.at(i, end.index), w);
            } else {
                t.v[i] = std::max(t.v[i], w);
            }
        });
    }
    for (std::size_t id = 0; id < g.nodes.size(); ++id) {
        if (!g.nodes[id].source) continue;
        walk(g, id, g.nodes[id].weight, [&](const Node& end, Tropical w) {
            if (end.kind == Node::Kind::Output) t.w[end.index] = std::max(t.w[end.index], w);
        });
    }
    return t;
}

Tropical longest_anchored_path(const Circuit& c, const GateSpec& spec) {
    const DepthTriple t = depth_oracle(c, spec);
    Tropical best = t.a.max_entry();
    for (Tropical x : t.v) best = std::max(best, x);
    for (Tropical x : t.w) best = std::max(best, x);
    return best;
}

std::uint64_t width_oracle(const Circuit& c) {
    std::uint64_t best = c.dom().size();
    CircuitObject cur = c.dom();
    for (const PrimStep& s : c.steps()) {
        cur = step_output(cur, s);
        best = std::max<std::uint64_t>(best, cur.size());
    }
    return best;
}

std::uint64_t gate_count_oracle(const Circuit& c, const GateSpec& spec) {
    std::uint64_t n = 0;
    for (const PrimStep& s : c.steps())
        if (const auto* layer = std::get_if<Layer>(&s))
            for (const Placement& p : layer->placements) n += spec.at(p.gate.name).count;
    return n;
}

std::uint64_t naive_depth_oracle(const Circuit& c) {
    return static_cast<std::uint64_t>(
        std::count_if(c.steps().begin(), c.steps().end(), [](const PrimStep& s) { return std::holds_alternative<Layer>(s); }));
}

namespace {

using Bits = std::vector<int>;

std::uint64_t to_index(const Bits& b, std::size_t from, std::size_t len) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < len; ++k) v = (v << 1) | static_cast<std::uint64_t>(b[from + k]);
    return v;
}

void append_index(Bits& b, std::uint64_t v, std::size_t len) {
    for (std::size_t k = 0; k < len; ++k) b.push_back(static_cast<int>((v >> (len - 1 - k)) & 1U));
}

} // namespace

AssertTable assert_oracle(const Circuit& c, const GateSpec& spec) {
    const std::size_t n = c.dom().size();
    const std::size_t m = c.cod().size();
    AssertTable out(n, m);
    std::map<std::string, AssertTable> tables;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        std::map<Bits, Tropical> states;
        Bits start;
        append_index(start, b, n);
        states[start] = 0;
        for (const PrimStep& step : c.steps()) {
            std::map<Bits, Tropical> next;
            for (const auto& [bits, cost] : states) {
                if (const auto* perm = std::get_if<Perm>(&step)) {
                    Bits moved;
                    for (std::size_t s : perm->sources) moved.push_back(bits[s]);
                    next[moved] = std::max(next.count(moved) ? next[moved] : kNegInf, cost);
                    continue;
                }
                const Layer& layer = std::get<Layer>(step);
                std::vector<std::pair<Bits, Tropical>> partial{{Bits{}, cost}};
                std::size_t pos = 0;
                for (const Placement& p : layer.placements) {
                    auto it = tables.find(p.gate.name);
                    if (it == tables.end()) it = tables.emplace(p.gate.name, spec.assert_table(p.gate.name)).first;
                    const AssertTable& t = it->second;
                    const std::uint64_t pre = to_index(bits, p.at, p.gate.dom.size());
                    std::vector<std::pair<Bits, Tropical>> grown;
                    for (auto& [prefix, acc] : partial) {
                        Bits base = prefix;
                        base.insert(base.end(), bits.begin() + static_cast<std::ptrdiff_t>(pos),
                                    bits.begin() + static_cast<std::ptrdiff_t>(p.at));
                        for (std::uint64_t z = 0; z < t.out_states(); ++z) {
                            const Tropical w = t.cost(pre, z);
                            if (w == kNegInf) continue;
                            Bits ext = base;
                            append_index(ext, z, p.gate.cod.size());
                            grown.emplace_back(std::move(ext), acc + w);
                        }
                    }
                    partial = std::move(grown);
                    pos = p.at + p.gate.dom.size();
                }
                for (auto& [prefix, acc] : partial) {
                    Bits full = prefix;
                    full.insert(full.end(), bits.begin() + static_cast<std::ptrdiff_t>(pos), bits.end());
                    next[full] = std::max(next.count(full) ? next[full] : kNegInf, acc);
                }
            }
            states = std::move(next);
        }
        for (const auto& [bits, cost] : states) out.set(b, to_index(bits, 0, m), cost);
    }
    return out;
}

} // namespace pqc::testing
