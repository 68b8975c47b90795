#include "random_circuit.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace pqc::testing {

std::uint64_t suite_seed(std::uint64_t fallback) {
    if (const char* s = std::getenv("PQC_SEED")) return std::stoull(s);
    return fallback;
}

CircuitObject random_object(std::mt19937_64& rng, std::size_t max_wires, bool qubits_only) {
    std::uniform_int_distribution<std::size_t> size(0, max_wires);
    std::bernoulli_distribution bit(qubits_only ? 0.0 : 0.25);
    CircuitObject obj(size(rng));
    for (auto& w : obj) w = bit(rng) ? WireType::Bit : WireType::Qubit;
    return obj;
}

namespace {

std::vector<Gate> gate_pool(const GateSpec& spec, bool qubits_only) {
    std::vector<Gate> out;
    const GateRegistry registry = spec.registry();
    for (const auto& [name, g] : registry.gates()) {
        const bool has_bit = std::count(g.dom.begin(), g.dom.end(), WireType::Bit) +
                                 std::count(g.cod.begin(), g.cod.end(), WireType::Bit) >
                             0;
        if (qubits_only && has_bit) continue;
        out.push_back(g);
    }
    return out;
}

bool fits(const Gate& g, const CircuitObject& in, std::size_t at) {
    if (at + g.dom.size() > in.size()) return false;
    return std::equal(g.dom.begin(), g.dom.end(), in.begin() + static_cast<std::ptrdiff_t>(at));
}

} // namespace

Circuit random_circuit_from(std::mt19937_64& rng, const GateSpec& spec, const CircuitObject& dom,
                            const RandomCircuitOptions& opts) {
    const std::vector<Gate> pool = gate_pool(spec, opts.qubits_only);
    std::uniform_int_distribution<std::size_t> steps_dist(0, opts.max_steps);
    std::bernoulli_distribution perm_coin(0.25);
    std::bernoulli_distribution place_coin(0.45);
    Circuit c = Circuit::identity(dom);
    const std::size_t steps = steps_dist(rng);
    for (std::size_t s = 0; s < steps; ++s) {
        const CircuitObject& in = c.cod();
        if (perm_coin(rng) && in.size() > 1) {
            std::vector<std::size_t> sources(in.size());
            for (std::size_t i = 0; i < sources.size(); ++i) sources[i] = i;
            std::shuffle(sources.begin(), sources.end(), rng);
            c.push(Perm{std::move(sources)});
            continue;
        }
        Layer layer;
        std::size_t wires = in.size();
        std::size_t pos = 0;
        while (pos <= in.size()) {
            std::vector<const Gate*> candidates;
            for (const Gate& g : pool)
                if (fits(g, in, pos) && wires - g.dom.size() + g.cod.size() <= opts.max_wires)
                    candidates.push_back(&g);
            if (candidates.empty() || !place_coin(rng)) {
                ++pos;
                continue;
            }
            const Gate* g = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
            layer.placements.push_back(Placement{*g, pos});
            wires = wires - g->dom.size() + g->cod.size();
            pos += std::max<std::size_t>(g->dom.size(), 1);
        }
        if (!layer.placements.empty()) c.push(std::move(layer));
    }
    return c;
}

Circuit random_circuit(std::mt19937_64& rng, const GateSpec& spec, const RandomCircuitOptions& opts) {
    return random_circuit_from(rng, spec, random_object(rng, opts.max_wires, opts.qubits_only), opts);
}

} // namespace pqc::testing
