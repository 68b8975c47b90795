#include "pqc/circuit_io.hpp"

#include "pqc/error.hpp"

#include <algorithm>
#include <map>

namespace pqc {

namespace {

nlohmann::json object_json(const CircuitObject& obj) {
    nlohmann::json arr = nlohmann::json::array();
    for (WireType w : obj) arr.push_back(std::string(to_string(w)));
    return arr;
}

CircuitObject object_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw CircuitError("MalformedCircuit", "wire list must be an array");
    CircuitObject obj;
    for (const auto& w : j) {
        auto t = w.is_string() ? parse_wire_type(w.get<std::string>()) : std::nullopt;
        if (!t) throw CircuitError("MalformedCircuit", "unknown wire type " + w.dump());
        obj.push_back(*t);
    }
    return obj;
}

} // namespace

nlohmann::json to_json(const Circuit& c) {
    nlohmann::json steps = nlohmann::json::array();
    for (const PrimStep& s : c.steps()) {
        if (const auto* layer = std::get_if<Layer>(&s)) {
            nlohmann::json gates = nlohmann::json::array();
            for (const Placement& p : layer->placements) gates.push_back({{"gate", p.gate.name}, {"at", p.at}});
            steps.push_back({{"layer", gates}});
        } else {
            steps.push_back({{"perm", std::get<Perm>(s).sources}});
        }
    }
    return {{"inputs", object_json(c.dom())}, {"steps", steps}, {"outputs", object_json(c.cod())}};
}

std::string serialize(const Circuit& c) {
    return to_json(c).dump();
}

Circuit from_json(const nlohmann::json& j, const GateRegistry& registry) {
    if (!j.is_object() || !j.contains("inputs") || !j.contains("steps"))
        throw CircuitError("MalformedCircuit", "circuit needs \"inputs\" and \"steps\"");
    Circuit c = Circuit::identity(object_from_json(j.at("inputs")));
    for (const auto& step : j.at("steps")) {
        if (step.contains("layer")) {
            Layer layer;
            for (const auto& g : step.at("layer")) {
                if (!g.contains("gate") || !g.contains("at") || !g.at("at").is_number_unsigned())
                    throw CircuitError("MalformedCircuit", "placement needs \"gate\" and \"at\"");
                layer.placements.push_back(
                    Placement{registry.at(g.at("gate").get<std::string>()), g.at("at").get<std::size_t>()});
            }
            c.push(std::move(layer));
        } else if (step.contains("perm")) {
            c.push(Perm{step.at("perm").get<std::vector<std::size_t>>()});
        } else {
            throw CircuitError("MalformedCircuit", "step must be a layer or a perm");
        }
    }
    if (j.contains("outputs") && object_from_json(j.at("outputs")) != c.cod())
        throw CircuitError("ObjectMismatch", "declared outputs do not match the steps");
    return c;
}

Circuit deserialize(std::string_view text, const GateRegistry& registry) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw CircuitError("MalformedCircuit", e.what());
    }
    try {
        return from_json(j, registry);
    } catch (const nlohmann::json::exception& e) {
        throw CircuitError("MalformedCircuit", e.what());
    }
}

std::string draw(const Circuit& c) {
    // Rows follow wire identity: a row starts when its wire is created and
    // ends when the wire is discarded.
    struct Row {
        std::string text;
        bool alive = true;
        WireType type = WireType::Qubit;
    };
    std::vector<Row> rows;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < c.dom().size(); ++i) {
        rows.push_back({"w" + std::to_string(i) + " ", true, c.dom()[i]});
        active.push_back(i);
    }
    std::size_t margin = 0;
    for (const Row& r : rows) margin = std::max(margin, r.text.size());

    auto pad_to = [&](std::size_t width) {
        for (Row& r : rows) {
            char fill = !r.alive ? ' ' : (r.type == WireType::Qubit ? '-' : '=');
            r.text.resize(width, fill);
        }
    };
    pad_to(margin);

    for (const PrimStep& s : c.steps()) {
        std::map<std::size_t, std::string> cells;
        std::vector<std::size_t> next;
        std::vector<std::size_t> ended;
        std::vector<std::pair<std::size_t, WireType>> retyped;
        if (const auto* layer = std::get_if<Layer>(&s)) {
            std::size_t pos = 0;
            for (const Placement& p : layer->placements) {
                for (; pos < p.at; ++pos) next.push_back(active[pos]);
                const std::size_t arity = std::max(p.gate.dom.size(), p.gate.cod.size());
                for (std::size_t k = 0; k < arity; ++k) {
                    std::size_t row;
                    if (k < p.gate.dom.size()) {
                        row = active[p.at + k];
                    } else {
                        row = rows.size();
                        rows.push_back({std::string(rows.empty() ? 0 : rows[0].text.size(), ' '), true, p.gate.cod[k]});
                    }
                    cells[row] = arity > 1 ? p.gate.name + "." + std::to_string(k) : p.gate.name;
                    if (k < p.gate.cod.size()) {
                        next.push_back(row);
                        retyped.emplace_back(row, p.gate.cod[k]);
                    } else {
                        ended.push_back(row);
                    }
                }
                pos = p.at + p.gate.dom.size();
            }
            for (; pos < active.size(); ++pos) next.push_back(active[pos]);
        } else {
            const Perm& perm = std::get<Perm>(s);
            for (std::size_t j = 0; j < perm.sources.size(); ++j) {
                next.push_back(active[perm.sources[j]]);
                if (perm.sources[j] != j) cells[active[perm.sources[j]]] = ">" + std::to_string(j);
            }
        }
        std::size_t width = 1;
        for (const auto& [row, text] : cells) width = std::max(width, text.size());
        const std::size_t start = rows[0].text.size() + 1;
        pad_to(start);
        for (const auto& [row, text] : cells) rows[row].text += text;
        for (std::size_t row : ended) rows[row].alive = false;
        for (const auto& [row, type] : retyped) rows[row].type = type;
        pad_to(start + width + 1);
        active = std::move(next);
    }
    pad_to((rows.empty() ? 0 : rows[0].text.size()) + 1);

    std::string out;
    for (Row& r : rows) {
        while (!r.text.empty() && r.text.back() == ' ') r.text.pop_back();
        out += r.text + "\n";
    }
    return out;
}

} // namespace pqc
