#include "pqc/driver.hpp"

#include "pqc/error.hpp"
#include "pqc/syntax.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pqc {

LoadedProgram load_program_text(std::string_view text, const std::filesystem::path& base_dir,
                                const std::optional<std::filesystem::path>& gates_override) {
    ast::Program p = parse_program(text);
    GateSpec spec = GateSpec::builtin();
    if (gates_override) {
        spec = load_gate_spec(*gates_override);
    } else if (p.gates_path) {
        spec = load_gate_spec(base_dir / *p.gates_path);
    }
    p.main = desugar(p.main, spec);
    return LoadedProgram{std::move(p), std::move(spec)};
}

LoadedProgram load_program(const std::filesystem::path& path,
                           const std::optional<std::filesystem::path>& gates_override) {
    std::ifstream in(path);
    if (!in) throw Error("IOError", "cannot read program " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return load_program_text(ss.str(), path.parent_path(), gates_override);
}

namespace {

nlohmann::json tropical_json(Tropical t) {
    if (t == kNegInf) return "-inf";
    return t;
}

nlohmann::json tropical_json(const std::vector<Tropical>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Tropical t : v) out.push_back(tropical_json(t));
    return out;
}

std::vector<std::uint64_t> all_states(std::size_t qubits) {
    std::vector<std::uint64_t> out(std::size_t{1} << qubits);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

} // namespace

AssertTable::Image assert_image(const AssertTable& t, const AssertView& view) {
    AssertTable::Image img = t.extend(view.precondition.empty() ? all_states(t.in_qubits()) : view.precondition);
    if (view.restrict) {
        if (*view.restrict > t.out_qubits())
            throw Error("InvalidRestriction", "cannot restrict " + std::to_string(t.out_qubits()) + " qubits to " +
                                                  std::to_string(*view.restrict));
        const std::size_t shift = t.out_qubits() - *view.restrict;
        for (auto& z : img.post) z >>= shift;
        std::sort(img.post.begin(), img.post.end());
        img.post.erase(std::unique(img.post.begin(), img.post.end()), img.post.end());
    }
    return img;
}

nlohmann::json effect_json(const Effect& e, const AssertView& view) {
    nlohmann::json j;
    j["metric"] = std::string(metric_name(e.metric));
    j["dom"] = e.dom;
    j["cod"] = e.cod;
    switch (e.metric) {
    case Metric::GateCount:
    case Metric::NaiveDepth:
    case Metric::Width: j["value"] = e.scalar(); break;
    case Metric::Depth: {
        const DepthTriple& t = e.depth();
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < t.a.rows(); ++i) {
            std::vector<Tropical> row;
            for (std::size_t k = 0; k < t.a.cols(); ++k) row.push_back(t.a.at(i, k));
            rows.push_back(tropical_json(row));
        }
        j["matrix"] = rows;
        j["v"] = tropical_json(t.v);
        j["w"] = tropical_json(t.w);
        j["bound"] = tropical_json(depth_bound(t));
        break;
    }
    case Metric::Assert: {
        const AssertTable& t = e.asserts();
        AssertTable::Image img = assert_image(t, view);
        const std::size_t width = view.restrict.value_or(t.out_qubits());
        nlohmann::json pre = nlohmann::json::array();
        for (auto b : view.precondition.empty() ? all_states(t.in_qubits()) : view.precondition)
            pre.push_back(basis_string(b, t.in_qubits()));
        nlohmann::json post = nlohmann::json::array();
        for (auto z : img.post) post.push_back(basis_string(z, width));
        j["pre"] = pre;
        j["post"] = post;
        j["cost"] = img.cost;
        break;
    }
    }
    return j;
}

std::int64_t effect_magnitude(const Effect& e, const AssertView& view) {
    switch (e.metric) {
    case Metric::GateCount:
    case Metric::NaiveDepth:
    case Metric::Width: return static_cast<std::int64_t>(e.scalar());
    case Metric::Depth: return std::max<Tropical>(depth_bound(e.depth()), 0);
    case Metric::Assert: return static_cast<std::int64_t>(assert_image(e.asserts(), view).cost);
    }
    return 0;
}

std::vector<std::uint64_t> parse_precondition(std::string_view text, std::size_t width) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item.size() != width)
            throw Error("MalformedBasisState", "precondition state '" + std::string(item) + "' should have " +
                                                   std::to_string(width) + " bits");
        out.push_back(parse_basis_string(item));
        start = end + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CircuitStats circuit_stats(const Circuit& c, const GateSpec& spec) {
    CircuitStats s;
    s.gates = make_algebra(Metric::GateCount)->abstract(c, spec).scalar();
    s.width = make_algebra(Metric::Width)->abstract(c, spec).scalar();
    s.depth = std::max<Tropical>(depth_bound(make_algebra(Metric::Depth)->abstract(c, spec).depth()), 0);
    return s;
}

} // namespace pqc
