#include "pqc/algebra.hpp"

#include "pqc/error.hpp"
#include "pqc/gate_spec.hpp"

#include <algorithm>

namespace pqc {

std::string_view metric_name(Metric m) {
    switch (m) {
    case Metric::GateCount: return "gates";
    case Metric::NaiveDepth: return "depth-naive";
    case Metric::Width: return "width";
    case Metric::Depth: return "depth";
    case Metric::Assert: return "assert";
    }
    return "";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (Metric m : kAllMetrics)
        if (metric_name(m) == name) return m;
    return std::nullopt;
}

Tropical depth_bound(const DepthTriple& t) {
    Tropical best = t.a.max_entry();
    for (Tropical x : t.v) best = trop_max(best, x);
    for (Tropical x : t.w) best = trop_max(best, x);
    return best;
}

AssertTable::AssertTable(std::size_t in_qubits, std::size_t out_qubits)
    : in_(in_qubits), out_(out_qubits) {
    if (in_qubits > kMaxAssertQubits || out_qubits > kMaxAssertQubits)
        throw AlgebraError("TooManyQubits", "assertion tables are limited to " +
                                                std::to_string(kMaxAssertQubits) + " qubits");
    matrix_ = TropicalMatrix(std::size_t{1} << in_qubits, std::size_t{1} << out_qubits);
}

AssertTable AssertTable::identity(std::size_t qubits) {
    AssertTable t(qubits, qubits);
    for (std::uint64_t b = 0; b < t.in_states(); ++b) t.set(b, b, 0);
    return t;
}

AssertTable::Image AssertTable::row(std::uint64_t pre) const {
    Image img;
    Tropical best = kNegInf;
    for (std::uint64_t z = 0; z < out_states(); ++z) {
        const Tropical c = cost(pre, z);
        if (c == kNegInf) continue;
        img.post.push_back(z);
        best = trop_max(best, c);
    }
    img.cost = best == kNegInf ? 0 : static_cast<std::uint64_t>(best);
    return img;
}

AssertTable::Image AssertTable::extend(const std::vector<std::uint64_t>& pre) const {
    std::vector<bool> reached(out_states(), false);
    Image img;
    for (std::uint64_t b : pre) {
        if (b >= in_states()) throw AlgebraError("ObjectMismatch", "basis state outside the table");
        Image r = row(b);
        for (std::uint64_t z : r.post) reached[z] = true;
        img.cost = std::max(img.cost, r.cost);
    }
    for (std::uint64_t z = 0; z < out_states(); ++z)
        if (reached[z]) img.post.push_back(z);
    return img;
}

std::string basis_string(std::uint64_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
    return s;
}

std::uint64_t parse_basis_string(std::string_view bits) {
    if (bits.size() > kMaxAssertQubits)
        throw AlgebraError("TooManyQubits", "basis state \"" + std::string(bits) + "\" is too wide");
    std::uint64_t v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw AlgebraError("MalformedBasisState", "basis state \"" + std::string(bits) + "\" is not a bit string");
        v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return v;
}

namespace {

std::string vector_string(const std::vector<Tropical>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + tropical_to_string(v[i]);
    return s + ")";
}

} // namespace

std::string to_string(const Effect& e) {
    switch (e.metric) {
    case Metric::GateCount:
    case Metric::NaiveDepth:
    case Metric::Width: return std::to_string(e.scalar());
    case Metric::Depth: {
        const DepthTriple& t = e.depth();
        std::string s = "A=(";
        for (std::size_t i = 0; i < t.a.rows(); ++i) {
            std::vector<Tropical> row;
            for (std::size_t j = 0; j < t.a.cols(); ++j) row.push_back(t.a.at(i, j));
            s += (i ? "," : "") + vector_string(row);
        }
        return s + ") v=" + vector_string(t.v) + " w=" + vector_string(t.w);
    }
    case Metric::Assert: {
        const AssertTable& t = e.asserts();
        std::string s;
        for (std::uint64_t b = 0; b < t.in_states(); ++b) {
            AssertTable::Image img = t.row(b);
            s += (b ? "; " : "") + basis_string(b, t.in_qubits()) + "->{";
            for (std::size_t k = 0; k < img.post.size(); ++k)
                s += (k ? "," : "") + basis_string(img.post[k], t.out_qubits());
            s += "}:" + std::to_string(img.cost);
        }
        return s;
    }
    }
    return {};
}

Effect CircuitAlgebra::join(const Effect& e, const Effect&) const {
    throw AlgebraError("NoJoin", "algebra " + std::string(metric_name(e.metric)) + " has no joins");
}

std::optional<Effect> CircuitAlgebra::from_literal(std::uint64_t, AlgebraObject, AlgebraObject) const {
    return std::nullopt;
}

void CircuitAlgebra::check_composable(const Effect& e, const Effect& f) const {
    if (e.metric != metric() || f.metric != metric())
        throw AlgebraError("ObjectMismatch", "effect belongs to another algebra");
    if (e.cod != f.dom)
        throw AlgebraError("ObjectMismatch", "cannot compose effects " + std::to_string(e.dom) + "->" +
                                                 std::to_string(e.cod) + " and " + std::to_string(f.dom) +
                                                 "->" + std::to_string(f.cod));
}

void CircuitAlgebra::check_parallel(const Effect& e, const Effect& f) const {
    if (e.metric != metric() || f.metric != metric())
        throw AlgebraError("ObjectMismatch", "effect belongs to another algebra");
    if (e.dom != f.dom || e.cod != f.cod)
        throw AlgebraError("ObjectMismatch", "effects have different endpoints");
}

Effect CircuitAlgebra::abstract_step(const CircuitObject& in, const PrimStep& step, const GateSpec& spec) const {
    if (const auto* layer = std::get_if<Layer>(&step)) return abstract_layer(in, *layer, spec);
    return abstract_perm(in, std::get<Perm>(step));
}

Effect CircuitAlgebra::abstract(const Circuit& c, const GateSpec& spec) const {
    Effect acc = identity(object_of(c.dom()));
    CircuitObject current = c.dom();
    for (const PrimStep& s : c.steps()) {
        acc = compose(acc, abstract_step(current, s, spec));
        current = step_output(current, s);
    }
    return acc;
}

namespace {

/// GateCount and NaiveDepth: the monoid (ℕ, +, 0) on a single object.
class ScalarAlgebra : public CircuitAlgebra {
public:
    explicit ScalarAlgebra(Metric m) : metric_(m) {}

    Metric metric() const override { return metric_; }
    AlgebraObject object_of(const CircuitObject&) const override { return 0; }
    Effect identity(AlgebraObject) const override { return make(0); }

    Effect compose(const Effect& e, const Effect& f) const override {
        check_composable(e, f);
        return make(e.scalar() + f.scalar());
    }
    Effect whisker_left(AlgebraObject, const Effect& e) const override { return e; }
    Effect whisker_right(const Effect& e, AlgebraObject) const override { return e; }
    AlgebraObject tensor(AlgebraObject, AlgebraObject) const override { return 0; }

    bool leq(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        return e.scalar() <= f.scalar();
    }
    Effect join(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        return make(std::max(e.scalar(), f.scalar()));
    }
    std::optional<Effect> from_literal(std::uint64_t n, AlgebraObject, AlgebraObject) const override {
        return make(n);
    }

protected:
    Effect abstract_layer(const CircuitObject&, const Layer& layer, const GateSpec& spec) const override {
        if (metric_ == Metric::NaiveDepth) return make(1);
        std::uint64_t total = 0;
        for (const Placement& p : layer.placements) total += spec.at(p.gate.name).count;
        return make(total);
    }
    Effect abstract_perm(const CircuitObject&, const Perm&) const override { return make(0); }

private:
    Effect make(std::uint64_t n) const { return Effect{metric_, 0, 0, n}; }

    Metric metric_;
};

/// Width: morphisms k -> m are naturals, composition is max and whiskering
/// by j adds j.
class WidthAlgebra : public CircuitAlgebra {
public:
    Metric metric() const override { return Metric::Width; }
    AlgebraObject object_of(const CircuitObject& obj) const override { return obj.size(); }
    Effect identity(AlgebraObject a) const override { return make(a, a, a); }

    Effect compose(const Effect& e, const Effect& f) const override {
        check_composable(e, f);
        return make(e.dom, f.cod, std::max(e.scalar(), f.scalar()));
    }
    Effect whisker_left(AlgebraObject a, const Effect& e) const override {
        return make(a + e.dom, a + e.cod, a + e.scalar());
    }
    Effect whisker_right(const Effect& e, AlgebraObject a) const override {
        return make(e.dom + a, e.cod + a, e.scalar() + a);
    }
    AlgebraObject tensor(AlgebraObject a, AlgebraObject b) const override { return a + b; }

    bool leq(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        return e.scalar() <= f.scalar();
    }
    Effect join(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        return make(e.dom, e.cod, std::max(e.scalar(), f.scalar()));
    }
    std::optional<Effect> from_literal(std::uint64_t n, AlgebraObject dom, AlgebraObject cod) const override {
        return make(dom, cod, n);
    }

protected:
    Effect abstract_layer(const CircuitObject& in, const Layer& layer, const GateSpec&) const override {
        const std::size_t out = step_output(in, layer).size();
        return make(in.size(), out, std::max(in.size(), out));
    }
    Effect abstract_perm(const CircuitObject& in, const Perm&) const override {
        return identity(in.size());
    }

private:
    static Effect make(AlgebraObject dom, AlgebraObject cod, std::uint64_t n) {
        return Effect{Metric::Width, dom, cod, n};
    }
};

/// Depth: triples (A, v, w) over the max-plus semiring.
class DepthAlgebra : public CircuitAlgebra {
public:
    Metric metric() const override { return Metric::Depth; }
    AlgebraObject object_of(const CircuitObject& obj) const override { return obj.size(); }

    Effect identity(AlgebraObject a) const override {
        return make(DepthTriple{TropicalMatrix::identity(a), std::vector<Tropical>(a, kNegInf),
                                std::vector<Tropical>(a, kNegInf)});
    }

    Effect compose(const Effect& e, const Effect& f) const override {
        check_composable(e, f);
        const DepthTriple& x = e.depth();
        const DepthTriple& y = f.depth();
        return make(DepthTriple{x.a * y.a, pointwise_max(x.v, x.a * y.v), pointwise_max(y.w, x.w * y.a)});
    }

    Effect whisker_left(AlgebraObject a, const Effect& e) const override {
        return make(direct_sum(identity(a).depth(), e.depth()));
    }
    Effect whisker_right(const Effect& e, AlgebraObject a) const override {
        return make(direct_sum(e.depth(), identity(a).depth()));
    }
    AlgebraObject tensor(AlgebraObject a, AlgebraObject b) const override { return a + b; }

    bool leq(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        const DepthTriple& x = e.depth();
        const DepthTriple& y = f.depth();
        auto vec_leq = [](const std::vector<Tropical>& p, const std::vector<Tropical>& q) {
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] > q[i]) return false;
            return true;
        };
        return x.a.pointwise_leq(y.a) && vec_leq(x.v, y.v) && vec_leq(x.w, y.w);
    }
    Effect join(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        const DepthTriple& x = e.depth();
        const DepthTriple& y = f.depth();
        return make(DepthTriple{x.a.pointwise_max(y.a), pointwise_max(x.v, y.v), pointwise_max(x.w, y.w)});
    }
    /// Every path, including those through islands, is bounded by n.
    std::optional<Effect> from_literal(std::uint64_t n, AlgebraObject dom, AlgebraObject cod) const override {
        const auto t = static_cast<Tropical>(n);
        return make(DepthTriple{TropicalMatrix(dom, cod, t), std::vector<Tropical>(dom, t), std::vector<Tropical>(cod, t)});
    }

protected:
    Effect abstract_layer(const CircuitObject& in, const Layer& layer, const GateSpec& spec) const override {
        DepthTriple acc{TropicalMatrix(0, 0), {}, {}};
        std::size_t pos = 0;
        for (const Placement& p : layer.placements) {
            for (; pos < p.at; ++pos) acc = direct_sum(acc, identity(1).depth());
            acc = direct_sum(acc, generator(p.gate, spec.at(p.gate.name).depth));
            pos = p.at + p.gate.dom.size();
        }
        for (; pos < in.size(); ++pos) acc = direct_sum(acc, identity(1).depth());
        return make(std::move(acc));
    }

    Effect abstract_perm(const CircuitObject& in, const Perm& perm) const override {
        const std::size_t n = in.size();
        TropicalMatrix m(n, n);
        for (std::size_t j = 0; j < n; ++j) m.at(perm.sources[j], j) = 0;
        return make(DepthTriple{std::move(m), std::vector<Tropical>(n, kNegInf), std::vector<Tropical>(n, kNegInf)});
    }

private:
    static DepthTriple generator(const Gate& g, std::uint64_t weight) {
        const auto d = static_cast<Tropical>(weight);
        const std::size_t k1 = g.dom.size();
        const std::size_t k2 = g.cod.size();
        return DepthTriple{TropicalMatrix(k1, k2, d), std::vector<Tropical>(k1, k2 == 0 ? d : kNegInf),
                           std::vector<Tropical>(k2, k1 == 0 ? d : kNegInf)};
    }

    static DepthTriple direct_sum(const DepthTriple& x, const DepthTriple& y) {
        DepthTriple out{x.a.direct_sum(y.a), x.v, x.w};
        out.v.insert(out.v.end(), y.v.begin(), y.v.end());
        out.w.insert(out.w.end(), y.w.begin(), y.w.end());
        return out;
    }

    static Effect make(DepthTriple t) {
        const AlgebraObject dom = t.a.rows();
        const AlgebraObject cod = t.a.cols();
        return Effect{Metric::Depth, dom, cod, std::move(t)};
    }
};

/// Asrt: max-plus matrices indexed by computational basis states.
class AssertAlgebra : public CircuitAlgebra {
public:
    Metric metric() const override { return Metric::Assert; }

    AlgebraObject object_of(const CircuitObject& obj) const override {
        for (WireType w : obj)
            if (w != WireType::Qubit)
                throw AlgebraError("UnsupportedWire", "assertion tables only cover qubit wires");
        return obj.size();
    }

    Effect identity(AlgebraObject a) const override { return make(AssertTable::identity(a)); }

    Effect compose(const Effect& e, const Effect& f) const override {
        check_composable(e, f);
        AssertTable t(e.dom, f.cod);
        t.matrix() = e.asserts().matrix() * f.asserts().matrix();
        return make(std::move(t));
    }

    Effect whisker_left(AlgebraObject a, const Effect& e) const override {
        const AssertTable& x = e.asserts();
        AssertTable t(a + e.dom, a + e.cod);
        for (std::uint64_t hi = 0; hi < (std::uint64_t{1} << a); ++hi)
            for (std::uint64_t b = 0; b < x.in_states(); ++b)
                for (std::uint64_t z = 0; z < x.out_states(); ++z)
                    t.set((hi << e.dom) | b, (hi << e.cod) | z, x.cost(b, z));
        return make(std::move(t));
    }

    Effect whisker_right(const Effect& e, AlgebraObject a) const override {
        const AssertTable& x = e.asserts();
        AssertTable t(e.dom + a, e.cod + a);
        for (std::uint64_t b = 0; b < x.in_states(); ++b)
            for (std::uint64_t z = 0; z < x.out_states(); ++z)
                for (std::uint64_t lo = 0; lo < (std::uint64_t{1} << a); ++lo)
                    t.set((b << a) | lo, (z << a) | lo, x.cost(b, z));
        return make(std::move(t));
    }

    AlgebraObject tensor(AlgebraObject a, AlgebraObject b) const override { return a + b; }

    bool leq(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        return e.asserts().matrix().pointwise_leq(f.asserts().matrix());
    }

    Effect join(const Effect& e, const Effect& f) const override {
        check_parallel(e, f);
        AssertTable t(e.dom, e.cod);
        t.matrix() = e.asserts().matrix().pointwise_max(f.asserts().matrix());
        return make(std::move(t));
    }

protected:
    Effect abstract_layer(const CircuitObject& in, const Layer& layer, const GateSpec& spec) const override {
        const std::size_t m = object_of(in);
        const std::size_t n = object_of(step_output(in, layer));

        struct Segment {
            std::size_t in_width;
            std::size_t out_width;
            std::optional<AssertTable> table;
        };
        std::vector<Segment> segments;
        std::size_t pos = 0;
        for (const Placement& p : layer.placements) {
            for (; pos < p.at; ++pos) segments.push_back({1, 1, std::nullopt});
            segments.push_back({p.gate.dom.size(), p.gate.cod.size(), spec.assert_table(p.gate.name)});
            pos = p.at + p.gate.dom.size();
        }
        for (; pos < m; ++pos) segments.push_back({1, 1, std::nullopt});

        AssertTable t(m, n);
        for (std::uint64_t b = 0; b < t.in_states(); ++b) {
            // Partial outputs as (bits so far, cost so far).
            std::vector<std::pair<std::uint64_t, Tropical>> partial{{0, 0}};
            std::size_t consumed = 0;
            for (const Segment& s : segments) {
                const std::uint64_t chunk =
                    (b >> (m - consumed - s.in_width)) & ((std::uint64_t{1} << s.in_width) - 1);
                consumed += s.in_width;
                std::vector<std::pair<std::uint64_t, Tropical>> next;
                for (const auto& [bits, cost] : partial) {
                    if (!s.table) {
                        next.emplace_back((bits << 1) | chunk, cost);
                        continue;
                    }
                    for (std::uint64_t z = 0; z < s.table->out_states(); ++z) {
                        const Tropical c = s.table->cost(chunk, z);
                        if (c == kNegInf) continue;
                        next.emplace_back((bits << s.out_width) | z, cost + c);
                    }
                }
                partial = std::move(next);
            }
            for (const auto& [z, cost] : partial) t.set(b, z, trop_max(t.cost(b, z), cost));
        }
        return make(std::move(t));
    }

    Effect abstract_perm(const CircuitObject& in, const Perm& perm) const override {
        const std::size_t n = object_of(in);
        AssertTable t(n, n);
        for (std::uint64_t b = 0; b < t.in_states(); ++b) {
            std::uint64_t z = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const std::uint64_t bit = (b >> (n - 1 - perm.sources[j])) & 1U;
                z |= bit << (n - 1 - j);
            }
            t.set(b, z, 0);
        }
        return make(std::move(t));
    }

private:
    static Effect make(AssertTable t) {
        const AlgebraObject dom = t.in_qubits();
        const AlgebraObject cod = t.out_qubits();
        return Effect{Metric::Assert, dom, cod, std::move(t)};
    }
};

} // namespace

std::unique_ptr<CircuitAlgebra> make_algebra(Metric m) {
    switch (m) {
    case Metric::GateCount:
    case Metric::NaiveDepth: return std::make_unique<ScalarAlgebra>(m);
    case Metric::Width: return std::make_unique<WidthAlgebra>();
    case Metric::Depth: return std::make_unique<DepthAlgebra>();
    case Metric::Assert: return std::make_unique<AssertAlgebra>();
    }
    return nullptr;
}

} // namespace pqc
