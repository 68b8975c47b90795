#include "properties.hpp"

#include "oracles.hpp"
#include "random_circuit.hpp"
#include "random_program.hpp"

#include "pqc/circuit_io.hpp"
#include "pqc/driver.hpp"
#include "pqc/effects.hpp"
#include "pqc/error.hpp"
#include "pqc/eval.hpp"
#include "pqc/syntax.hpp"
#include "pqc/typecheck.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace pqc::testing {

void PropertyResult::fail(std::string why) {
    if (failures++ == 0) detail = std::move(why);
}

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Runs `body` once per case, turning exceptions into failures.
PropertyResult run_cases(std::string name, std::size_t n, const std::function<void(std::size_t, PropertyResult&)>& body) {
    PropertyResult r;
    r.name = std::move(name);
    for (std::size_t i = 0; i < n; ++i) {
        ++r.cases;
        try {
            body(i, r);
        } catch (const std::exception& e) {
            r.fail("case " + std::to_string(i) + ": " + e.what());
        }
    }
    return r;
}

std::string describe(const Circuit& c) { return serialize(c); }

LoadedProgram load(const std::string& text) { return load_program_text(text, "."); }

/// Raises some entries of an effect, giving f with e ≲ f.
Effect bump(Rng& rng, const Effect& e) {
    Effect f = e;
    auto raise = [&](Tropical& x) {
        if (pick(rng, 0, 1) == 0) return;
        x = std::max<Tropical>(x, 0) + static_cast<Tropical>(pick(rng, 0, 3));
    };
    if (auto* s = std::get_if<std::uint64_t>(&f.value)) {
        *s += pick(rng, 0, 3);
    } else if (auto* d = std::get_if<DepthTriple>(&f.value)) {
        for (std::size_t i = 0; i < d->a.rows(); ++i)
            for (std::size_t j = 0; j < d->a.cols(); ++j) raise(d->a.at(i, j));
        for (Tropical& x : d->v) raise(x);
        for (Tropical& x : d->w) raise(x);
    } else {
        auto& t = std::get<AssertTable>(f.value);
        for (std::uint64_t b = 0; b < t.in_states(); ++b)
            for (std::uint64_t z = 0; z < t.out_states(); ++z) raise(t.matrix().at(b, z));
    }
    return f;
}

} // namespace

std::vector<SuiteProgram> program_suite(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<SuiteProgram> out;
    for (std::size_t i = 0; i < n; ++i) {
        RandomProgramOptions opts;
        opts.qubits_only = i % 2 == 0;
        out.push_back({random_program(rng, opts), opts.qubits_only});
    }
    return out;
}

PropertyResult functor_laws(Metric m, std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const auto alg = make_algebra(m);
    RandomCircuitOptions opts;
    opts.qubits_only = m == Metric::Assert;
    return run_cases(std::string("functor laws: ") + std::string(metric_name(m)), n,
                     [&](std::size_t, PropertyResult& r) {
                         const Circuit c = random_circuit(rng, spec, opts);
                         const Circuit d = random_circuit_from(rng, spec, c.cod(), opts);
                         const Effect ec = alg->abstract(c, spec);
                         const Effect ed = alg->abstract(d, spec);
                         if (alg->abstract(compose(c, d), spec) != alg->compose(ec, ed))
                             r.fail("compose: " + describe(c) + " ; " + describe(d));
                         if (alg->abstract(Circuit::identity(c.dom()), spec) != alg->identity(alg->object_of(c.dom())))
                             r.fail("identity on " + to_string(c.dom()));
                         const std::size_t room = opts.max_wires > 3 ? 2 : 1;
                         const CircuitObject a = random_object(rng, room, opts.qubits_only);
                         if (alg->abstract(whisker_left(a, c), spec) != alg->whisker_left(alg->object_of(a), ec))
                             r.fail("whisker_left " + to_string(a) + ": " + describe(c));
                         if (alg->abstract(whisker_right(c, a), spec) != alg->whisker_right(ec, alg->object_of(a)))
                             r.fail("whisker_right " + to_string(a) + ": " + describe(c));
                     });
}

PropertyResult monotonicity(Metric m, std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const auto alg = make_algebra(m);
    RandomCircuitOptions opts;
    opts.qubits_only = m == Metric::Assert;
    opts.max_wires = m == Metric::Assert ? 4 : 6;
    return run_cases(std::string("monotonicity: ") + std::string(metric_name(m)), n,
                     [&](std::size_t, PropertyResult& r) {
                         const Circuit c = random_circuit(rng, spec, opts);
                         const Circuit d = random_circuit_from(rng, spec, c.cod(), opts);
                         const Effect e1 = alg->abstract(c, spec);
                         const Effect e2 = alg->abstract(d, spec);
                         const Effect f1 = bump(rng, e1);
                         const Effect f2 = bump(rng, e2);
                         if (!alg->leq(e1, f1) || !alg->leq(e2, f2)) {
                             r.fail("raised effect not above the original");
                             return;
                         }
                         if (!alg->leq(alg->compose(e1, e2), alg->compose(f1, f2)))
                             r.fail("compose: " + to_string(e1) + " ; " + to_string(e2));
                         const AlgebraObject a = alg->object_of(random_object(rng, 1, opts.qubits_only));
                         if (!alg->leq(alg->whisker_left(a, e1), alg->whisker_left(a, f1)))
                             r.fail("whisker_left: " + to_string(e1));
                         if (!alg->leq(alg->whisker_right(e1, a), alg->whisker_right(f1, a)))
                             r.fail("whisker_right: " + to_string(e1));
                     });
}

PropertyResult depth_oracle_agreement(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const auto alg = make_algebra(Metric::Depth);
    return run_cases("depth oracle", n, [&](std::size_t, PropertyResult& r) {
        const Circuit c = random_circuit(rng, spec);
        const DepthTriple t = alg->abstract(c, spec).depth();
        if (t != depth_oracle(c, spec)) r.fail("triple: " + describe(c));
        if (depth_bound(t) != longest_anchored_path(c, spec)) r.fail("bound: " + describe(c));
    });
}

PropertyResult width_oracle_agreement(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const auto alg = make_algebra(Metric::Width);
    return run_cases("width oracle", n, [&](std::size_t, PropertyResult& r) {
        const Circuit c = random_circuit(rng, spec);
        if (alg->abstract(c, spec).scalar() != width_oracle(c)) r.fail(describe(c));
    });
}

PropertyResult count_oracle_agreement(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const auto gates = make_algebra(Metric::GateCount);
    const auto naive = make_algebra(Metric::NaiveDepth);
    return run_cases("gate count and naive depth oracles", n, [&](std::size_t, PropertyResult& r) {
        const Circuit c = random_circuit(rng, spec);
        if (gates->abstract(c, spec).scalar() != gate_count_oracle(c, spec)) r.fail("gates: " + describe(c));
        if (naive->abstract(c, spec).scalar() != naive_depth_oracle(c)) r.fail("naive depth: " + describe(c));
    });
}

PropertyResult assert_oracle_agreement(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const auto alg = make_algebra(Metric::Assert);
    RandomCircuitOptions opts;
    opts.qubits_only = true;
    return run_cases("assert oracle", n, [&](std::size_t, PropertyResult& r) {
        const Circuit c = random_circuit(rng, spec, opts);
        if (alg->abstract(c, spec).asserts() != assert_oracle(c, spec)) r.fail(describe(c));
    });
}

PropertyResult assert_within_count(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const auto alg = make_algebra(Metric::Assert);
    RandomCircuitOptions opts;
    opts.qubits_only = true;
    return run_cases("assert cost within gate count", n, [&](std::size_t, PropertyResult& r) {
        const Circuit c = random_circuit(rng, spec, opts);
        const AssertTable t = alg->abstract(c, spec).asserts();
        const auto count = static_cast<Tropical>(gate_count_oracle(c, spec));
        for (std::uint64_t b = 0; b < t.in_states(); ++b)
            if (static_cast<Tropical>(t.row(b).cost) > count) r.fail(describe(c));
    });
}

PropertyResult assert_join_law(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    return run_cases("assert join law", n, [&](std::size_t, PropertyResult& r) {
        const std::size_t in = pick(rng, 0, 4);
        const std::size_t out = pick(rng, 0, 4);
        AssertTable t(in, out);
        for (std::uint64_t b = 0; b < t.in_states(); ++b) {
            for (std::uint64_t z = 0; z < t.out_states(); ++z)
                if (pick(rng, 0, 2) == 0) t.set(b, z, static_cast<Tropical>(pick(rng, 0, 5)));
            const std::uint64_t forced = pick(rng, 0, t.out_states() - 1);
            if (t.cost(b, forced) == kNegInf) t.set(b, forced, static_cast<Tropical>(pick(rng, 0, 5)));
        }
        auto subset = [&] {
            std::vector<std::uint64_t> s;
            for (std::uint64_t b = 0; b < t.in_states(); ++b)
                if (pick(rng, 0, 1) == 1) s.push_back(b);
            return s;
        };
        const auto l1 = subset();
        const auto l2 = subset();
        std::vector<std::uint64_t> both = l1;
        both.insert(both.end(), l2.begin(), l2.end());
        std::sort(both.begin(), both.end());
        both.erase(std::unique(both.begin(), both.end()), both.end());
        const AssertTable::Image i1 = t.extend(l1);
        const AssertTable::Image i2 = t.extend(l2);
        AssertTable::Image expected;
        std::set_union(i1.post.begin(), i1.post.end(), i2.post.begin(), i2.post.end(),
                       std::back_inserter(expected.post));
        expected.cost = std::max(i1.cost, i2.cost);
        if (t.extend(both) != expected) r.fail("table " + std::to_string(in) + "x" + std::to_string(out));
    });
}

PropertyResult circuit_json_round_trip(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    const GateRegistry registry = spec.registry();
    return run_cases("circuit json round trip", n, [&](std::size_t, PropertyResult& r) {
        const Circuit c = canonicalize(random_circuit(rng, spec));
        if (deserialize(serialize(c), registry) != c) r.fail(describe(c));
    });
}

PropertyResult type_preservation(std::uint64_t seed, std::size_t n) {
    const auto suite = program_suite(seed, n);
    return run_cases("type preservation", n, [&](std::size_t i, PropertyResult& r) {
        const LoadedProgram lp = load(suite[i].text);
        const TypedProgram typed = typecheck_program(lp.program);
        const ValueConfiguration out = run_program(lp.program, 1000000);
        if (!check_value_configuration(lp.program.inputs, out.circuit, out.out_ctx, *out.value, *typed.type))
            r.fail(suite[i].text);
    });
}

PropertyResult circuit_prefix(std::uint64_t seed, std::size_t n) {
    const auto suite = program_suite(seed, n);
    return run_cases("circuit prefix", n, [&](std::size_t i, PropertyResult& r) {
        const LoadedProgram lp = load(suite[i].text);
        const ValueConfiguration out = run_program(lp.program, 1000000);
        const Circuit start = Circuit::identity(lp.program.inputs.object());
        if (out.circuit.dom() != start.dom() || compose(start, extension(start, out.circuit)) != out.circuit)
            r.fail(suite[i].text);
    });
}

PropertyResult dynamic_soundness(Metric m, std::uint64_t seed, std::size_t n) {
    const auto suite = program_suite(seed, n);
    const auto alg = make_algebra(m);
    return run_cases(std::string("dynamic soundness: ") + std::string(metric_name(m)), n,
                     [&](std::size_t i, PropertyResult& r) {
                         if (m == Metric::Assert && !suite[i].qubits_only) {
                             --r.cases;
                             return;
                         }
                         const LoadedProgram lp = load(suite[i].text);
                         const VerifyReport rep = verify_dynamic(lp.program, *alg, lp.spec, 1000000);
                         if (!rep.holds)
                             r.fail(suite[i].text + "\ninferred " + to_string(rep.inferred) + "\nobserved " +
                                    to_string(rep.observed));
                     });
}

namespace {

/// Output positions of the wires of a result value, in traversal order.
std::vector<std::size_t> result_positions(const ValueConfiguration& v) {
    std::vector<std::size_t> out;
    const auto bundle = value_bundle(*v.value);
    if (!bundle) throw Error("Stuck", "result is not a wire bundle: " + print(*v.value));
    for (Label l : bundle->labels()) out.push_back(v.out_ctx.index_of(l).value());
    return out;
}

/// The produced circuit with outputs reordered to follow the result value,
/// which makes label choices unobservable.
Circuit observed_circuit(const ValueConfiguration& v) {
    const std::vector<std::size_t> order = result_positions(v);
    if (order.size() != v.out_ctx.size()) throw Error("Stuck", "result does not mention every output");
    return canonicalize(compose(v.circuit, Circuit::permutation(v.circuit.cod(), order)));
}

} // namespace

PropertyResult box_apply_coherence(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    return run_cases("box/apply coherence", n, [&](std::size_t, PropertyResult& r) {
        RandomProgramOptions opts;
        opts.qubits_only = pick(rng, 0, 1) == 0;
        const RandomFunction f = random_function(rng, opts);
        const LoadedProgram boxed = load(f.boxed_program());
        const LoadedProgram direct = load(f.direct_program());
        typecheck_program(boxed.program);
        typecheck_program(direct.program);
        const ValueConfiguration a = run_program(boxed.program, 1000000);
        const ValueConfiguration b = run_program(direct.program, 1000000);
        const Circuit ca = observed_circuit(a);
        const Circuit cb = observed_circuit(b);
        if (ca != cb) r.fail("circuits differ for " + f.lambda + "\n" + describe(ca) + "\n" + describe(cb));
    });
}

PropertyResult principality(Metric m, std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const auto alg = make_algebra(m);
    const GateSpec spec = GateSpec::builtin();
    return run_cases(std::string("principality: ") + std::string(metric_name(m)), n,
                     [&](std::size_t, PropertyResult& r) {
                         RandomProgramOptions opts;
                         opts.first_order = true;
                         opts.max_steps = 4;
                         const RandomFunction f = random_function(rng, opts);
                         const std::string box = "box[" + f.param_type + "] (" + f.lambda + ")";
                         EffectChecker checker(*alg, spec);
                         const auto circ = checker.infer_term(TypingContext(), *desugar(parse_term(box), spec)).type;
                         const Effect inferred = *circ->effect;
                         const std::string result = print(*ast::from_bundle(circ->circ_out));
                         const std::uint64_t top = effect_magnitude(inferred) + 2;
                         for (std::uint64_t d = 0; d <= top; ++d) {
                             const std::string text = f.header + "let c = " + box + " in\nlet g = return (\\k:Circ[" +
                                                      std::to_string(d) + "](" + f.param_type + ", " + result +
                                                      "). apply(k, " + f.args + ")) in\ng c\n";
                             const LoadedProgram lp = load(text);
                             bool accepted = true;
                             try {
                                 infer_program(lp.program, *alg, lp.spec);
                             } catch (const EffectError&) {
                                 accepted = false;
                             }
                             const auto declared = alg->from_literal(d, inferred.dom, inferred.cod);
                             if (accepted != check_ascription(*alg, inferred, *declared))
                                 r.fail("declared " + std::to_string(d) + " against " + to_string(inferred) + "\n" +
                                        text);
                         }
                     });
}

PropertyResult monotone_refinement(Metric m, std::uint64_t seed, std::size_t n) {
    const auto suite = program_suite(seed, n);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto alg = make_algebra(m);
    static const char* const gates[] = {"H", "X", "Z", "CNOT", "init", "discard", "meas"};
    return run_cases(std::string("monotone refinement: ") + std::string(metric_name(m)), n,
                     [&](std::size_t i, PropertyResult& r) {
                         if (m == Metric::Assert && !suite[i].qubits_only) {
                             --r.cases;
                             return;
                         }
                         const LoadedProgram lp = load(suite[i].text);
                         GateSpec heavier = lp.spec;
                         GateDef def = heavier.at(gates[pick(rng, 0, m == Metric::Assert ? 5 : 6)]);
                         def.count += pick(rng, 1, 3);
                         def.depth += pick(rng, 1, 3);
                         heavier.define(def);
                         const auto before = effect_magnitude(infer_program(lp.program, *alg, lp.spec).effect);
                         const auto after = effect_magnitude(infer_program(lp.program, *alg, heavier).effect);
                         if (after < before)
                             r.fail(def.gate.name + " raised: " + std::to_string(before) + " -> " +
                                    std::to_string(after) + "\n" + suite[i].text);
                     });
}

PropertyResult parser_round_trip(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const GateSpec spec = GateSpec::builtin();
    return run_cases("parser round trip", n, [&](std::size_t i, PropertyResult& r) {
        RandomProgramOptions opts;
        opts.qubits_only = i % 2 == 0;
        std::string text;
        if (i % 3 == 0) {
            const RandomFunction f = random_function(rng, opts);
            text = i % 2 == 0 ? f.boxed_program() : f.direct_program();
        } else {
            text = random_program(rng, opts);
        }
        ast::Program p = parse_program(text);
        p.main = desugar(p.main, spec);
        ast::Program again = parse_program(print(p));
        again.main = desugar(again.main, spec);
        if (!(again.inputs == p.inputs) || !ast::alpha_equal(*again.main, *p.main)) r.fail(print(p));
        if (!ast::alpha_equal(*desugar(p.main, spec), *p.main)) r.fail("desugar not idempotent: " + print(p));
    });
}

namespace {

BundleType random_bundle(Rng& rng, int depth) {
    switch (pick(rng, 0, depth > 0 ? 3 : 2)) {
    case 0: return BundleType::unit();
    case 1: return BundleType::wire(WireType::Qubit);
    case 2: return BundleType::wire(WireType::Bit);
    default: return BundleType::tensor(random_bundle(rng, depth - 1), random_bundle(rng, depth - 1));
    }
}

std::optional<std::uint64_t> random_literal(Rng& rng) {
    if (pick(rng, 0, 1) == 0) return std::nullopt;
    return pick(rng, 0, 9);
}

ast::TypePtr random_type(Rng& rng, int depth) {
    switch (pick(rng, 0, depth > 0 ? 7 : 4)) {
    case 0: return ast::unit_type();
    case 1: return ast::nat_type();
    case 2: return ast::wire_type(WireType::Qubit);
    case 3: return ast::wire_type(WireType::Bit);
    case 4: return ast::bundle_unit_type();
    case 5: return ast::tensor_type(random_type(rng, depth - 1), random_type(rng, depth - 1));
    case 6:
        return pick(rng, 0, 1) == 0 ? ast::bang_type(random_type(rng, depth - 1), random_literal(rng))
                                    : ast::circ_type(random_bundle(rng, 2), random_bundle(rng, 2), random_literal(rng));
    default: {
        const BundleType captured = pick(rng, 0, 1) == 0 ? BundleType::unit() : random_bundle(rng, 2);
        return ast::arrow_type(random_type(rng, depth - 1), random_type(rng, depth - 1), captured,
                               random_literal(rng));
    }
    }
}

} // namespace

PropertyResult type_round_trip(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    return run_cases("type round trip", n, [&](std::size_t, PropertyResult& r) {
        const ast::TypePtr t = random_type(rng, 3);
        const std::string text = print(*t);
        if (!ast::type_equal_syntactic(*parse_type(text), *t)) r.fail(text);
    });
}

} // namespace pqc::testing
