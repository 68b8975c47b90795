#include "support/properties.hpp"
#include "support/random_circuit.hpp"

#include <gtest/gtest.h>

namespace pqc::testing {
namespace {

void expect_holds(const PropertyResult& r, std::size_t min_cases) {
    EXPECT_GE(r.cases, min_cases) << r.name;
    EXPECT_EQ(r.failures, 0U) << r.name << ": " << r.detail;
}

class PerMetric : public ::testing::TestWithParam<Metric> {};

TEST_P(PerMetric, FunctorLaws) { expect_holds(functor_laws(GetParam(), suite_seed(), 200), 200); }

TEST_P(PerMetric, CompositionAndWhiskeringAreMonotone) {
    expect_holds(monotonicity(GetParam(), suite_seed(), 200), 200);
}

TEST_P(PerMetric, DynamicSoundness) {
    expect_holds(dynamic_soundness(GetParam(), suite_seed(), 100), GetParam() == Metric::Assert ? 50 : 100);
}

TEST_P(PerMetric, HeavierGatesNeverLowerTheInferredEffect) {
    expect_holds(monotone_refinement(GetParam(), suite_seed(), 100), GetParam() == Metric::Assert ? 50 : 100);
}

INSTANTIATE_TEST_SUITE_P(Algebras, PerMetric, ::testing::ValuesIn(kAllMetrics),
                         [](const auto& info) { return std::string(metric_name(info.param)) == "depth-naive"
                                                           ? std::string("naive_depth")
                                                           : std::string(metric_name(info.param)); });

class ScalarMetric : public ::testing::TestWithParam<Metric> {};

TEST_P(ScalarMetric, DeclaredEffectAcceptedExactlyWhenAboveInferred) {
    expect_holds(principality(GetParam(), suite_seed(), 60), 60);
}

INSTANTIATE_TEST_SUITE_P(Algebras, ScalarMetric,
                         ::testing::Values(Metric::GateCount, Metric::NaiveDepth, Metric::Width, Metric::Depth));

TEST(Oracles, DepthMatchesPathEnumeration) { expect_holds(depth_oracle_agreement(suite_seed(), 300), 300); }
TEST(Oracles, WidthMatchesLargestBoundary) { expect_holds(width_oracle_agreement(suite_seed(), 300), 300); }
TEST(Oracles, CountsMatch) { expect_holds(count_oracle_agreement(suite_seed(), 300), 300); }
TEST(Oracles, AssertMatchesBasisSimulation) { expect_holds(assert_oracle_agreement(suite_seed(), 200), 200); }
TEST(Oracles, AssertCostWithinGateCount) { expect_holds(assert_within_count(suite_seed(), 200), 200); }

TEST(AssertTables, JoinLaw) { expect_holds(assert_join_law(suite_seed(), 1000), 1000); }

TEST(CircuitIo, JsonRoundTrip) { expect_holds(circuit_json_round_trip(suite_seed(), 300), 300); }

TEST(Evaluation, TypePreservation) { expect_holds(type_preservation(suite_seed(), 200), 200); }
TEST(Evaluation, ResultExtendsInitialCircuit) { expect_holds(circuit_prefix(suite_seed(), 200), 200); }
TEST(Evaluation, BoxApplyCoherence) { expect_holds(box_apply_coherence(suite_seed(), 100), 100); }

TEST(Syntax, ProgramRoundTrip) { expect_holds(parser_round_trip(suite_seed(), 500), 500); }
TEST(Syntax, TypeRoundTrip) { expect_holds(type_round_trip(suite_seed(), 500), 500); }

} // namespace
} // namespace pqc::testing
