#include <doctest.h>

#include "properties.hpp"

namespace {

constexpr std::size_t kCases = 1000;

void expect(const properties::Outcome& o) {
  INFO(o.name << ": " << o.failures << " of " << o.cases << " failed; first: " << o.first_failure);
  CHECK(o.cases >= kCases);
  CHECK(o.ok());
}

}  // namespace

TEST_CASE("permutation invariance of the statistics") { expect(properties::permutation_invariance(101, kCases)); }
TEST_CASE("sum equals difference plus twice density") {
  expect(properties::sum_equals_diff_plus_twice_density(102, kCases));
}
TEST_CASE("odds ratio identity") { expect(properties::odds_ratio_identity(103, kCases)); }
TEST_CASE("rescaled propensities have community mean one") {
  expect(properties::rescaled_propensity_mean_one(104, kCases));
}
TEST_CASE("generators are deterministic") { expect(properties::generator_determinism(105, kCases)); }
TEST_CASE("false alarm rate never rises with q") { expect(properties::far_monotone_in_q(106, kCases)); }
TEST_CASE("wider limits signal a subset") { expect(properties::shewhart_signals_nested(107, kCases)); }
TEST_CASE("AUC is invariant under increasing transforms") {
  expect(properties::roc_invariant_under_monotone_transform(108, kCases));
}
TEST_CASE("anomalies leave other times untouched") {
  expect(properties::anomaly_leaves_outside_window_untouched(109, kCases));
}
TEST_CASE("binary networks threshold the counts") { expect(properties::binary_is_thresholded_count(110, kCases)); }
TEST_CASE("gradual ramp ends at the sustained value") {
  expect(properties::sustained_equals_gradual_endpoint(111, kCases));
}
TEST_CASE("edge list round trip") { expect(properties::edge_list_round_trip(112, kCases)); }
TEST_CASE("parallel kernels match the serial reference") { expect(properties::parallel_matches_serial(113, kCases)); }
