#include <catch2/catch_amalgamated.hpp>

#include "property_suites.hpp"

TEST_CASE("diameter posets match brute force up to 12 points") {
    REQUIRE_NOTHROW(testutil::suite_diameter_brute_force(101));
}

TEST_CASE("beat-point removal preserves homology on 200 random posets") {
    REQUIRE_NOTHROW(testutil::suite_core_homology_invariance(202));
}

TEST_CASE("exact homotopy agrees with the brute-force oracle on 100 pairs") {
    REQUIRE_NOTHROW(testutil::suite_homotopic_oracle(303));
}

TEST_CASE("induced homology maps are functorial and homotopy-invariant") {
    REQUIRE_NOTHROW(testutil::suite_induced_map_properties(404));
}

TEST_CASE("order complex dimension equals height on 200 random posets") {
    REQUIRE_NOTHROW(testutil::suite_complex_dimension(505));
}

TEST_CASE("random sequences verify against their cores") {
    testutil::VerifyTally tally = testutil::suite_verify_random_sequences(606);
    REQUIRE(tally.sequences == 50);
    REQUIRE(tally.failures == 0);
    REQUIRE(tally.equality_passes >= tally.sequences);  // one per bond, all pass
    REQUIRE(tally.inconclusive_sequences <= 5);
}
