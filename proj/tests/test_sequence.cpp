#include <catch2/catch_amalgamated.hpp>

#include "finshape/sequence.hpp"

using namespace finshape;

namespace {

PosetPtr chain2() { return make_poset({"A", "B"}, {{"A", "B"}}); }

PosetPtr circle_model() {
    return make_poset({"a", "b", "c", "d"},
                      {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

}  // namespace

TEST_CASE("sequence validation") {
    InverseSequence S;
    REQUIRE_THROWS_AS(S.validate(), input_error);
    S.stages = {chain2(), chain2()};
    REQUIRE_THROWS_AS(S.validate(), input_error);  // missing bond
    S.bonds = {identity_map(S.stages[1])};
    REQUIRE_NOTHROW(S.validate());
}

TEST_CASE("barycentric tower of the 2-chain") {
    InverseSequence S = barycentric_tower(chain2(), 3);
    REQUIRE(S.stages.size() == 3);
    REQUIRE(S.stages[0]->size() == 2);
    REQUIRE(S.stages[1]->size() == 3);
    REQUIRE(S.stages[2]->size() == 5);

    // The bond sends a chain to its maximum: {A} -> A, {B} -> B, {A<B} -> B.
    const MonotoneMap& h = S.bonds[0];
    auto& X1 = *S.stages[0];
    auto& X2 = *S.stages[1];
    REQUIRE(X1.id(h.assignment[X2.index_of("A")]) == "A");
    REQUIRE(X1.id(h.assignment[X2.index_of("B")]) == "B");
    REQUIRE(X1.id(h.assignment[X2.index_of("A<B")]) == "B");
}

TEST_CASE("sequence core of the barycentric tower is a point tower") {
    for (int depth : {1, 2, 3}) {
        InverseSequence S = barycentric_tower(chain2(), depth);
        SequenceCoreResult R = sequence_core(S);
        for (const auto& C : R.core_sequence.stages) REQUIRE(C->size() == 1);
        VerificationReport rep = verify_core_equivalence(S, R);
        REQUIRE(rep.all_passed());
    }
}

TEST_CASE("core ladder checks on a mixed sequence") {
    // Stage 1 a chain (collapses), stage 2 the minimal circle (stays).
    InverseSequence S;
    S.stages = {chain2(), circle_model()};
    S.bonds = {constant_map(circle_model(), chain2(), "B")};
    SequenceCoreResult R = sequence_core(S);
    REQUIRE(R.core_sequence.stages[0]->size() == 1);
    REQUIRE(R.core_sequence.stages[1]->size() == 4);
    VerificationReport rep = verify_core_equivalence(S, R);
    REQUIRE(rep.all_passed());
    for (const auto& c : rep.checks)
        if (c.diagram == "triangle-equality") REQUIRE(c.fence_length == -1);
}

TEST_CASE("restriction to lower sets") {
    InverseSequence S;
    S.stages = {circle_model(), circle_model()};
    S.bonds = {identity_map(circle_model())};

    InverseSequence R = restrict_sequence(S, {{"a", "b"}, {"a", "b"}});
    REQUIRE(R.stages[0]->size() == 2);
    REQUIRE(R.stages[1]->size() == 2);

    // {a, c} misses b < c: not a lower set.
    REQUIRE_THROWS_AS(restrict_sequence(S, {{"a", "c"}, {"a", "c"}}), input_error);
    // Bond image escapes the coarser selection.
    REQUIRE_THROWS_AS(restrict_sequence(S, {{"a"}, {"a", "b"}}), construction_error);
}

TEST_CASE("sequence height") {
    InverseSequence S = barycentric_tower(chain2(), 2);
    SequenceHeight h = sequence_height(S);
    REQUIRE(h.max_height == 1);
    REQUIRE(h.per_stage == (std::vector<int>{1, 1}));
}

TEST_CASE("tower stage cap") {
    REQUIRE_THROWS_AS(barycentric_tower(circle_model(), 4, 10), capacity_error);
}
