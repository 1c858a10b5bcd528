#include <catch2/catch_amalgamated.hpp>

#include "finshape/simplicial.hpp"

using namespace finshape;

namespace {

PosetPtr chain(int n) {
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> rels;
    for (int i = 0; i < n; ++i) ids.push_back("c" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) rels.emplace_back(ids[i], ids[i + 1]);
    return make_poset(std::move(ids), rels);
}

PosetPtr circle_model() {
    return make_poset({"a", "b", "c", "d"},
                      {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

}  // namespace

TEST_CASE("order complex of a chain is a full simplex") {
    SimplicialComplex K = order_complex(*chain(3));
    // Non-empty chains of a 3-chain: 2^3 - 1 = 7.
    REQUIRE(K.simplices.size() == 7);
    REQUIRE(K.dimension() == 2);
    validate_face_closed(K);
}

TEST_CASE("order complex of the circle model is a 4-cycle") {
    SimplicialComplex K = order_complex(*circle_model());
    REQUIRE(K.simplices_of_dim(0).size() == 4);
    REQUIRE(K.simplices_of_dim(1).size() == 4);
    REQUIRE(K.dimension() == 1);
}

TEST_CASE("face closure is validated") {
    SimplicialComplex K;
    K.vertices = {"a", "b"};
    K.simplices = {{0}, {1}, {0, 1}};
    REQUIRE_NOTHROW(validate_face_closed(K));
    K.simplices = {{0}, {0, 1}};  // missing {1}
    REQUIRE_THROWS_AS(validate_face_closed(K), input_error);
    K.simplices = {{0}};  // vertex b unused
    REQUIRE_THROWS_AS(validate_face_closed(K), input_error);
}

TEST_CASE("face poset of a segment") {
    SimplicialComplex K;
    K.vertices = {"a", "b"};
    K.simplices = {{0}, {1}, {0, 1}};
    auto fp = face_poset_with_members(K);
    REQUIRE(fp.poset->size() == 3);
    REQUIRE(fp.poset->contains("a<b"));
    REQUIRE(fp.poset->lt(fp.poset->index_of("a"), fp.poset->index_of("a<b")));
    REQUIRE(fp.poset->lt(fp.poset->index_of("b"), fp.poset->index_of("a<b")));
    REQUIRE(!fp.poset->comparable(fp.poset->index_of("a"), fp.poset->index_of("b")));
}

TEST_CASE("barycentric subdivision of the 2-chain has 3 elements") {
    auto sd = barycentric_subdivision(*chain(2));
    REQUIRE(sd->size() == 3);
    REQUIRE(sd->height() == 1);
    // Second subdivision: chains of the 3-element wedge, 5 in total.
    auto sd2 = barycentric_subdivision(*sd);
    REQUIRE(sd2->size() == 5);
}

TEST_CASE("subdivision preserves the height") {
    for (auto X : {chain(3), circle_model()})
        REQUIRE(barycentric_subdivision(*X)->height() == X->height());
}
