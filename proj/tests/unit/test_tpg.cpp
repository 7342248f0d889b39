#include "doctest.h"
#include "fixtures.hpp"
#include "ktpg/instance_gen.hpp"
#include "ktpg/tpg.hpp"

using namespace ktpg;

TEST_CASE("disjoint paths produce no Type-2 edges") {
    const auto inst = fixtures::make_instance(4, 4,
                                              {{{0, 0}, {0, 1}, {0, 2}},
                                               {{3, 0}, {3, 1}, {3, 2}}});
    const Tpg tpg = build_tpg(inst.plan);
    CHECK(tpg.type2_count() == 0);
    CHECK(assert_acyclic(tpg));
}

TEST_CASE("the crossing instance has exactly one Type-2 edge") {
    const auto inst = fixtures::crossing_instance();
    const Tpg tpg = build_tpg(inst.plan);
    REQUIRE(tpg.type2_count() == 1);
    const Type2Edge& e = tpg.edge(0);
    CHECK(e.shared_location == Cell{1, 1});
    CHECK(e.from == TpgVertexRef{0, 2});  // agent 0's vertex after the shared cell
    CHECK(e.to == TpgVertexRef{1, 1});
    CHECK(tpg.incoming_type2({1, 1}).size() == 1);
    CHECK(tpg.outgoing_type2({0, 2}).size() == 1);
    CHECK(tpg.incoming_type2({0, 0}).empty());
}

TEST_CASE("the corridor instance orders the follower after the crosser") {
    const auto inst = fixtures::corridor_instance();
    const Tpg tpg = build_tpg(inst.plan);
    REQUIRE(tpg.type2_count() == 1);
    const Type2Edge& e = tpg.edge(0);
    // agent 0 may release the shared cell only by reaching its next vertex
    CHECK(e.from.agent == 0);
    CHECK(e.from.seq == 2);
    CHECK(e.to.agent == 1);
    CHECK(tpg.location(e.to) == Cell{1, 1});
}

TEST_CASE("waits collapse into strictly alternating chains") {
    const auto inst = fixtures::crossing_instance();
    const Tpg tpg = build_tpg(inst.plan);
    CHECK(tpg.chain_length(1) == 3);  // the wait step is gone
    for (int a = 0; a < tpg.agent_count(); ++a)
        for (int k = 1; k < tpg.chain_length(a); ++k)
            CHECK(tpg.chain(a)[k] != tpg.chain(a)[k - 1]);
}

TEST_CASE("build_tpg rejects colliding plans") {
    const auto inst = fixtures::make_instance(4, 4,
                                              {{{0, 0}, {1, 0}},
                                               {{2, 0}, {1, 0}}});
    CHECK_THROWS_AS(build_tpg(inst.plan), std::invalid_argument);
}

TEST_CASE("a hand-built Type-2 cycle is rejected by the acyclicity check") {
    // two agents passing each other in opposite orders at two cells
    std::vector<std::vector<Cell>> chains = {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}};
    std::vector<Type2Edge> edges = {{{0, 1}, {1, 1}, {0, 0}}, {{1, 1}, {0, 1}, {1, 0}}};
    const Tpg tpg(std::move(chains), std::move(edges));
    CHECK_FALSE(assert_acyclic(tpg));
}

TEST_CASE("unknown vertices are rejected") {
    const auto inst = fixtures::crossing_instance();
    const Tpg tpg = build_tpg(inst.plan);
    CHECK_THROWS_AS(tpg.incoming_type2({0, 99}), std::out_of_range);
    CHECK_THROWS_AS(tpg.vertex_id({7, 0}), std::out_of_range);
}

TEST_CASE("DOT dump labels vertices with agent, seq, and location") {
    const auto inst = fixtures::crossing_instance();
    const std::string dot = build_tpg(inst.plan).to_dot();
    CHECK(dot.find("a0:0@(0,1)") != std::string::npos);
    CHECK(dot.find("a1:1@(1,1)") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
}

TEST_CASE("random plans build acyclic TPGs with the handshake identity") {
    const GridMap map = fixtures::open_map(8, 8);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const GeneratedInstance inst = generate_instance(map, 6, seed);
        REQUIRE(inst.ok);
        const Tpg tpg = build_tpg(inst.plan);
        CHECK(assert_acyclic(tpg));
        std::size_t outgoing_total = 0;
        for (int a = 0; a < tpg.agent_count(); ++a)
            for (int k = 0; k < tpg.chain_length(a); ++k)
                outgoing_total += tpg.outgoing_type2({a, k}).size();
        CHECK(outgoing_total == static_cast<std::size_t>(tpg.type2_count()));
    }
}
