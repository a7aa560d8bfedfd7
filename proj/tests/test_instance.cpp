#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "helpers.hpp"
#include "itr/errors.hpp"
#include "itr/instance.hpp"

using namespace itr;
using testing_support::make;

TEST_CASE("validate accepts the minimal legal instance") {
    Graph g(2, std::vector<Edge>{{0, 1}});
    std::vector<VertexSet> blocks{{0, 1}};
    CHECK(validate(g, blocks).ok());
}

TEST_CASE("validate reports overlapping blocks") {
    Graph g(2, std::vector<Edge>{{0, 1}});
    std::vector<VertexSet> blocks{{0}, {0, 1}};
    auto report = validate(g, blocks);
    CHECK_FALSE(report.ok());
    CHECK(report.has(Violation::Kind::BlocksNotDisjoint));
}

TEST_CASE("validate reports blocks that miss a vertex") {
    Graph g(2);
    std::vector<VertexSet> blocks{{0}};
    auto report = validate(g, blocks);
    CHECK(report.has(Violation::Kind::UnionNotVertexSet));
    CHECK_THROWS_AS(Instance(g, blocks), InvalidArgument);
}

TEST_CASE("validate reports empty blocks and out-of-range ids") {
    Graph g(1);
    std::vector<VertexSet> empty{{0}, {}};
    CHECK(validate(g, empty).has(Violation::Kind::EmptyBlock));
    std::vector<VertexSet> out{{0, 3}};
    CHECK(validate(g, out).has(Violation::Kind::VertexOutOfRange));
}

TEST_CASE("graph rejects self-loops and collapses duplicate edges") {
    CHECK_THROWS_AS(Graph(2, std::vector<Edge>{{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(2, std::vector<Edge>{{0, 2}}), InvalidArgument);
    Graph g(3, std::vector<Edge>{{0, 1}, {1, 0}, {2, 1}});
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(1, 0));
    CHECK(g.max_degree() == 2);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("index_set") {
    auto k11 = make(2, {{0, 1}}, {{0}, {1}});
    CHECK(index_set(k11, std::vector<Vertex>{}).empty());
    CHECK(index_set(k11, std::vector<Vertex>{0, 1}) == std::vector<BlockIndex>{0, 1});
    CHECK(index_set(k11, std::vector<Vertex>{0}) == std::vector<BlockIndex>{0});
    CHECK_THROWS_AS(index_set(k11, std::vector<Vertex>{5}), InvalidArgument);
}

TEST_CASE("block_graph of the empty set is empty") {
    auto inst = testing_support::two_copies_k11();
    auto bg = block_graph(inst, std::vector<Vertex>{});
    CHECK(bg.nodes.empty());
    CHECK(bg.edges.empty());
}

TEST_CASE("block_graph of two disjoint edges across two blocks is a 2-cycle") {
    auto inst = testing_support::two_copies_k11();
    auto bg = block_graph(inst, std::vector<Vertex>{0, 1, 2, 3});
    CHECK(bg.nodes == std::vector<BlockIndex>{0, 1});
    REQUIRE(bg.edges.size() == 2);
    CHECK(bg.edges[0] == std::pair<BlockIndex, BlockIndex>{0, 1});
    CHECK(bg.edges[1] == std::pair<BlockIndex, BlockIndex>{0, 1});
    CHECK(bg.is_two_regular());
    CHECK_FALSE(bg.is_forest());
}

TEST_CASE("block_graph of a single-block edge is one loop") {
    auto inst = make(2, {{0, 1}}, {{0, 1}});
    auto bg = block_graph(inst, std::vector<Vertex>{0, 1});
    CHECK(bg.nodes == std::vector<BlockIndex>{0});
    REQUIRE(bg.edges.size() == 1);
    CHECK(bg.edges[0] == std::pair<BlockIndex, BlockIndex>{0, 0});
    CHECK(bg.degree(0) == 2);
    CHECK(bg.is_two_regular());
    CHECK_FALSE(bg.is_forest());
}

TEST_CASE("block_graph nodes equal the index set on random subsets") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 300; ++round) {
        auto inst = testing_support::random_instance(rng, 8, 4, 0.3);
        std::vector<Vertex> x;
        for (int v = 0; v < 8; ++v)
            if (rng() % 2) x.push_back(v);
        auto bg = block_graph(inst, x);
        CHECK(bg.nodes == index_set(inst, x));
        std::size_t induced = 0;
        for (auto [u, v] : inst.graph().edges())
            if (std::count(x.begin(), x.end(), u) && std::count(x.begin(), x.end(), v)) ++induced;
        CHECK(bg.edges.size() == induced);
    }
}

TEST_CASE("components") {
    CHECK(components(Graph(3)) == std::vector<VertexSet>{{0}, {1}, {2}});
    auto k22 = testing_support::single_block_kdd(2);
    CHECK(components(k22.graph()) == std::vector<VertexSet>{{0, 1, 2, 3}});
    auto two = testing_support::two_copies_k11();
    CHECK(components(two.graph()) == std::vector<VertexSet>{{0, 1}, {2, 3}});
}

TEST_CASE("components form an edge-closed partition on random graphs") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 300; ++round) {
        auto inst = testing_support::random_instance(rng, 9, 3, 0.2);
        auto comps = components(inst.graph());
        std::vector<int> label(9, -1);
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (Vertex v : comps[c]) {
                CHECK(label[v] == -1);
                label[v] = static_cast<int>(c);
            }
        for (int v = 0; v < 9; ++v) CHECK(label[v] >= 0);
        for (auto [u, v] : inst.graph().edges()) CHECK(label[u] == label[v]);
        for (std::size_t c = 1; c < comps.size(); ++c) CHECK(comps[c - 1].front() < comps[c].front());
    }
}

TEST_CASE("complete_bipartite_parts") {
    Graph edge(2, std::vector<Edge>{{0, 1}});
    auto parts = complete_bipartite_parts(edge, std::vector<Vertex>{0, 1});
    REQUIRE(parts);
    CHECK(parts->a == VertexSet{0});
    CHECK(parts->b == VertexSet{1});

    Graph triangle(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(complete_bipartite_parts(triangle, std::vector<Vertex>{0, 1, 2}));

    Graph path(3, std::vector<Edge>{{0, 1}, {1, 2}});
    parts = complete_bipartite_parts(path, std::vector<Vertex>{0, 1, 2});
    REQUIRE(parts);
    CHECK(parts->a == VertexSet{0, 2});
    CHECK(parts->b == VertexSet{1});

    Graph c4(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    parts = complete_bipartite_parts(c4, std::vector<Vertex>{0, 1, 2, 3});
    REQUIRE(parts);
    CHECK(parts->a == VertexSet{0, 2});

    Graph p4(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
    CHECK_FALSE(complete_bipartite_parts(p4, std::vector<Vertex>{0, 1, 2, 3}));
    CHECK_FALSE(complete_bipartite_parts(Graph(1), std::vector<Vertex>{0}));
}

TEST_CASE("complete_bipartite_parts rejects sets that are not components") {
    Graph path(3, std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(complete_bipartite_parts(path, std::vector<Vertex>{0, 1}), InvalidArgument);
    Graph two(4, std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK_THROWS_AS(complete_bipartite_parts(two, std::vector<Vertex>{0, 1, 2, 3}), InvalidArgument);
}

TEST_CASE("complete bipartite part sizes sum to the vertex count") {
    Graph g(7, std::vector<Edge>{{0, 1}, {0, 2}, {3, 4}, {3, 5}, {6, 4}, {6, 5}});
    int total = 0;
    for (const auto& c : components(g)) {
        auto parts = complete_bipartite_parts(g, c);
        REQUIRE(parts);
        total += static_cast<int>(parts->a.size() + parts->b.size());
    }
    CHECK(total == 7);
}

TEST_CASE("delete_blocks") {
    auto two = testing_support::two_copies_k11();
    auto none = delete_blocks(two, std::vector<BlockIndex>{});
    CHECK(none.instance == two);
    CHECK(none.vertex_origin == std::vector<Vertex>{0, 1, 2, 3});

    auto all = delete_blocks(two, std::vector<BlockIndex>{0, 1});
    CHECK(all.instance.vertex_count() == 0);
    CHECK(all.instance.block_count() == 0);

    auto k11 = make(2, {{0, 1}}, {{0}, {1}});
    auto one = delete_blocks(k11, std::vector<BlockIndex>{1});
    CHECK(one.instance.vertex_count() == 1);
    CHECK(one.instance.graph().edge_count() == 0);
    CHECK(one.instance.blocks() == std::vector<VertexSet>{{0}});
    CHECK(one.vertex_origin == std::vector<Vertex>{0});
    CHECK(one.block_origin == std::vector<BlockIndex>{0});
}

TEST_CASE("delete_blocks composes") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 200; ++round) {
        auto inst = testing_support::random_instance(rng, 9, 5, 0.3);
        std::vector<BlockIndex> j1, j2_parent;
        for (int i = 0; i < 5; ++i) {
            int r = static_cast<int>(rng() % 3);
            if (r == 0) j1.push_back(i);
            else if (r == 1) j2_parent.push_back(i);
        }
        auto first = delete_blocks(inst, j1);
        std::vector<BlockIndex> j2;
        for (std::size_t k = 0; k < first.block_origin.size(); ++k)
            if (std::count(j2_parent.begin(), j2_parent.end(), first.block_origin[k])) j2.push_back(static_cast<int>(k));
        auto second = delete_blocks(first.instance, j2);
        std::vector<BlockIndex> both = j1;
        both.insert(both.end(), j2_parent.begin(), j2_parent.end());
        std::sort(both.begin(), both.end());
        auto direct = delete_blocks(inst, both);
        CHECK(second.instance == direct.instance);
        for (std::size_t v = 0; v < second.vertex_origin.size(); ++v)
            CHECK(first.vertex_origin[second.vertex_origin[v]] == direct.vertex_origin[v]);
    }
}

TEST_CASE("permute relabels vertices and reorders blocks") {
    auto two = testing_support::two_copies_k11();
    auto p = permute(two, std::vector<Vertex>{3, 2, 1, 0}, std::vector<BlockIndex>{1, 0});
    CHECK(p.graph().adjacent(3, 2));
    CHECK(p.graph().adjacent(1, 0));
    CHECK(p.blocks() == std::vector<VertexSet>{{0, 2}, {1, 3}});
    CHECK_THROWS_AS(permute(two, std::vector<Vertex>{0, 0, 1, 2}, std::vector<BlockIndex>{0, 1}), InvalidArgument);
}

TEST_CASE("induces_kdd_copies") {
    auto two = testing_support::two_copies_k11();
    CHECK(induces_kdd_copies(two, std::vector<BlockIndex>{0, 1}, 1));
    CHECK_FALSE(induces_kdd_copies(two, std::vector<BlockIndex>{0}, 1));
    auto k22 = testing_support::single_block_kdd(2);
    CHECK(induces_kdd_copies(k22, std::vector<BlockIndex>{0}, 2));
    CHECK_FALSE(induces_kdd_copies(k22, std::vector<BlockIndex>{0}, 1));
}
