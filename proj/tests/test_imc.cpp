#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "itr/constructor.hpp"
#include "itr/dot.hpp"
#include "itr/errors.hpp"
#include "itr/imc.hpp"
#include "itr/serialize.hpp"
#include "naive_oracle.hpp"

using namespace itr;
using testing_support::make;

namespace {

// Agreement-maximizing pair between the components of the two smallest labels,
// scanned over the naive reference's IT list.
int naive_max_agreement(const naive::Rg& rg) {
    std::vector<int> labels;
    for (int c : rg.component)
        if (std::find(labels.begin(), labels.end(), c) == labels.end()) labels.push_back(c);
    std::sort(labels.begin(), labels.end());
    int best = -1;
    for (std::size_t i = 0; i < rg.its.size(); ++i)
        for (std::size_t j = 0; j < rg.its.size(); ++j) {
            if (rg.component[i] != labels[0] || rg.component[j] != labels[1]) continue;
            int same = 0;
            for (std::size_t b = 0; b < rg.its[i].size(); ++b) same += rg.its[i][b] == rg.its[j][b];
            best = std::max(best, same);
        }
    return best;
}

// Some adjacent s in S - T, t in T - S has a neighbour outside the other's block.
bool matched_pair_escapes(const naive::Raw& raw, const std::vector<int>& s, const std::vector<int>& t) {
    std::vector<int> block_of(raw.n);
    for (std::size_t i = 0; i < raw.blocks.size(); ++i)
        for (int v : raw.blocks[i]) block_of[v] = static_cast<int>(i);
    auto inside = [&](int u, int b) {
        for (int w = 0; w < raw.n; ++w)
            if (raw.adjacent(u, w) && block_of[w] != b) return false;
        return true;
    };
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (s[i] == t[i] || s[j] == t[j] || !raw.adjacent(s[i], t[j])) continue;
            if (!inside(s[i], block_of[t[j]]) || !inside(t[j], block_of[s[i]])) return true;
        }
    return false;
}

const char* kEscapingInstance =
    "{\"blocks\":[[0,3,4,5],[1,2,6,7]],\"edges\":[[0,2],[0,3],[1,2],[1,3],[4,6],[4,7],[5,6],[5,7]],\"n\":8}";

}  // namespace

TEST_CASE("extremal_pair on single-block K11") {
    auto pair = extremal_pair(make(2, {{0, 1}}, {{0, 1}}));
    CHECK(pair.s.choice == std::vector<Vertex>{0});
    CHECK(pair.t.choice == std::vector<Vertex>{1});
    CHECK(pair.shared_blocks == 0);
}

TEST_CASE("extremal_pair on the two-copy instance") {
    auto pair = extremal_pair(testing_support::two_copies_k11());
    CHECK(pair.s.choice == std::vector<Vertex>{0, 3});
    CHECK(pair.t.choice == std::vector<Vertex>{2, 1});
    CHECK(pair.shared_blocks == 0);
    CHECK(agreement(pair.s, pair.t) == 0);
}

TEST_CASE("extremal_pair requires a disconnected RG") {
    CHECK_THROWS_AS(extremal_pair(make(2, {}, {{0, 1}})), PreconditionFailed);
    CHECK_THROWS_AS(extremal_pair(make(2, {{0, 1}}, {{0}, {1}})), PreconditionFailed);
}

TEST_CASE("extremal_pair maximizes agreement on generated instances") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto inst = sample_bad_instance(1 + seed % 2, 1 + seed % 3 / 2, 2 - static_cast<int>(seed % 3 / 2), seed).instance;
        auto pair = extremal_pair(inst);
        auto ref = naive::rg(naive::from(inst));
        CHECK(pair.shared_blocks == naive_max_agreement(ref));
        CHECK(pair.rg.component(*pair.rg.find(pair.s)) == pair.c0);
        CHECK(pair.rg.component(*pair.rg.find(pair.t)) == pair.c1);
        CHECK(pair.c0 != pair.c1);
    }
}

TEST_CASE("grow on single-block K11 never loops") {
    auto inst = make(2, {{0, 1}}, {{0, 1}});
    auto grown = grow(inst, extremal_pair(inst));
    CHECK(grown.steps.empty());
    CHECK(grown.tuple.r == VertexSet{0, 1});
    auto report = check_imc(inst, extremal_pair(inst).rg, grown.tuple);
    CHECK(report.is_imc);
    auto bg = block_graph(inst, std::vector<Vertex>{0, 1});
    CHECK(bg.edges == std::vector<std::pair<BlockIndex, BlockIndex>>{{0, 0}});
    CHECK(report.difference_cycles);
}

TEST_CASE("grow on the two-copy instance keeps R equal to the difference") {
    auto inst = testing_support::two_copies_k11();
    auto pair = extremal_pair(inst);
    auto grown = grow(inst, pair);
    CHECK(grown.steps.empty());
    CHECK(grown.tuple.r == VertexSet{0, 1, 2, 3});
    auto report = check_imc(inst, pair.rg, grown.tuple);
    CHECK(report.is_imc);
    CHECK(report.all_claims());
    auto bg = block_graph(inst, std::vector<Vertex>{0, 1, 2, 3});
    CHECK(bg.edges == std::vector<std::pair<BlockIndex, BlockIndex>>{{0, 1}, {0, 1}});
    CHECK(stars(inst, grown.tuple).empty());
    auto forest = block_forest(inst, grown.tuple);
    CHECK(forest.roots == std::vector<BlockIndex>{0, 1});
    CHECK(forest.parent == std::vector<BlockIndex>{-1, -1});
}

TEST_CASE("check_feasible flags a missing difference vertex") {
    auto inst = testing_support::two_copies_k11();
    auto pair = extremal_pair(inst);
    auto tuple = grow(inst, pair).tuple;
    tuple.r = VertexSet{0, 1, 2};
    auto report = check_feasible(inst, pair.rg, tuple);
    CHECK_FALSE(report.covers_difference);
    CHECK(report.extremal_transversals);
}

TEST_CASE("check_feasible flags a block graph with a cycle") {
    auto inst = testing_support::single_block_kdd(2);
    auto pair = extremal_pair(inst);
    FeasibleTuple tuple{VertexSet{0, 1, 2}, pair.s, pair.t, pair.c0, pair.c1};
    REQUIRE(pair.s.choice == std::vector<Vertex>{0});
    REQUIRE(pair.t.choice == std::vector<Vertex>{2});
    auto report = check_feasible(inst, pair.rg, tuple);
    CHECK_FALSE(report.block_forest);
    CHECK_FALSE(report.all());
}

TEST_CASE("check_feasible flags a pair that is not extremal") {
    auto inst = sample_bad_instance(1, 1, 2, 4).instance;
    auto pair = extremal_pair(inst);
    auto tuple = grow(inst, pair).tuple;
    if (pair.shared_blocks > 0) {
        for (int i = 0; i < pair.rg.size(); ++i)
            if (pair.rg.component(i) == pair.c1 && agreement(pair.s, pair.rg.it(i)) < pair.shared_blocks) {
                tuple.t = pair.rg.it(i);
                break;
            }
        CHECK_FALSE(check_feasible(inst, pair.rg, tuple).extremal_transversals);
    }
}

TEST_CASE("grown tuples are feasible IMCs on generated bad instances") {
    std::mt19937_64 rng(19);
    for (int round = 0; round < 40; ++round) {
        const int delta = 1 + round % 2;
        auto inst = sample_bad_instance(delta, 1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 2) + 1, rng()).instance;
        if (inst.block_count() > 3) continue;
        auto pair = extremal_pair(inst);
        auto grown = grow(inst, pair, {}, true);
        auto report = check_imc(inst, pair.rg, grown.tuple);
        CHECK(report.feasible.all());
        CHECK(report.is_imc);
        CHECK(report.index_set_full);
        CHECK(report.induced_matching);
        CHECK(report.difference_has_no_isolated);
        CHECK(report.touched_components_meet_r);
        CHECK(report.outside_agreement_avoids_r);
        CHECK(report.sub_instance_disconnected);
        CHECK(report.difference_cycles);
        CHECK(report.unique_r_neighbor);
        CHECK(report.center_neighbors_descend);
    }
}

TEST_CASE("the literal matched-pair containment fails on a bad instance for every extremal pair") {
    auto inst = parse_instance(kEscapingInstance);
    auto raw = naive::from(inst);
    REQUIRE(naive::minimally_rgd(raw));
    REQUIRE(satisfies_general_conditions(inst));

    auto ref = naive::rg(raw);
    auto pairs = extremal_pairs(build_rg(inst));
    REQUIRE_FALSE(pairs.empty());
    for (const auto& p : pairs) CHECK(matched_pair_escapes(raw, p.s.choice, p.t.choice));

    auto cert = certify(inst);
    CHECK(cert.pair.shared_blocks == naive_max_agreement(ref));
    CHECK(cert.report.feasible.all());
    CHECK(cert.report.is_imc);
    CHECK_FALSE(cert.report.matched_pairs_cross);
    CHECK_FALSE(cert.report.all_claims());
    for (std::size_t b = 0; b < raw.blocks.size(); ++b) CHECK_FALSE(naive::witnesses(raw, b).empty());
}

TEST_CASE("satisfies_general_conditions") {
    CHECK(satisfies_general_conditions(testing_support::two_copies_k11()));
    CHECK(satisfies_general_conditions(make(3, {{0, 1}, {0, 2}}, {{0, 1, 2}})));
    CHECK_FALSE(satisfies_general_conditions(make(4, {{0, 1}, {2, 3}}, {{0, 1}, {2, 3}})));
    CHECK_FALSE(satisfies_general_conditions(make(3, {{0, 1}, {1, 2}}, {{0}, {1, 2}})));
}

TEST_CASE("witnesses on the smallest bad instances") {
    for (int d = 1; d <= 2; ++d) {
        auto inst = testing_support::single_block_kdd(d);
        auto search = block_side_witnesses(inst);
        REQUIRE(search.complete());
        CHECK(inst.graph().degree(search.witnesses[0]->vertex) == d);
    }
    auto two = testing_support::two_copies_k11();
    auto search = block_side_witnesses(two);
    REQUIRE(search.complete());
    const auto raw = naive::from(two);
    for (int b = 0; b < 2; ++b) {
        const auto& w = *search.witnesses[b];
        CHECK(w.block == b);
        auto scan = naive::witnesses(raw, b);
        CHECK(std::count(scan.begin(), scan.end(), w.vertex) == 1);
    }
    CHECK(search.witnesses[0]->side == VertexSet{0});
}

TEST_CASE("every witness found lies in the brute-force scan") {
    std::mt19937_64 rng(23);
    int blocks = 0, found = 0;
    for (int round = 0; round < 40; ++round) {
        const int delta = 1 + round % 2;
        auto inst = sample_bad_instance(delta, 1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 2) + 1, rng()).instance;
        if (inst.block_count() > 3) continue;
        const auto raw = naive::from(inst);
        auto search = block_side_witnesses(inst);
        REQUIRE(search.witnesses.size() == raw.blocks.size());
        for (std::size_t b = 0; b < raw.blocks.size(); ++b) {
            auto scan = naive::witnesses(raw, b);
            CHECK_FALSE(scan.empty());
            ++blocks;
            if (!search.witnesses[b]) {
                CHECK_FALSE(search.failures[b].empty());
                continue;
            }
            ++found;
            const auto& w = *search.witnesses[b];
            CHECK(std::count(scan.begin(), scan.end(), w.vertex) == 1);
            VertexSet nb(inst.graph().neighbors(w.vertex).begin(), inst.graph().neighbors(w.vertex).end());
            CHECK(make_set(nb) == w.side);
        }
    }
    CHECK(found > 0);
    MESSAGE("forest-walk witnesses found for " << found << " of " << blocks << " blocks");
}

TEST_CASE("block_side_witnesses requires the general conditions") {
    CHECK_THROWS_AS(block_side_witnesses(make(4, {{0, 1}, {2, 3}}, {{0, 1}, {2, 3}})), PreconditionFailed);
}

TEST_CASE("certificate JSON and forest DOT") {
    auto inst = testing_support::two_copies_k11();
    auto cert = certify(inst);
    auto doc = to_json(cert, inst);
    CHECK(doc.contains("tuple"));
    CHECK(doc.contains("imc"));
    CHECK(doc.contains("witnesses"));
    CHECK(doc.at("witnesses_complete") == true);
    auto dot = block_forest_to_dot(block_forest(inst, cert.grown.tuple));
    CHECK(dot.find("U0 [shape=doublecircle]") != std::string::npos);
    CHECK(dot.find("U1 [shape=doublecircle]") != std::string::npos);
}
