#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "itr/instance.hpp"

namespace testing_support {

inline itr::Instance make(int n, std::vector<itr::Edge> edges, std::vector<itr::VertexSet> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    return itr::Instance(itr::Graph(n, edges), std::move(blocks));
}

// a1=0, b1=1, a2=2, b2=3; U1 = {a1, a2}, U2 = {b1, b2}.
inline itr::Instance two_copies_k11() { return make(4, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}); }

inline itr::Instance single_block_kdd(int d) {
    std::vector<itr::Edge> edges;
    for (int a = 0; a < d; ++a)
        for (int b = d; b < 2 * d; ++b) edges.emplace_back(a, b);
    itr::VertexSet all(2 * d);
    for (int v = 0; v < 2 * d; ++v) all[v] = v;
    return make(2 * d, edges, {all});
}

// Random graph on n vertices with edge probability p, split into m nonempty blocks.
inline itr::Instance random_instance(std::mt19937_64& rng, int n, int m, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<itr::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<itr::VertexSet> blocks(m);
    for (int i = 0; i < m; ++i) blocks[i].push_back(order[i]);
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int i = m; i < n; ++i) blocks[pick(rng)].push_back(order[i]);
    return make(n, edges, blocks);
}

}  // namespace testing_support
