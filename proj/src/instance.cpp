#include "itr/instance.hpp"

#include <numeric>
#include <queue>

#include "itr/errors.hpp"
#include "itr/union_find.hpp"

namespace itr {

Graph::Graph(int vertex_count) : Graph(vertex_count, std::span<const Edge>{}) {}

Graph::Graph(int vertex_count, std::span<const Edge> edges)
    : n_(vertex_count), adj_(vertex_count), matrix_(static_cast<std::size_t>(vertex_count) * vertex_count, 0) {
    if (vertex_count < 0) throw InvalidArgument("negative vertex count");
    for (auto [u, v] : edges) {
        if (!contains(u) || !contains(v))
            throw InvalidArgument("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
        if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
        if (adjacent(u, v)) continue;
        matrix_[static_cast<std::size_t>(u) * n_ + v] = 1;
        matrix_[static_cast<std::size_t>(v) * n_ + u] = 1;
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        ++edge_count_;
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& list : adj_) best = std::max(best, static_cast<int>(list.size()));
    return best;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.message;
    }
    return out;
}

ValidationReport validate(const Graph& graph, std::span<const VertexSet> blocks) {
    ValidationReport report;
    const int n = graph.vertex_count();
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].empty())
            report.violations.push_back({Violation::Kind::EmptyBlock, "block " + std::to_string(i) + " is empty"});
        for (Vertex v : blocks[i]) {
            if (v < 0 || v >= n) {
                report.violations.push_back({Violation::Kind::VertexOutOfRange,
                                             "vertex " + std::to_string(v) + " in block " + std::to_string(i) +
                                                 " out of range"});
                continue;
            }
            if (owner[v] != -1) {
                report.violations.push_back({Violation::Kind::BlocksNotDisjoint,
                                             "blocks not disjoint: vertex " + std::to_string(v) + " in blocks " +
                                                 std::to_string(owner[v]) + " and " + std::to_string(i)});
                continue;
            }
            owner[v] = static_cast<int>(i);
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (owner[v] == -1) {
            report.violations.push_back({Violation::Kind::UnionNotVertexSet,
                                         "union of blocks != vertex set: vertex " + std::to_string(v) +
                                             " is in no block"});
        }
    }
    return report;
}

Instance::Instance(Graph graph, std::vector<VertexSet> blocks) : graph_(std::move(graph)) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    auto report = validate(graph_, blocks);
    if (!report.ok()) throw InvalidArgument("invalid instance: " + report.summary());
    blocks_ = std::move(blocks);
    block_of_.assign(graph_.vertex_count(), -1);
    for (BlockIndex i = 0; i < block_count(); ++i)
        for (Vertex v : blocks_[i]) block_of_[v] = i;
}

ValidationReport validate(const Instance& instance) { return validate(instance.graph(), instance.blocks()); }

namespace {

void require_vertex(const Instance& instance, Vertex v) {
    if (!instance.graph().contains(v)) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
}

}  // namespace

std::vector<BlockIndex> index_set(const Instance& instance, std::span<const Vertex> x) {
    std::vector<BlockIndex> out;
    for (Vertex v : x) {
        require_vertex(instance, v);
        out.push_back(instance.block_of(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int BlockGraph::degree(BlockIndex node) const {
    int d = 0;
    for (auto [a, b] : edges) {
        if (a == node) ++d;
        if (b == node) ++d;
    }
    return d;
}

bool BlockGraph::is_forest() const {
    if (nodes.empty()) return edges.empty();
    const int span = nodes.back() + 1;
    UnionFind uf(span);
    for (auto [a, b] : edges)
        if (!uf.unite(a, b)) return false;  // loop, parallel edge, or cycle
    return true;
}

bool BlockGraph::is_two_regular() const {
    return std::all_of(nodes.begin(), nodes.end(), [&](BlockIndex i) { return degree(i) == 2; });
}

BlockGraph block_graph(const Instance& instance, std::span<const Vertex> x) {
    BlockGraph out;
    out.nodes = index_set(instance, x);
    const auto& g = instance.graph();
    std::vector<char> in_x(g.vertex_count(), 0);
    for (Vertex v : x) in_x[v] = 1;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (!in_x[u]) continue;
        for (Vertex v : g.neighbors(u)) {
            if (v <= u || !in_x[v]) continue;
            BlockIndex a = instance.block_of(u);
            BlockIndex b = instance.block_of(v);
            out.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

std::vector<VertexSet> components(const Graph& graph) {
    const int n = graph.vertex_count();
    UnionFind uf(n);
    for (auto [u, v] : graph.edges()) uf.unite(u, v);
    auto label = uf.min_labels();
    std::vector<int> slot(n, -1);
    std::vector<VertexSet> out;
    for (Vertex v = 0; v < n; ++v) {
        int root = label[v];
        if (slot[root] == -1) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[root]].push_back(v);
    }
    return out;
}

std::optional<Bipartition> complete_bipartite_parts(const Graph& graph, std::span<const Vertex> component) {
    if (component.empty()) throw InvalidArgument("empty component");
    const int n = graph.vertex_count();
    std::vector<int> side(n, -2);  // -2: outside, -1: unvisited member
    for (Vertex v : component) {
        if (!graph.contains(v)) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
        side[v] = -1;
    }
    std::size_t edges_inside = 0;
    for (Vertex v : component)
        for (Vertex w : graph.neighbors(v)) {
            if (side[w] == -2) throw InvalidArgument("component is not closed under adjacency");
            ++edges_inside;
        }
    edges_inside /= 2;

    Vertex start = *std::min_element(component.begin(), component.end());
    std::queue<Vertex> queue;
    side[start] = 0;
    queue.push(start);
    std::size_t reached = 1;
    bool bipartite = true;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop();
        for (Vertex w : graph.neighbors(v)) {
            if (side[w] == -1) {
                side[w] = 1 - side[v];
                ++reached;
                queue.push(w);
            } else if (side[w] == side[v]) {
                bipartite = false;
            }
        }
    }
    if (reached != component.size()) throw InvalidArgument("component is not connected");
    if (!bipartite) return std::nullopt;

    Bipartition parts;
    for (Vertex v : component) (side[v] == 0 ? parts.a : parts.b).push_back(v);
    std::sort(parts.a.begin(), parts.a.end());
    std::sort(parts.b.begin(), parts.b.end());
    if (parts.b.empty() || edges_inside != parts.a.size() * parts.b.size()) return std::nullopt;
    return parts;
}

SubInstance delete_blocks(const Instance& instance, std::span<const BlockIndex> removed) {
    const int m = instance.block_count();
    std::vector<char> drop_block(m, 0);
    for (BlockIndex i : removed) {
        if (i < 0 || i >= m) throw InvalidArgument("block index " + std::to_string(i) + " out of range");
        drop_block[i] = 1;
    }
    const auto& g = instance.graph();
    SubInstance out;
    std::vector<Vertex> new_id(g.vertex_count(), -1);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (drop_block[instance.block_of(v)]) continue;
        new_id[v] = static_cast<Vertex>(out.vertex_origin.size());
        out.vertex_origin.push_back(v);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (new_id[u] >= 0 && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
    std::vector<VertexSet> blocks;
    for (BlockIndex i = 0; i < m; ++i) {
        if (drop_block[i]) continue;
        VertexSet b;
        for (Vertex v : instance.block(i)) b.push_back(new_id[v]);
        blocks.push_back(std::move(b));
        out.block_origin.push_back(i);
    }
    out.instance = Instance(Graph(static_cast<int>(out.vertex_origin.size()), edges), std::move(blocks));
    return out;
}

namespace {

bool is_permutation_map(std::span<const int> map) {
    std::vector<char> seen(map.size(), 0);
    for (int x : map) {
        if (x < 0 || static_cast<std::size_t>(x) >= map.size() || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

}  // namespace

Instance permute(const Instance& instance, std::span<const Vertex> new_id, std::span<const BlockIndex> new_position) {
    if (new_id.size() != static_cast<std::size_t>(instance.vertex_count()) || !is_permutation_map(new_id))
        throw InvalidArgument("vertex map is not a permutation");
    if (new_position.size() != static_cast<std::size_t>(instance.block_count()) || !is_permutation_map(new_position))
        throw InvalidArgument("block map is not a permutation");
    std::vector<Edge> edges;
    for (auto [u, v] : instance.graph().edges()) edges.emplace_back(new_id[u], new_id[v]);
    std::vector<VertexSet> blocks(instance.block_count());
    for (BlockIndex i = 0; i < instance.block_count(); ++i) {
        VertexSet b;
        for (Vertex v : instance.block(i)) b.push_back(new_id[v]);
        blocks[new_position[i]] = std::move(b);
    }
    return Instance(Graph(instance.vertex_count(), edges), std::move(blocks));
}

bool induces_kdd_copies(const Instance& instance, std::span<const BlockIndex> listed, int delta) {
    std::vector<Vertex> keep_blocks(listed.begin(), listed.end());
    std::vector<BlockIndex> others;
    for (BlockIndex i = 0; i < instance.block_count(); ++i)
        if (std::find(keep_blocks.begin(), keep_blocks.end(), i) == keep_blocks.end()) others.push_back(i);
    auto sub = delete_blocks(instance, others);
    const auto comps = components(sub.instance.graph());
    if (comps.size() != listed.size()) return false;
    for (const auto& c : comps) {
        auto parts = complete_bipartite_parts(sub.instance.graph(), c);
        if (!parts || static_cast<int>(parts->a.size()) != delta || static_cast<int>(parts->b.size()) != delta)
            return false;
    }
    return true;
}

}  // namespace itr
