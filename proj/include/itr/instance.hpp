#pragma once

// Vertex-partitioned graphs (G, U) and the structural queries the rest of the
// library is built on.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace itr {

using Vertex = int;
using BlockIndex = int;
using Edge = std::pair<Vertex, Vertex>;

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

inline VertexSet make_set(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool set_contains(const VertexSet& s, Vertex v) {
    return std::binary_search(s.begin(), s.end(), v);
}

// Finite simple graph on vertices 0..vertex_count-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);
    // Duplicate edges (in either orientation) collapse; self-loops and
    // out-of-range endpoints throw InvalidArgument.
    Graph(int vertex_count, std::span<const Edge> edges);

    int vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }
    bool contains(Vertex v) const noexcept { return v >= 0 && v < n_; }
    bool adjacent(Vertex u, Vertex v) const noexcept {
        return matrix_[static_cast<std::size_t>(u) * n_ + v] != 0;
    }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;

    // Every edge once as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    int n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::uint8_t> matrix_;
};

struct Violation {
    enum class Kind { EmptyBlock, VertexOutOfRange, BlocksNotDisjoint, UnionNotVertexSet };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(Violation::Kind kind) const {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const Violation& v) { return v.kind == kind; });
    }
    std::string summary() const;
};

// Checks the partition invariants of (graph, blocks) without throwing.
ValidationReport validate(const Graph& graph, std::span<const VertexSet> blocks);

// An immutable vertex-partitioned graph. Blocks are ordered; a block's index is
// its identity. Each block is stored sorted.
class Instance {
public:
    Instance() = default;
    // Throws InvalidArgument carrying the validation summary if the blocks do
    // not partition the vertex set.
    Instance(Graph graph, std::vector<VertexSet> blocks);

    const Graph& graph() const noexcept { return graph_; }
    const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
    const VertexSet& block(BlockIndex i) const { return blocks_[i]; }
    int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
    int vertex_count() const noexcept { return graph_.vertex_count(); }
    BlockIndex block_of(Vertex v) const { return block_of_[v]; }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.graph_ == b.graph_ && a.blocks_ == b.blocks_;
    }

private:
    Graph graph_;
    std::vector<VertexSet> blocks_;
    std::vector<BlockIndex> block_of_;
};

// Always empty for a constructed Instance; provided for symmetry with the raw form.
ValidationReport validate(const Instance& instance);

// I(X): the sorted block indices meeting X.
std::vector<BlockIndex> index_set(const Instance& instance, std::span<const Vertex> x);

// Multigraph obtained from G[X] by contracting each U_i ∩ X to the node i.
struct BlockGraph {
    std::vector<BlockIndex> nodes;
    // One entry per induced edge, stored as (min, max); a loop is (i, i).
    std::vector<std::pair<BlockIndex, BlockIndex>> edges;

    // Loops contribute 2.
    int degree(BlockIndex node) const;
    bool is_forest() const;
    // Every node has degree exactly 2 (loops and parallel edges count).
    bool is_two_regular() const;
};

BlockGraph block_graph(const Instance& instance, std::span<const Vertex> x);

// Connected components, each sorted, ordered by smallest member.
std::vector<VertexSet> components(const Graph& graph);

struct Bipartition {
    VertexSet a;
    VertexSet b;
    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

// If G[component] is K_{A,B} with A, B nonempty, returns (A, B) with the
// smallest vertex in A. Throws InvalidArgument if `component` is not a
// connected vertex set closed under adjacency.
std::optional<Bipartition> complete_bipartite_parts(const Graph& graph, std::span<const Vertex> component);

struct SubInstance {
    Instance instance;
    std::vector<Vertex> vertex_origin;     // new id -> id in the parent instance
    std::vector<BlockIndex> block_origin;  // new block index -> parent block index
};

// Removes every vertex of the listed blocks. Surviving vertices and blocks keep
// their relative order and are renumbered densely.
SubInstance delete_blocks(const Instance& instance, std::span<const BlockIndex> removed);

// Renames vertex v to new_id[v] and moves block i to position new_position[i].
// Both maps must be permutations.
Instance permute(const Instance& instance, std::span<const Vertex> new_id,
                 std::span<const BlockIndex> new_position);

// True iff G[union of the listed blocks] is a disjoint union of exactly
// |listed| copies of K_{delta,delta}.
bool induces_kdd_copies(const Instance& instance, std::span<const BlockIndex> listed, int delta);

}  // namespace itr
