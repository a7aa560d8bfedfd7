#include "itr/oracle.hpp"

#include <algorithm>
#include <limits>

#include "itr/errors.hpp"
#include "itr/union_find.hpp"

namespace itr {

std::uint64_t transversal_space_size(const Instance& instance) {
    std::uint64_t product = 1;
    for (const auto& b : instance.blocks()) {
        const auto size = static_cast<std::uint64_t>(b.size());
        if (size != 0 && product > std::numeric_limits<std::uint64_t>::max() / size)
            return std::numeric_limits<std::uint64_t>::max();
        product *= size;
    }
    return product;
}

void require_transversal(const Instance& instance, const Transversal& t) {
    if (t.size() != instance.block_count())
        throw InvalidArgument("transversal has " + std::to_string(t.size()) + " entries for " +
                              std::to_string(instance.block_count()) + " blocks");
    for (BlockIndex i = 0; i < t.size(); ++i) {
        Vertex v = t[i];
        if (!instance.graph().contains(v) || instance.block_of(v) != i)
            throw InvalidArgument("transversal entry " + std::to_string(v) + " is not in block " + std::to_string(i));
    }
}

bool is_independent(const Instance& instance, const Transversal& t) {
    require_transversal(instance, t);
    const auto& g = instance.graph();
    for (int i = 0; i < t.size(); ++i)
        for (int j = i + 1; j < t.size(); ++j)
            if (g.adjacent(t[i], t[j])) return false;
    return true;
}

namespace {

void check_cap(const Instance& instance, const OracleOptions& options) {
    const auto required = transversal_space_size(instance);
    if (required > options.cap) throw EnumerationCapExceeded(required, options.cap);
}

// Backtracks over blocks in index order; `blocked[v]` counts chosen neighbours of v.
class ItEnumerator {
public:
    explicit ItEnumerator(const Instance& instance)
        : instance_(instance), blocked_(instance.vertex_count(), 0), current_(instance.block_count()) {}

    std::vector<Transversal> run() {
        extend(0);
        return std::move(out_);
    }

private:
    void extend(BlockIndex i) {
        if (i == instance_.block_count()) {
            out_.push_back(Transversal{current_});
            return;
        }
        const auto& g = instance_.graph();
        for (Vertex v : instance_.block(i)) {
            if (blocked_[v] != 0) continue;
            current_[i] = v;
            for (Vertex w : g.neighbors(v)) ++blocked_[w];
            extend(i + 1);
            for (Vertex w : g.neighbors(v)) --blocked_[w];
        }
    }

    const Instance& instance_;
    std::vector<int> blocked_;
    std::vector<Vertex> current_;
    std::vector<Transversal> out_;
};

}  // namespace

std::vector<Transversal> enumerate_its(const Instance& instance, const OracleOptions& options) {
    check_cap(instance, options);
    return ItEnumerator(instance).run();
}

ReconfigGraph::ReconfigGraph(std::vector<Transversal> its, std::vector<std::vector<int>> adjacency)
    : its_(std::move(its)), adjacency_(std::move(adjacency)) {
    UnionFind uf(size());
    for (int a = 0; a < size(); ++a)
        for (int b : adjacency_[a]) {
            uf.unite(a, b);
            if (a < b) ++edge_count_;
        }
    component_ = uf.min_labels();
    for (int a = 0; a < size(); ++a)
        if (component_[a] == a) labels_.push_back(a);
}

std::vector<int> ReconfigGraph::members(int label) const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a)
        if (component_[a] == label) out.push_back(a);
    return out;
}

std::optional<int> ReconfigGraph::find(const Transversal& t) const {
    auto it = std::lower_bound(its_.begin(), its_.end(), t);
    if (it == its_.end() || *it != t) return std::nullopt;
    return static_cast<int>(it - its_.begin());
}

ReconfigGraph build_rg(const Instance& instance, const OracleOptions& options) {
    auto its = enumerate_its(instance, options);
    const auto& g = instance.graph();
    std::vector<std::vector<int>> adjacency(its.size());
    std::vector<int> blocked(instance.vertex_count(), 0);
    // Neighbours in RG differ in one block, so scanning single replacements
    // v > current choice finds every edge exactly once.
    for (std::size_t a = 0; a < its.size(); ++a) {
        const auto& s = its[a];
        for (Vertex u : s.choice)
            for (Vertex w : g.neighbors(u)) ++blocked[w];
        for (BlockIndex i = 0; i < instance.block_count(); ++i) {
            for (Vertex v : instance.block(i)) {
                if (v <= s[i] || blocked[v] != 0) continue;
                Transversal t = s;
                t.choice[i] = v;
                auto pos = std::lower_bound(its.begin(), its.end(), t);
                auto b = static_cast<int>(pos - its.begin());
                adjacency[a].push_back(b);
                adjacency[b].push_back(static_cast<int>(a));
            }
        }
        for (Vertex u : s.choice)
            for (Vertex w : g.neighbors(u)) --blocked[w];
    }
    for (auto& list : adjacency) std::sort(list.begin(), list.end());
    return ReconfigGraph(std::move(its), std::move(adjacency));
}

const char* to_string(RgStatus status) {
    switch (status) {
        case RgStatus::Empty: return "EMPTY";
        case RgStatus::Connected: return "CONNECTED";
        case RgStatus::Disconnected: return "DISCONNECTED";
    }
    return "?";
}

RgStatus rg_status(const ReconfigGraph& rg) {
    if (rg.size() == 0) return RgStatus::Empty;
    return rg.component_count() == 1 ? RgStatus::Connected : RgStatus::Disconnected;
}

RgStatus rg_status(const Instance& instance, const OracleOptions& options) {
    return rg_status(build_rg(instance, options));
}

RgStatus status_without_block(const Instance& instance, BlockIndex removed, const OracleOptions& options) {
    const BlockIndex j[] = {removed};
    return rg_status(delete_blocks(instance, j).instance, options);
}

bool is_minimally_rgd(const Instance& instance, const OracleOptions& options) {
    if (rg_status(instance, options) != RgStatus::Disconnected) return false;
    for (BlockIndex i = 0; i < instance.block_count(); ++i)
        if (status_without_block(instance, i, options) != RgStatus::Connected) return false;
    return true;
}

bool is_minimally_nit(const Instance& instance, const OracleOptions& options) {
    if (rg_status(instance, options) != RgStatus::Empty) return false;
    for (BlockIndex i = 0; i < instance.block_count(); ++i)
        if (status_without_block(instance, i, options) != RgStatus::Connected) return false;
    return true;
}

bool same_component(const ReconfigGraph& rg, int s, int t) {
    if (s < 0 || s >= rg.size() || t < 0 || t >= rg.size())
        throw InvalidArgument("IT index out of range");
    return rg.component(s) == rg.component(t);
}

}  // namespace itr
