#include "itr/imc.hpp"

#include <algorithm>

#include "itr/errors.hpp"
#include "itr/recognizer.hpp"
#include "itr/union_find.hpp"

namespace itr {

namespace {

// Membership flags for R, S, T over all vertices.
struct Membership {
    std::vector<char> r, s, t;

    Membership(const Instance& instance, const FeasibleTuple& tuple)
        : r(instance.vertex_count(), 0), s(instance.vertex_count(), 0), t(instance.vertex_count(), 0) {
        for (Vertex v : tuple.r) r[v] = 1;
        for (Vertex v : tuple.s.choice) s[v] = 1;
        for (Vertex v : tuple.t.choice) t[v] = 1;
    }

    bool center(Vertex v) const { return r[v] && !s[v] && !t[v]; }  // R - (S ∪ T)
    bool leaf(Vertex v) const { return r[v] && s[v] && t[v]; }       // R ∩ S ∩ T
    bool difference(Vertex v) const { return s[v] != t[v]; }         // S △ T
};

std::vector<Vertex> r_neighbors(const Graph& g, const Membership& mem, Vertex v) {
    std::vector<Vertex> out;
    for (Vertex w : g.neighbors(v))
        if (mem.r[w]) out.push_back(w);
    return out;
}

VertexSet symmetric_difference(const Transversal& s, const Transversal& t) {
    VertexSet out;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] != t[i]) {
            out.push_back(s[i]);
            out.push_back(t[i]);
        }
    return make_set(std::move(out));
}

bool neighborhood_inside(const Instance& instance, Vertex u, BlockIndex block) {
    auto nbrs = instance.graph().neighbors(u);
    return !nbrs.empty() &&
           std::all_of(nbrs.begin(), nbrs.end(), [&](Vertex x) { return instance.block_of(x) == block; });
}

int max_agreement(const ReconfigGraph& rg, int c0, int c1) {
    int best = -1;
    const auto first = rg.members(c0);
    const auto second = rg.members(c1);
    for (int a : first)
        for (int b : second) best = std::max(best, agreement(rg.it(a), rg.it(b)));
    return best;
}

}  // namespace

int agreement(const Transversal& s, const Transversal& t) {
    int count = 0;
    for (int i = 0; i < s.size() && i < t.size(); ++i)
        if (s[i] == t[i]) ++count;
    return count;
}

ExtremalPair extremal_pair(const Instance& instance, const OracleOptions& options) {
    ExtremalPair out;
    out.rg = build_rg(instance, options);
    if (rg_status(out.rg) != RgStatus::Disconnected)
        throw PreconditionFailed(std::string("extremal pair needs a disconnected RG, got ") + to_string(rg_status(out.rg)));
    out.c0 = out.rg.component_labels()[0];
    out.c1 = out.rg.component_labels()[1];
    int best = -1;
    for (int a : out.rg.members(out.c0))
        for (int b : out.rg.members(out.c1)) {
            int shared = agreement(out.rg.it(a), out.rg.it(b));
            if (shared > best) {
                best = shared;
                out.s = out.rg.it(a);
                out.t = out.rg.it(b);
            }
        }
    out.shared_blocks = best;
    return out;
}

FeasibilityReport check_feasible(const Instance& instance, const ReconfigGraph& rg, const FeasibleTuple& tuple) {
    FeasibilityReport rep;
    const auto& g = instance.graph();
    const int m = instance.block_count();
    for (Vertex v : tuple.r)
        if (!g.contains(v)) return rep;
    if (tuple.s.size() != m || tuple.t.size() != m) return rep;
    for (BlockIndex i = 0; i < m; ++i)
        if (!g.contains(tuple.s[i]) || !g.contains(tuple.t[i]) || instance.block_of(tuple.s[i]) != i ||
            instance.block_of(tuple.t[i]) != i)
            return rep;
    const Membership mem(instance, tuple);

    // (i)
    {
        auto si = rg.find(tuple.s);
        auto ti = rg.find(tuple.t);
        rep.extremal_transversals = si && ti && tuple.c0 != tuple.c1 && rg.component(*si) == tuple.c0 &&
                                    rg.component(*ti) == tuple.c1 &&
                                    agreement(tuple.s, tuple.t) == max_agreement(rg, tuple.c0, tuple.c1);
    }

    // (ii)
    {
        bool covers = true;
        for (Vertex v : symmetric_difference(tuple.s, tuple.t)) covers = covers && mem.r[v];
        std::vector<Vertex> rs, rt;
        for (Vertex v : tuple.r) {
            if (mem.s[v]) rs.push_back(v);
            if (mem.t[v]) rt.push_back(v);
        }
        const auto ir = index_set(instance, tuple.r);
        rep.covers_difference = covers && index_set(instance, rs) == ir && index_set(instance, rt) == ir;
    }

    // (iii): G[R - (S △ T)] is |R - (S ∪ T)| non-trivial stars centred in R - (S ∪ T)
    // with leaves in S ∩ T.
    {
        bool ok = true;
        for (Vertex v : tuple.r) {
            if (mem.difference(v)) continue;
            int centers = 0, leaves = 0;
            for (Vertex w : g.neighbors(v)) {
                if (mem.center(w)) ++centers;
                if (mem.leaf(w)) ++leaves;
            }
            if (mem.center(v)) ok = ok && centers == 0 && leaves >= 1;
            else if (mem.leaf(v)) ok = ok && centers == 1 && leaves == 0;
            else ok = false;
        }
        rep.star_forest = ok;
    }

    // (iv)
    {
        std::vector<Vertex> x;
        for (Vertex v : tuple.r)
            if (!(mem.s[v] && !mem.t[v])) x.push_back(v);
        const auto bg = block_graph(instance, x);
        const auto roots = index_set(instance, symmetric_difference(tuple.s, tuple.t));
        bool ok = bg.nodes == index_set(instance, tuple.r) && bg.is_forest();
        if (ok) {
            UnionFind uf(m);
            for (auto [a, b] : bg.edges) uf.unite(a, b);
            std::vector<int> roots_in_tree(m, 0);
            for (BlockIndex r : roots) ++roots_in_tree[uf.find(r)];
            for (BlockIndex node : bg.nodes) ok = ok && roots_in_tree[uf.find(node)] == 1;
        }
        rep.block_forest = ok;
    }
    return rep;
}

FeasibilityReport check_feasible(const Instance& instance, const FeasibleTuple& tuple, const OracleOptions& options) {
    return check_feasible(instance, build_rg(instance, options), tuple);
}

namespace {

GrowResult grow_from(const Instance& instance, const ReconfigGraph& rg, const FeasibleTuple& start,
                     const OracleOptions& options, bool check_each_step) {
    const auto& g = instance.graph();
    const int m = instance.block_count();
    GrowResult out;
    auto& tuple = out.tuple;
    tuple = FeasibleTuple{symmetric_difference(start.s, start.t), start.s, start.t, start.c0, start.c1};

    std::vector<BlockIndex> agree, differ;
    for (BlockIndex i = 0; i < m; ++i) (start.s[i] == start.t[i] ? agree : differ).push_back(i);
    // ITs of the sub-instance on the agreement blocks, in original vertex ids.
    std::vector<std::vector<Vertex>> candidates;
    {
        auto sub = delete_blocks(instance, differ);
        for (const auto& q : enumerate_its(sub.instance, options)) {
            std::vector<Vertex> mapped;
            for (Vertex v : q.choice) mapped.push_back(sub.vertex_origin[v]);
            candidates.push_back(std::move(mapped));
        }
    }

    auto assert_feasible = [&](const char* when) {
        if (!check_each_step) return;
        if (!check_feasible(instance, rg, tuple).all())
            throw InternalError(std::string("feasibility lost ") + when);
    };
    assert_feasible("at the start");

    for (int guard = 0; guard <= g.vertex_count(); ++guard) {
        const Membership mem(instance, tuple);
        const auto ir = index_set(instance, tuple.r);
        std::vector<char> in_ir(m, 0);
        for (BlockIndex i : ir) in_ir[i] = 1;

        Vertex x = -1;
        for (Vertex v = 0; v < g.vertex_count() && x < 0; ++v) {
            if (!in_ir[instance.block_of(v)]) continue;
            auto nb = g.neighbors(v);
            if (std::none_of(nb.begin(), nb.end(), [&](Vertex w) { return mem.r[w] != 0; })) x = v;
        }
        if (x < 0) return out;

        int best = -1;
        int best_conflicts = 0;
        Transversal best_s, best_t;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const auto& q = candidates[k];
            bool ok = true;
            for (std::size_t j = 0; j < agree.size() && ok; ++j)
                if (in_ir[agree[j]] && q[j] != tuple.s[agree[j]]) ok = false;
            for (std::size_t j = 0; j < q.size() && ok; ++j) {
                if (mem.r[q[j]]) continue;
                for (Vertex w : g.neighbors(q[j]))
                    if (mem.r[w]) ok = false;
            }
            if (!ok) continue;
            Transversal s2 = tuple.s, t2 = tuple.t;
            for (std::size_t j = 0; j < agree.size(); ++j) s2.choice[agree[j]] = t2.choice[agree[j]] = q[j];
            auto si = rg.find(s2);
            auto ti = rg.find(t2);
            if (!si || !ti || rg.component(*si) != tuple.c0 || rg.component(*ti) != tuple.c1) continue;
            int conflicts = 0;
            for (Vertex v : q)
                if (g.adjacent(x, v)) ++conflicts;
            if (best < 0 || conflicts < best_conflicts) {
                best = static_cast<int>(k);
                best_conflicts = conflicts;
                best_s = std::move(s2);
                best_t = std::move(t2);
            }
        }
        if (best < 0) throw InternalError("no admissible Q for vertex " + std::to_string(x));
        if (best_conflicts == 0)
            throw InternalError("vertex " + std::to_string(x) + " has no neighbour in the chosen Q");

        GrowStep step;
        step.x = x;
        step.added.push_back(x);
        const auto& q = candidates[best];
        for (std::size_t j = 0; j < agree.size(); ++j) {
            step.q.emplace_back(agree[j], q[j]);
            if (g.adjacent(x, q[j])) step.added.push_back(q[j]);
        }
        step.added = make_set(std::move(step.added));
        VertexSet r = tuple.r;
        r.insert(r.end(), step.added.begin(), step.added.end());
        tuple.r = make_set(std::move(r));
        tuple.s = std::move(best_s);
        tuple.t = std::move(best_t);
        out.steps.push_back(std::move(step));
        assert_feasible("after an iteration");
    }
    throw InternalError("growth did not terminate");
}

}  // namespace

GrowResult grow(const Instance& instance, const ExtremalPair& pair, const OracleOptions& options,
                bool check_each_step) {
    return grow_from(instance, pair.rg, FeasibleTuple{{}, pair.s, pair.t, pair.c0, pair.c1}, options,
                     check_each_step);
}

std::vector<FeasibleTuple> extremal_pairs(const ReconfigGraph& rg) {
    std::vector<FeasibleTuple> out;
    const auto& labels = rg.component_labels();
    for (int c0 : labels)
        for (int c1 : labels) {
            if (c0 == c1) continue;
            const int best = max_agreement(rg, c0, c1);
            for (int a : rg.members(c0))
                for (int b : rg.members(c1))
                    if (agreement(rg.it(a), rg.it(b)) == best) out.push_back({{}, rg.it(a), rg.it(b), c0, c1});
        }
    return out;
}

std::vector<Star> stars(const Instance& instance, const FeasibleTuple& tuple) {
    const Membership mem(instance, tuple);
    std::vector<Star> out;
    for (Vertex w : tuple.r) {
        if (!mem.center(w)) continue;
        Star star{w, {}};
        for (Vertex v : instance.graph().neighbors(w))
            if (mem.leaf(v)) star.leaves.push_back(v);
        out.push_back(std::move(star));
    }
    return out;
}

BlockForest block_forest(const Instance& instance, const FeasibleTuple& tuple) {
    const Membership mem(instance, tuple);
    BlockForest out;
    std::vector<Vertex> x;
    for (Vertex v : tuple.r)
        if (!(mem.s[v] && !mem.t[v])) x.push_back(v);
    out.graph = block_graph(instance, x);
    out.roots = index_set(instance, symmetric_difference(tuple.s, tuple.t));
    out.parent.assign(instance.block_count(), -1);
    for (BlockIndex b : out.graph.nodes) {
        if (std::binary_search(out.roots.begin(), out.roots.end(), b)) continue;
        Vertex v = tuple.s[b];
        if (!mem.leaf(v)) continue;
        std::vector<Vertex> centers;
        for (Vertex w : instance.graph().neighbors(v))
            if (mem.center(w)) centers.push_back(w);
        if (centers.size() == 1) out.parent[b] = instance.block_of(centers.front());
    }
    return out;
}

ImcReport check_imc(const Instance& instance, const ReconfigGraph& rg, const FeasibleTuple& tuple,
                    const OracleOptions& options) {
    ImcReport rep;
    rep.feasible = check_feasible(instance, rg, tuple);
    const auto& g = instance.graph();
    const int m = instance.block_count();
    for (Vertex v : tuple.r)
        if (!g.contains(v)) return rep;
    if (tuple.s.size() != m || tuple.t.size() != m) return rep;
    const Membership mem(instance, tuple);
    const auto ir = index_set(instance, tuple.r);

    rep.index_set_full = static_cast<int>(ir.size()) == m;
    rep.covers_transversals = true;
    for (BlockIndex i = 0; i < m; ++i)
        rep.covers_transversals = rep.covers_transversals && mem.r[tuple.s[i]] && mem.r[tuple.t[i]];
    rep.induced_matching = std::all_of(tuple.r.begin(), tuple.r.end(),
                                       [&](Vertex v) { return r_neighbors(g, mem, v).size() <= 1; });
    rep.is_imc = rep.feasible.all() && rep.index_set_full && rep.covers_transversals && rep.induced_matching;

    const auto diff = symmetric_difference(tuple.s, tuple.t);
    rep.difference_has_no_isolated = std::all_of(diff.begin(), diff.end(), [&](Vertex v) {
        auto nb = g.neighbors(v);
        return std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return mem.difference(w); });
    });

    const auto comps = components(g);
    std::vector<int> comp_of(g.vertex_count());
    std::vector<char> comp_meets_r(comps.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (Vertex v : comps[c]) {
            comp_of[v] = static_cast<int>(c);
            if (mem.r[v]) comp_meets_r[c] = 1;
        }
    rep.touched_components_meet_r = true;
    for (BlockIndex i : ir)
        for (Vertex v : instance.block(i)) rep.touched_components_meet_r = rep.touched_components_meet_r && comp_meets_r[comp_of[v]];
    rep.outside_agreement_avoids_r = true;
    for (BlockIndex i = 0; i < m; ++i) {
        Vertex v = tuple.s[i];
        if (v == tuple.t[i] && !mem.r[v]) rep.outside_agreement_avoids_r = rep.outside_agreement_avoids_r && !comp_meets_r[comp_of[v]];
    }
    {
        std::vector<BlockIndex> outside;
        for (BlockIndex i = 0; i < m; ++i)
            if (!std::binary_search(ir.begin(), ir.end(), i)) outside.push_back(i);
        rep.sub_instance_disconnected =
            rg_status(delete_blocks(instance, outside).instance, options) == RgStatus::Disconnected;
    }

    rep.difference_cycles = block_graph(instance, diff).is_two_regular();
    rep.unique_r_neighbor = true;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        rep.unique_r_neighbor = rep.unique_r_neighbor && r_neighbors(g, mem, v).size() == 1;

    rep.matched_pairs_cross = rep.matched_pairs_cross_between_blocks = true;
    for (BlockIndex k = 0; k < m; ++k) {
        const Vertex s = tuple.s[k];
        if (s == tuple.t[k]) continue;
        for (Vertex t : g.neighbors(s)) {
            if (!(mem.t[t] && !mem.s[t])) continue;
            const BlockIndex l = instance.block_of(t);
            bool ok = true;
            for (Vertex y : g.neighbors(s)) ok = ok && instance.block_of(y) == l;
            for (Vertex y : g.neighbors(t)) ok = ok && instance.block_of(y) == k;
            rep.matched_pairs_cross = rep.matched_pairs_cross && ok;
            if (k != l) rep.matched_pairs_cross_between_blocks = rep.matched_pairs_cross_between_blocks && ok;
        }
    }

    // w-descendants: the block of w's partner in S ∩ T, and every block below it,
    // where a block's children are the blocks of the partners of its centers.
    rep.center_neighbors_descend = true;
    auto partner_block = [&](Vertex w) -> BlockIndex {
        std::vector<Vertex> leaves;
        for (Vertex v : r_neighbors(g, mem, w))
            if (mem.leaf(v)) leaves.push_back(v);
        return leaves.size() == 1 && r_neighbors(g, mem, w).size() == 1 ? instance.block_of(leaves.front()) : -1;
    };
    for (Vertex w : tuple.r) {
        if (!mem.center(w)) continue;
        const BlockIndex first = partner_block(w);
        if (first < 0) {
            rep.center_neighbors_descend = false;
            break;
        }
        std::vector<char> below(m, 0);
        std::vector<BlockIndex> stack{first};
        below[first] = 1;
        bool ok = true;
        while (!stack.empty()) {
            BlockIndex b = stack.back();
            stack.pop_back();
            for (Vertex w2 : instance.block(b)) {
                if (!mem.center(w2)) continue;
                BlockIndex c = partner_block(w2);
                if (c < 0) {
                    ok = false;
                    continue;
                }
                if (!below[c]) {
                    below[c] = 1;
                    stack.push_back(c);
                }
            }
        }
        for (Vertex y : g.neighbors(w)) ok = ok && below[instance.block_of(y)];
        rep.center_neighbors_descend = rep.center_neighbors_descend && ok;
    }
    return rep;
}

bool satisfies_general_conditions(const Instance& instance, const OracleOptions& options) {
    const auto sides = component_sides(instance);
    if (static_cast<int>(sides.size()) != instance.block_count()) return false;
    if (!std::all_of(sides.begin(), sides.end(), [](const auto& s) { return s.has_value(); })) return false;
    return is_minimally_rgd(instance, options);
}

namespace {

Witness make_witness(const Instance& instance, BlockIndex block, Vertex u, int surgeries) {
    Witness w;
    w.block = block;
    w.vertex = u;
    const auto comps = components(instance.graph());
    for (std::size_t c = 0; c < comps.size(); ++c)
        if (set_contains(comps[c], u)) w.component = static_cast<int>(c);
    auto nb = instance.graph().neighbors(u);
    w.side = VertexSet(nb.begin(), nb.end());
    w.surgeries = surgeries;
    return w;
}

Witness find_witness(const Instance& instance, const ReconfigGraph& rg, FeasibleTuple tuple, BlockIndex target,
                     const OracleOptions& options) {
    const auto& g = instance.graph();
    const int m = instance.block_count();
    auto unique_r_neighbor = [&](const Membership& mem, Vertex v) {
        auto rn = r_neighbors(g, mem, v);
        if (rn.size() != 1)
            throw InternalError("vertex " + std::to_string(v) + " has " + std::to_string(rn.size()) + " neighbours in R");
        return rn.front();
    };

    for (int surgeries = 0; surgeries <= g.vertex_count(); ++surgeries) {
        const Membership mem(instance, tuple);
        if (tuple.s[target] != tuple.t[target]) {
            // Root block: the matched partner of S's representative.
            Vertex t = unique_r_neighbor(mem, tuple.s[target]);
            if (!neighborhood_inside(instance, t, target))
                throw InternalError("matched partner of block " + std::to_string(target) + " leaves the block");
            return make_witness(instance, target, t, surgeries);
        }
        const Vertex v = tuple.s[target];
        const Vertex w = unique_r_neighbor(mem, v);
        if (!mem.center(w)) throw InternalError("partner of an agreement vertex is not a star center");
        if (neighborhood_inside(instance, w, target)) return make_witness(instance, target, w, surgeries);

        Vertex x = -1;
        for (Vertex y : g.neighbors(w))
            if (instance.block_of(y) != target) {
                x = y;
                break;
            }
        const BlockIndex j = instance.block_of(w);
        const BlockIndex k = instance.block_of(x);

        // Forest path j = V_0, V_1 = target, ..., V_N = k, found by climbing from k.
        std::vector<BlockIndex> path{k};
        while (path.back() != j) {
            if (static_cast<int>(path.size()) > m) throw InternalError("block forest path does not reach the center's block");
            const BlockIndex b = path.back();
            if (tuple.s[b] != tuple.t[b]) throw InternalError("neighbour of a center lies outside its descendants");
            const Vertex center = unique_r_neighbor(mem, tuple.s[b]);
            path.push_back(instance.block_of(center));
        }
        std::reverse(path.begin(), path.end());
        const int n_steps = static_cast<int>(path.size()) - 1;
        if (n_steps < 2 || path[1] != target) throw InternalError("unexpected block forest path");

        FeasibleTuple next = tuple;
        next.s.choice[k] = next.t.choice[k] = x;
        for (int i = 1; i < n_steps; ++i) {
            const Vertex below = tuple.s[path[i + 1]];
            const Vertex center = unique_r_neighbor(mem, below);
            if (instance.block_of(center) != path[i]) throw InternalError("center off the forest path");
            next.s.choice[path[i]] = next.t.choice[path[i]] = center;
        }
        VertexSet r = tuple.r;
        std::erase(r, v);
        r.push_back(x);
        next.r = make_set(std::move(r));
        if (!check_imc(instance, rg, next, options).is_imc) throw InternalError("rewritten tuple is not an IMC");
        tuple = std::move(next);
    }
    throw InternalError("no witness found for block " + std::to_string(target));
}

}  // namespace

bool WitnessSearch::complete() const {
    return std::all_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); });
}

WitnessSearch block_side_witnesses(const Instance& instance, const OracleOptions& options) {
    if (!satisfies_general_conditions(instance, options))
        throw PreconditionFailed("instance must be minimally RGD with |U| complete bipartite components");
    const auto rg = build_rg(instance, options);
    const auto pairs = extremal_pairs(rg);
    std::vector<std::optional<FeasibleTuple>> grown(pairs.size());
    std::vector<std::string> grow_errors(pairs.size());
    std::vector<char> tried(pairs.size(), 0);
    auto imc_for = [&](std::size_t k) -> const std::optional<FeasibleTuple>& {
        if (!tried[k]) {
            tried[k] = 1;
            try {
                auto result = grow_from(instance, rg, pairs[k], options, true);
                if (check_imc(instance, rg, result.tuple, options).is_imc) grown[k] = std::move(result.tuple);
                else grow_errors[k] = "grown tuple is not an IMC";
            } catch (const InternalError& e) {
                grow_errors[k] = e.what();
            }
        }
        return grown[k];
    };

    WitnessSearch out;
    for (BlockIndex i = 0; i < instance.block_count(); ++i) {
        std::optional<Witness> found;
        std::string reason = "no extremal pair";
        for (std::size_t k = 0; k < pairs.size() && !found; ++k) {
            const auto& tuple = imc_for(k);
            if (!tuple) {
                reason = grow_errors[k];
                continue;
            }
            try {
                found = find_witness(instance, rg, *tuple, i, options);
                found->attempt = static_cast<int>(k);
            } catch (const InternalError& e) {
                reason = e.what();
            }
        }
        out.failures.push_back(found ? std::string() : reason);
        out.witnesses.push_back(std::move(found));
    }
    return out;
}

Certificate certify(const Instance& instance, const OracleOptions& options) {
    Certificate c;
    c.pair = extremal_pair(instance, options);
    c.grown = grow(instance, c.pair, options);
    c.report = check_imc(instance, c.pair.rg, c.grown.tuple, options);
    if (satisfies_general_conditions(instance, options)) {
        c.witnesses = block_side_witnesses(instance, options);
    } else {
        c.witness_note = "instance is not minimally RGD with |U| complete bipartite components; no witnesses";
    }
    return c;
}

nlohmann::json to_json(const Certificate& c, const Instance& instance) {
    using nlohmann::json;
    const auto& tuple = c.grown.tuple;
    json steps = json::array();
    for (const auto& s : c.grown.steps) {
        json q = json::array();
        for (auto [b, v] : s.q) q.push_back({b, v});
        steps.push_back({{"x", s.x}, {"q", std::move(q)}, {"added", s.added}});
    }
    json star_list = json::array();
    for (const auto& s : stars(instance, tuple)) star_list.push_back({{"center", s.center}, {"leaves", s.leaves}});
    const auto forest = block_forest(instance, tuple);
    json forest_edges = json::array();
    for (auto [a, b] : forest.graph.edges) forest_edges.push_back({a, b});
    const auto& r = c.report;
    json out = {
        {"pair",
         {{"s", c.pair.s.choice}, {"t", c.pair.t.choice}, {"c0", c.pair.c0}, {"c1", c.pair.c1},
          {"shared_blocks", c.pair.shared_blocks}}},
        {"steps", std::move(steps)},
        {"tuple", {{"r", tuple.r}, {"s", tuple.s.choice}, {"t", tuple.t.choice}, {"c0", tuple.c0}, {"c1", tuple.c1}}},
        {"stars", std::move(star_list)},
        {"forest", {{"nodes", forest.graph.nodes}, {"edges", std::move(forest_edges)}, {"roots", forest.roots},
                    {"parent", forest.parent}}},
        {"feasible",
         {{"extremal_transversals", r.feasible.extremal_transversals},
          {"covers_difference", r.feasible.covers_difference},
          {"star_forest", r.feasible.star_forest},
          {"block_forest", r.feasible.block_forest}}},
        {"imc",
         {{"is_imc", r.is_imc},
          {"index_set_full", r.index_set_full},
          {"covers_transversals", r.covers_transversals},
          {"induced_matching", r.induced_matching},
          {"difference_has_no_isolated", r.difference_has_no_isolated},
          {"touched_components_meet_r", r.touched_components_meet_r},
          {"outside_agreement_avoids_r", r.outside_agreement_avoids_r},
          {"sub_instance_disconnected", r.sub_instance_disconnected},
          {"difference_cycles", r.difference_cycles},
          {"unique_r_neighbor", r.unique_r_neighbor},
          {"matched_pairs_cross", r.matched_pairs_cross},
          {"matched_pairs_cross_between_blocks", r.matched_pairs_cross_between_blocks},
          {"center_neighbors_descend", r.center_neighbors_descend}}},
    };
    if (c.witnesses) {
        json ws = json::array();
        for (std::size_t i = 0; i < c.witnesses->witnesses.size(); ++i) {
            const auto& w = c.witnesses->witnesses[i];
            if (w)
                ws.push_back({{"block", w->block}, {"vertex", w->vertex}, {"component", w->component},
                              {"side", w->side}, {"surgeries", w->surgeries}, {"attempt", w->attempt}});
            else
                ws.push_back({{"block", i}, {"vertex", nullptr}, {"reason", c.witnesses->failures[i]}});
        }
        out["witnesses"] = std::move(ws);
        out["witnesses_complete"] = c.witnesses->complete();
    } else {
        out["witnesses"] = nullptr;
        out["witness_note"] = c.witness_note;
    }
    return out;
}

}  // namespace itr
