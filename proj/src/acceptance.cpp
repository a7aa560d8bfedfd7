#include "itr/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "itr/constructor.hpp"
#include "itr/errors.hpp"
#include "itr/imc.hpp"
#include "itr/recognizer.hpp"
#include "itr/serialize.hpp"

namespace itr::acceptance {

namespace {

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<VertexSet> random_blocks(Rng& rng, int n, int m) {
    std::vector<Vertex> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<VertexSet> blocks(m);
    for (int i = 0; i < n; ++i) blocks[i < m ? i : uniform(rng, 0, m - 1)].push_back(order[i]);
    for (auto& b : blocks) b = make_set(std::move(b));
    return blocks;
}

Instance random_instance(Rng& rng, int max_vertices, int max_blocks) {
    const int n = uniform(rng, 1, max_vertices);
    const int m = uniform(rng, 1, std::min(n, max_blocks));
    const double p = std::uniform_real_distribution<double>(0.15, 0.65)(rng);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng, p)) edges.emplace_back(u, v);
    return Instance(Graph(n, edges), random_blocks(rng, n, m));
}

Instance random_with_status(Rng& rng, int max_vertices, int max_blocks, RgStatus wanted) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        auto inst = random_instance(rng, max_vertices, max_blocks);
        if (rg_status(inst) == wanted) return inst;
    }
    throw InternalError(std::string("no random instance with status ") + to_string(wanted));
}

struct Elementary {
    ElementarySpec spec;
    Instance instance;
};

// Elementary instance with part sides of size at most max_side, passing the
// deletion-connectivity check.
Elementary random_elementary(Rng& rng, int max_side, int max_blocks, int max_vertices) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const int m = uniform(rng, 1, max_blocks);
        ElementarySpec spec;
        int total = 0;
        for (int i = 0; i < m; ++i) {
            PartSpec part;
            part.a_size = uniform(rng, 1, max_side);
            part.b_size = uniform(rng, 1, max_side);
            for (int j = 0; j < part.b_size; ++j) part.b_blocks.push_back(uniform(rng, 0, m - 1));
            total += part.a_size + part.b_size;
            spec.parts.push_back(std::move(part));
        }
        if (total > max_vertices) continue;
        try {
            auto inst = build_elementary(spec, true);
            return {std::move(spec), std::move(inst)};
        } catch (const VerificationFailed&) {
        }
    }
    throw InternalError("no random elementary instance");
}

Distribution random_distribution(Rng& rng, const Instance& g, BlockIndex donor, const Instance& h) {
    Distribution dist;
    for (Vertex v : g.block(donor)) dist.target[v] = uniform(rng, 0, h.block_count() - 1);
    return dist;
}

// Component structure computed directly from adjacency, independent of the
// library's component and bipartition helpers.
struct Shape {
    std::vector<std::pair<VertexSet, VertexSet>> parts;  // per component; both empty if not complete bipartite
    bool all_complete_bipartite = true;
};

Shape direct_shape(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(n, -1);
    Shape out;
    for (Vertex s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        VertexSet side[2];
        std::vector<Vertex> queue{s};
        color[s] = 0;
        bool bipartite = true;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            Vertex u = queue[i];
            side[color[u]].push_back(u);
            for (Vertex w = 0; w < n; ++w) {
                if (!g.adjacent(u, w)) continue;
                if (color[w] < 0) {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if (color[w] == color[u]) {
                    bipartite = false;
                }
            }
        }
        bool complete = bipartite && !side[1].empty();
        for (Vertex a : side[0])
            for (Vertex b : side[1]) complete = complete && g.adjacent(a, b);
        if (complete) {
            out.parts.emplace_back(make_set(side[0]), make_set(side[1]));
        } else {
            out.parts.emplace_back();
            out.all_complete_bipartite = false;
        }
    }
    return out;
}

bool direct_kdd_shape(const Instance& inst) {
    if (inst.block_count() == 0) return false;
    const auto shape = direct_shape(inst.graph());
    if (!shape.all_complete_bipartite || static_cast<int>(shape.parts.size()) != inst.block_count()) return false;
    const auto delta = shape.parts.front().first.size();
    for (const auto& [a, b] : shape.parts)
        if (a.size() != delta || b.size() != delta) return false;
    for (const auto& block : inst.blocks())
        if (block.size() != 2 * delta) return false;
    return true;
}

bool oracle_bad(const Instance& inst) { return direct_kdd_shape(inst) && is_minimally_rgd(inst); }

bool oracle_general(const Instance& inst) {
    const auto shape = direct_shape(inst.graph());
    return shape.all_complete_bipartite && static_cast<int>(shape.parts.size()) == inst.block_count() &&
           is_minimally_rgd(inst);
}

// Vertices u with nonempty N(u) inside the block.
VertexSet brute_witnesses(const Instance& inst, BlockIndex block) {
    VertexSet out;
    const auto& g = inst.graph();
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        bool inside = g.degree(u) > 0;
        for (Vertex w = 0; w < g.vertex_count() && inside; ++w)
            if (g.adjacent(u, w) && inst.block_of(w) != block) inside = false;
        if (inside) out.push_back(u);
    }
    return out;
}

Instance flip_edge(Rng& rng, const Instance& inst) {
    const int n = inst.vertex_count();
    Vertex u = uniform(rng, 0, n - 1), v = uniform(rng, 0, n - 2);
    if (v >= u) ++v;
    std::vector<Edge> edges;
    bool present = false;
    for (auto e : inst.graph().edges()) {
        if (e == Edge{std::min(u, v), std::max(u, v)}) present = true;
        else edges.push_back(e);
    }
    if (!present) edges.emplace_back(u, v);
    return Instance(Graph(n, edges), inst.blocks());
}

std::optional<Instance> move_vertex(Rng& rng, const Instance& inst) {
    if (inst.block_count() < 2) return std::nullopt;
    std::vector<Vertex> movable;
    for (Vertex v = 0; v < inst.vertex_count(); ++v)
        if (inst.block(inst.block_of(v)).size() >= 2) movable.push_back(v);
    if (movable.empty()) return std::nullopt;
    const Vertex v = movable[uniform(rng, 0, static_cast<int>(movable.size()) - 1)];
    const BlockIndex from = inst.block_of(v);
    BlockIndex to = uniform(rng, 0, inst.block_count() - 2);
    if (to >= from) ++to;
    auto blocks = inst.blocks();
    std::erase(blocks[from], v);
    blocks[to] = make_set([&] { auto b = blocks[to]; b.push_back(v); return b; }());
    auto edges = inst.graph().edges();
    return Instance(Graph(inst.vertex_count(), edges), std::move(blocks));
}

std::optional<Instance> swap_vertices(Rng& rng, const Instance& inst) {
    if (inst.block_count() < 2) return std::nullopt;
    const int n = inst.vertex_count();
    Vertex u = uniform(rng, 0, n - 1), v = 0;
    do v = uniform(rng, 0, n - 1);
    while (inst.block_of(v) == inst.block_of(u));
    auto blocks = inst.blocks();
    auto& bu = blocks[inst.block_of(u)];
    auto& bv = blocks[inst.block_of(v)];
    std::replace(bu.begin(), bu.end(), u, v);
    std::replace(bv.begin(), bv.end(), v, u);
    bu = make_set(bu);
    bv = make_set(bv);
    auto edges = inst.graph().edges();
    return Instance(Graph(n, edges), std::move(blocks));
}

// All balanced elementary bases over K_{Δ,Δ} parts with m blocks that pass
// verification.
std::vector<ElementarySpec> kdd_bases(int delta, int m) {
    std::vector<ElementarySpec> out;
    const int b_total = delta * m;
    std::vector<BlockIndex> assignment(b_total, 0);
    std::function<void(int, std::vector<int>&)> rec = [&](int pos, std::vector<int>& load) {
        if (pos == b_total) {
            ElementarySpec spec;
            for (int i = 0; i < m; ++i) {
                PartSpec part{delta, delta, {}};
                for (int j = 0; j < delta; ++j) part.b_blocks.push_back(assignment[i * delta + j]);
                spec.parts.push_back(std::move(part));
            }
            try {
                build_elementary(spec, true);
                out.push_back(std::move(spec));
            } catch (const VerificationFailed&) {
            }
            return;
        }
        const int lo = (pos % delta == 0) ? 0 : assignment[pos - 1];  // B vertices of a part in nondecreasing order
        for (int b = lo; b < m; ++b) {
            if (load[b] == delta) continue;
            ++load[b];
            assignment[pos] = b;
            rec(pos + 1, load);
            --load[b];
        }
    };
    std::vector<int> load(m, 0);
    rec(0, load);
    return out;
}

std::vector<VertexSet> subsets_of_size(const VertexSet& from, int k) {
    std::vector<VertexSet> out;
    const int n = static_cast<int>(from.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        VertexSet s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) s.push_back(from[i]);
        out.push_back(std::move(s));
    }
    return out;
}

struct Generated {
    int delta;
    Instance instance;
};

// Every generator output with Δ ≤ max_delta and at most max_components
// components: all verified bases and all balanced split sequences.
std::vector<Generated> exhaustive_bad_instances(int max_delta, int max_components) {
    std::vector<Generated> out;
    for (int delta = 1; delta <= max_delta; ++delta)
        for (int m = 1; m <= max_components; ++m)
            for (const auto& base : kdd_bases(delta, m)) {
                std::vector<SplitChoice> choices;
                std::function<void(const Instance&)> rec = [&](const Instance& current) {
                    out.push_back({delta, current});
                    if (current.block_count() >= max_components) return;
                    for (BlockIndex donor = 0; donor < current.block_count(); ++donor)
                        for (auto& to_a : subsets_of_size(current.block(donor), delta)) {
                            choices.push_back({donor, std::move(to_a)});
                            rec(generate_bad_instance(delta, base, choices));
                            choices.pop_back();
                        }
                };
                rec(build_elementary(base));
            }
    return out;
}

class Timer {
public:
    Timer() : start_(Clock::now()) {}
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
    Clock::time_point start_;
};

Result finish(Result r, const Timer& timer, bool ok) {
    r.seconds = timer.seconds();
    r.passed = ok && r.seconds < r.budget_seconds;
    if (ok && !r.passed) r.detail += "; over the time budget";
    return r;
}

Result simplest_bad_instance() {
    Result r{1, "single-block K_{d,d} has 2d ITs in two components and is minimally RGD", false, 0, 0, 1.0, ""};
    Timer timer;
    bool ok = true;
    std::ostringstream detail;
    for (int delta = 1; delta <= 3; ++delta) {
        const auto inst = single_block_bipartite(delta, delta);
        const auto rg = build_rg(inst);
        const bool minimal = is_minimally_rgd(inst);
        ok = ok && rg.size() == 2 * delta && rg.component_count() == 2 && minimal;
        detail << (delta > 1 ? "; " : "") << "d=" << delta << ": " << rg.size() << " ITs, " << rg.component_count()
               << " components, minimal=" << (minimal ? "yes" : "no");
        ++r.cases;
    }
    r.detail = detail.str();
    return finish(r, timer, ok);
}

Instance two_copies(int delta) {
    // A1 = [0,d), B1 = [d,2d), A2 = [2d,3d), B2 = [3d,4d); blocks A1 ∪ A2 and B1 ∪ B2.
    std::vector<Edge> edges;
    VertexSet u1, u2;
    for (int copy = 0; copy < 2; ++copy) {
        const int base = 2 * delta * copy;
        for (int a = 0; a < delta; ++a) {
            u1.push_back(base + a);
            u2.push_back(base + delta + a);
            for (int b = 0; b < delta; ++b) edges.emplace_back(base + a, base + delta + b);
        }
    }
    return Instance(Graph(4 * delta, edges), {make_set(u1), make_set(u2)});
}

Result two_copies_example() {
    Result r{2, "two copies of K_{d,d} with the standard bipartition", false, 0, 0, 1.0, ""};
    Timer timer;
    bool ok = true;
    std::ostringstream detail;
    for (int delta = 1; delta <= 2; ++delta) {
        const auto inst = two_copies(delta);
        const auto rg = build_rg(inst);
        const bool minimal = is_minimally_rgd(inst);
        const auto rec = recognize(inst);
        const bool replayed = rec.yes && to_canonical_json(replay(rec.trace)) == to_canonical_json(inst);
        ok = ok && rg.component_count() == 2 && minimal && rec.yes && rec.trace.peels.size() == 1 && replayed;
        detail << (delta > 1 ? "; " : "") << "d=" << delta << ": " << rg.component_count()
               << " components, minimal=" << (minimal ? "yes" : "no") << ", recognize=" << (rec.yes ? "YES" : "NO")
               << " with " << rec.trace.peels.size() << " peel(s), replay " << (replayed ? "exact" : "differs");
        ++r.cases;
    }
    r.detail = detail.str();
    return finish(r, timer, ok);
}

Result gluing_keeps_disconnection(Profile profile, std::uint64_t seed) {
    Result r{3, "gluing K_{A,B} onto a disconnected instance keeps the RG disconnected", false, 0, 0, 60.0, ""};
    Timer timer;
    Rng rng(seed ^ 0x3);
    const int cases = profile == Profile::Full ? 240 : 40;
    int failures = 0;
    std::set<std::pair<int, int>> nit_checked;
    std::string first_failure;
    for (int k = 0; k < cases; ++k) {
        const auto g = random_with_status(rng, 10, 4, RgStatus::Disconnected);
        const int a = uniform(rng, 1, 3), b = uniform(rng, 1, 3);
        const auto h = standard_bipartite(a, b);
        if (nit_checked.insert({a, b}).second && !is_minimally_nit(h)) throw InternalError("K_{A,B} is not minimally NIT");
        const BlockIndex donor = uniform(rng, 0, g.block_count() - 1);
        const auto combined = combine(g, donor, h, random_distribution(rng, g, donor, h));
        if (rg_status(combined) != RgStatus::Disconnected) {
            if (failures++ == 0) first_failure = instance_to_json(combined).dump();
        }
        ++r.cases;
    }
    r.detail = std::to_string(r.cases - failures) + "/" + std::to_string(r.cases) + " glued instances disconnected";
    if (failures) r.detail += "; first counterexample " + first_failure;
    return finish(r, timer, failures == 0);
}

struct Implication {
    long antecedent = 0;
    long violated = 0;
    void record(bool premise, bool conclusion) {
        if (!premise) return;
        ++antecedent;
        if (!conclusion) ++violated;
    }
};

bool all_deletions_connected(const Instance& inst) {
    for (BlockIndex i = 0; i < inst.block_count(); ++i)
        if (status_without_block(inst, i) != RgStatus::Connected) return false;
    return true;
}

Result minimality_biconditional(Profile profile, std::uint64_t seed) {
    Result r{4, "gluing preserves minimal RGD-ness in both directions", false, 0, 0, 120.0, ""};
    Timer timer;
    Rng rng(seed ^ 0x4);
    const int per_class = profile == Profile::Full ? 60 : 15;
    const int connected_cases = profile == Profile::Full ? 50 : 10;
    long minimal = 0, not_minimal = 0, mismatches = 0;
    Implication claim[4];
    auto run_case = [&](const Instance& g) {
        const int a = uniform(rng, 1, 3), b = uniform(rng, 1, 3);
        const auto h = standard_bipartite(a, b);
        const BlockIndex donor = uniform(rng, 0, g.block_count() - 1);
        const auto c = combine(g, donor, h, random_distribution(rng, g, donor, h));
        const bool g_disc = rg_status(g) == RgStatus::Disconnected;
        const bool c_disc = rg_status(c) == RgStatus::Disconnected;
        const bool g_del = all_deletions_connected(g);
        const bool c_del = all_deletions_connected(c);
        claim[0].record(g_disc, c_disc);
        claim[1].record(c_disc, g_disc);
        claim[2].record(g_del, c_del);
        claim[3].record(c_del, g_del);
        const bool gm = g_disc && g_del;
        if (g_disc) (gm ? minimal : not_minimal)++;
        if (gm != (c_disc && c_del)) ++mismatches;
        ++r.cases;
    };
    for (int k = 0; k < per_class; ++k) {
        // Minimally RGD side: elementary instances or random disconnected ones that happen to be minimal.
        if (k % 2 == 0) {
            run_case(random_elementary(rng, 3, 3, 10).instance);
        } else {
            Instance g;
            do g = random_with_status(rng, 10, 4, RgStatus::Disconnected);
            while (!is_minimally_rgd(g));
            run_case(g);
        }
        Instance g;
        do g = random_with_status(rng, 10, 4, RgStatus::Disconnected);
        while (is_minimally_rgd(g));
        run_case(g);
    }
    const long glued_disconnected = r.cases;
    for (int k = 0; k < connected_cases; ++k) run_case(random_with_status(rng, 10, 4, RgStatus::Connected));

    std::ostringstream d;
    d << glued_disconnected << " disconnected g (" << minimal << " minimally RGD, " << not_minimal << " not) plus "
      << connected_cases << " connected g; " << mismatches << " verdict mismatches";
    static const char* names[] = {"(i)", "(ii)", "(iii)", "(iv)"};
    bool ok = mismatches == 0 && minimal >= per_class && not_minimal >= per_class;
    for (int i = 0; i < 4; ++i) {
        d << "; " << names[i] << " " << claim[i].antecedent - claim[i].violated << "/" << claim[i].antecedent;
        ok = ok && claim[i].violated == 0 && claim[i].antecedent > 0;
    }
    r.detail = d.str();
    return finish(r, timer, ok);
}

Result elementary_second_component(Profile profile, std::uint64_t seed) {
    Result r{5, "elementary instances are disconnected and the peel loop finds an IT in another component", false, 0,
             0, 60.0, ""};
    Timer timer;
    Rng rng(seed ^ 0x5);
    const int cases = profile == Profile::Full ? 60 : 15;
    int failures = 0;
    for (int k = 0; k < cases; ++k) {
        const auto e = random_elementary(rng, 2, 3, 12);
        const auto rg = build_rg(e.instance);
        const auto assoc = elementary_association(e.spec);
        const auto base = all_a_transversal(e.instance, assoc);
        const auto other = second_component_it(e.instance, assoc);
        const auto bi = rg.find(base), oi = rg.find(other);
        const bool ok = rg_status(rg) == RgStatus::Disconnected && bi && oi && !same_component(rg, *bi, *oi);
        if (!ok) ++failures;
        ++r.cases;
    }
    r.detail = std::to_string(r.cases - failures) + "/" + std::to_string(r.cases) +
               " elementary instances disconnected with the second IT in another component";
    return finish(r, timer, failures == 0);
}

struct RecognitionTally {
    long wanted_perturbations = 0;
    long instances = 0, yes = 0, oracle_yes = 0, replay_exact = 0;
    long perturbed = 0, perturbed_agree = 0, perturbed_yes = 0;
    std::map<std::string, long> kinds;
    std::string first_disagreement;
};

RecognitionTally recognition_sweep(Profile profile, std::uint64_t seed) {
    RecognitionTally t;
    Rng rng(seed ^ 0x6);
    const auto instances = exhaustive_bad_instances(2, profile == Profile::Full ? 3 : 2);
    for (const auto& gen : instances) {
        ++t.instances;
        const auto rec = recognize(gen.instance);
        if (rec.yes) ++t.yes;
        if (oracle_bad(gen.instance)) ++t.oracle_yes;
        if (rec.yes && to_canonical_json(replay(rec.trace)) == to_canonical_json(gen.instance)) ++t.replay_exact;
    }
    const long wanted = profile == Profile::Full ? 200 : 60;
    t.wanted_perturbations = wanted;
    auto check = [&](const std::string& kind, const std::optional<Instance>& p) {
        if (!p) return;
        ++t.perturbed;
        ++t.kinds[kind];
        const bool verdict = recognize(*p).yes;
        const bool truth = oracle_bad(*p);
        if (verdict) ++t.perturbed_yes;
        if (verdict == truth) ++t.perturbed_agree;
        else if (t.first_disagreement.empty()) t.first_disagreement = instance_to_json(*p).dump();
    };
    for (int round = 0; t.perturbed < wanted || round == 0; ++round)
        for (const auto& gen : instances) {
            check("edge flip", flip_edge(rng, gen.instance));
            check("block move", move_vertex(rng, gen.instance));
            check("block swap", swap_vertices(rng, gen.instance));
        }
    return t;
}

Result recognizer_agreement(const RecognitionTally& t, double seconds) {
    Result r{6, "generated instances are recognized and confirmed; perturbed verdicts match the oracle", false, 0, 0,
             300.0, ""};
    r.cases = t.instances + t.perturbed;
    std::ostringstream d;
    d << t.instances << " generated (Δ ≤ 2): " << t.yes << " YES, " << t.oracle_yes << " oracle-bad; " << t.perturbed
      << " perturbations (";
    bool first = true;
    for (const auto& [k, n] : t.kinds) {
        d << (first ? "" : ", ") << n << " " << k;
        first = false;
    }
    d << "): " << t.perturbed_agree << " agree, " << t.perturbed_yes << " YES";
    if (!t.first_disagreement.empty()) d << "; first disagreement " << t.first_disagreement;
    r.detail = d.str();
    r.seconds = seconds;
    r.passed = t.yes == t.instances && t.oracle_yes == t.instances && t.perturbed_agree == t.perturbed &&
               t.perturbed >= t.wanted_perturbations && r.seconds < r.budget_seconds;
    return r;
}

Result replay_exact(const RecognitionTally& t, double seconds) {
    Result r{7, "replaying the recognition trace rebuilds the input byte for byte", false, t.yes, seconds, 300.0, ""};
    r.detail = std::to_string(t.replay_exact) + "/" + std::to_string(t.yes) + " YES traces replay exactly";
    r.passed = t.yes > 0 && t.replay_exact == t.yes && seconds < r.budget_seconds;
    return r;
}

// Oracle-confirmed instances satisfying (a)(b)(c) with sides of size at most 2
// and at most three components.
std::vector<Instance> general_universe(Profile profile, std::uint64_t seed) {
    std::set<std::string> seen;
    std::vector<Instance> out;
    auto add = [&](const Instance& inst) {
        if (inst.block_count() > 3 || inst.graph().max_degree() > 2) return;
        if (!seen.insert(to_canonical_json(inst)).second) return;
        if (oracle_general(inst)) out.push_back(inst);
    };
    Rng rng(seed ^ 0x8);
    const auto bad = exhaustive_bad_instances(2, profile == Profile::Full ? 3 : 2);
    for (const auto& gen : bad) {
        add(gen.instance);
        if (auto p = swap_vertices(rng, gen.instance)) add(*p);
    }
    const int elementary = profile == Profile::Full ? 120 : 30;
    for (int k = 0; k < elementary; ++k) {
        auto e = random_elementary(rng, 2, 3, 12);
        add(e.instance);
        if (e.instance.block_count() < 3) {
            const auto h = standard_bipartite(uniform(rng, 1, 2), uniform(rng, 1, 2));
            const BlockIndex donor = uniform(rng, 0, e.instance.block_count() - 1);
            add(combine(e.instance, donor, h, random_distribution(rng, e.instance, donor, h)));
        }
    }
    return out;
}

Result certificate_machinery(Profile profile, std::uint64_t seed) {
    Result r{8, "grown tuples are IMCs satisfying the structural claims, with per-block witnesses", false, 0, 0, 300.0,
             ""};
    Timer timer;
    const auto universe = general_universe(profile, seed);
    long grow_failed = 0, not_imc = 0, instances_with_claim_failure = 0, witness_incomplete = 0,
         witness_outside_scan = 0, scan_empty = 0, blocks = 0, blocks_witnessed = 0;
    std::map<std::string, long> claim_failures;
    std::string first_claim_failure, first_stuck;
    for (const auto& inst : universe) {
        ++r.cases;
        try {
            const auto pair = extremal_pair(inst);
            const auto grown = grow(inst, pair, {}, true);
            const auto rep = check_imc(inst, pair.rg, grown.tuple);
            if (!rep.is_imc) ++not_imc;
            const std::pair<const char*, bool> claims[] = {
                {"no isolated vertex in S△T", rep.difference_has_no_isolated},
                {"blocks of I(R) meet components touching R", rep.touched_components_meet_r},
                {"(S∩T)-R avoids components touching R", rep.outside_agreement_avoids_r},
                {"sub-instance on I(R) disconnected", rep.sub_instance_disconnected},
                {"S△T block graph 2-regular", rep.difference_cycles},
                {"unique R-neighbour", rep.unique_r_neighbor},
                {"matched pairs cross", rep.matched_pairs_cross},
                {"matched pairs cross (distinct blocks)", rep.matched_pairs_cross_between_blocks},
                {"center neighbours descend", rep.center_neighbors_descend},
            };
            bool any = false;
            for (auto [name, ok] : claims)
                if (!ok) {
                    ++claim_failures[name];
                    any = true;
                }
            if (any) {
                ++instances_with_claim_failure;
                if (first_claim_failure.empty()) first_claim_failure = instance_to_json(inst).dump();
            }
        } catch (const InternalError&) {
            ++grow_failed;
            continue;
        }
        const auto search = block_side_witnesses(inst);
        if (!search.complete()) {
            ++witness_incomplete;
            if (first_stuck.empty()) first_stuck = instance_to_json(inst).dump();
        }
        for (BlockIndex i = 0; i < inst.block_count(); ++i) {
            ++blocks;
            const auto scan = brute_witnesses(inst, i);
            if (scan.empty()) ++scan_empty;
            const auto& w = search.witnesses[i];
            if (!w) continue;
            if (set_contains(scan, w->vertex)) ++blocks_witnessed;
            else ++witness_outside_scan;
        }
    }
    std::ostringstream d;
    d << r.cases << " (a)(b)(c) instances: growth with per-step feasibility ok on " << r.cases - grow_failed
      << ", IMC on " << r.cases - grow_failed - not_imc << "; claim checks failed on " << instances_with_claim_failure
      << " instance(s)";
    for (const auto& [name, n] : claim_failures) d << " [" << name << ": " << n << "]";
    d << "; forest-walk witnesses for " << blocks_witnessed << "/" << blocks << " blocks (" << witness_incomplete
      << " instance(s) stuck, " << witness_outside_scan << " outside the scan); brute-force scan empty for "
      << scan_empty << " block(s)";
    if (!first_claim_failure.empty()) d << "; first claim failure " << first_claim_failure;
    if (!first_stuck.empty()) d << "; first stuck walk " << first_stuck;
    r.detail = d.str();
    const bool ok = grow_failed == 0 && not_imc == 0 && instances_with_claim_failure == 0 &&
                    witness_incomplete == 0 && witness_outside_scan == 0 && scan_empty == 0 && r.cases > 0;
    long other_claims = 0;
    for (const auto& [name, n] : claim_failures)
        if (std::string_view(name).rfind("matched pairs cross", 0) != 0) other_claims += n;
    r = finish(r, timer, ok);
    r.documented_gap = !r.passed && r.seconds < r.budget_seconds && r.cases > 0 && grow_failed == 0 &&
                       not_imc == 0 && other_claims == 0 && witness_outside_scan == 0 && scan_empty == 0;
    return r;
}

// Random graph with maximum degree at most delta and blocks of size 2Δ or 2Δ + 1.
Instance random_bounded_degree(Rng& rng, int delta) {
    const int m = uniform(rng, 1, 4);
    std::vector<int> sizes(m);
    int n = 0;
    for (auto& s : sizes) n += (s = 2 * delta + (coin(rng, 0.3) ? 1 : 0));
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const double p = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
    std::vector<int> degree(n, 0);
    std::vector<Edge> edges;
    for (auto [u, v] : pairs)
        if (degree[u] < delta && degree[v] < delta && coin(rng, p)) {
            ++degree[u];
            ++degree[v];
            edges.emplace_back(u, v);
        }
    std::vector<VertexSet> blocks;
    std::vector<Vertex> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    int next = 0;
    for (int s : sizes) {
        blocks.emplace_back(order.begin() + next, order.begin() + next + s);
        blocks.back() = make_set(blocks.back());
        next += s;
    }
    return Instance(Graph(n, edges), std::move(blocks));
}

bool has_kdd_subset(const Instance& inst, int delta) {
    const int m = inst.block_count();
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<BlockIndex> listed;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1u) listed.push_back(i);
        if (induces_kdd_copies(inst, listed, delta)) return true;
    }
    return false;
}

Result connectivity_spot_check(Profile profile, std::uint64_t seed) {
    Result r{9, "without an induced union of K_{d,d} copies the RG is connected", false, 0, 0, 300.0, ""};
    Timer timer;
    Rng rng(seed ^ 0x9);
    const long wanted = profile == Profile::Full ? 600 : 100;
    long filtered = 0, edgeless = 0, failures = 0;
    std::string first_failure;
    std::map<int, long> by_delta;
    while (r.cases < wanted) {
        const auto inst = random_bounded_degree(rng, uniform(rng, 1, 2));
        const int delta = inst.graph().max_degree();
        if (delta == 0) {
            ++edgeless;
            continue;
        }
        bool sizes_ok = true;
        for (const auto& b : inst.blocks()) sizes_ok = sizes_ok && static_cast<int>(b.size()) >= 2 * delta;
        if (!sizes_ok) throw InternalError("generator produced a block below 2Δ");
        if (has_kdd_subset(inst, delta)) {
            ++filtered;
            continue;
        }
        ++r.cases;
        ++by_delta[delta];
        if (rg_status(inst) != RgStatus::Connected) {
            if (failures++ == 0) first_failure = instance_to_json(inst).dump();
        }
    }
    std::ostringstream d;
    d << r.cases - failures << "/" << r.cases << " connected (Δ=1: " << by_delta[1] << ", Δ=2: " << by_delta[2]
      << "); " << filtered << " samples filtered for an induced union of copies, " << edgeless << " edgeless skipped";
    if (failures) d << "; first counterexample " << first_failure;
    r.detail = d.str();
    return finish(r, timer, failures == 0);
}

Result empty_instance() {
    Result r{10, "the empty instance has one (empty) IT and a connected RG", false, 1, 0, 1.0, ""};
    Timer timer;
    const Instance empty(Graph(0), {});
    const auto its = enumerate_its(empty);
    const auto status = rg_status(empty);
    const bool ok = its.size() == 1 && its.front().choice.empty() && status == RgStatus::Connected;
    r.detail = std::to_string(its.size()) + " IT(s), status " + to_string(status);
    return finish(r, timer, ok);
}

}  // namespace

std::optional<Profile> parse_profile(std::string_view name) {
    if (name == "quick") return Profile::Quick;
    if (name == "full") return Profile::Full;
    return std::nullopt;
}

const char* to_string(Profile profile) { return profile == Profile::Full ? "full" : "quick"; }

Result run_criterion(int id, Profile profile, std::uint64_t seed) {
    switch (id) {
        case 1: return simplest_bad_instance();
        case 2: return two_copies_example();
        case 3: return gluing_keeps_disconnection(profile, seed);
        case 4: return minimality_biconditional(profile, seed);
        case 5: return elementary_second_component(profile, seed);
        case 6:
        case 7: {
            Timer timer;
            const auto tally = recognition_sweep(profile, seed);
            return id == 6 ? recognizer_agreement(tally, timer.seconds()) : replay_exact(tally, timer.seconds());
        }
        case 8: return certificate_machinery(profile, seed);
        case 9: return connectivity_spot_check(profile, seed);
        case 10: return empty_instance();
        default: throw InvalidArgument("no acceptance criterion " + std::to_string(id));
    }
}

std::vector<Result> run_all(Profile profile, std::uint64_t seed, const std::function<void(const Result&)>& on_result) {
    std::vector<Result> out;
    auto emit = [&](Result r) {
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    };
    for (int id = 1; id <= 5; ++id) emit(run_criterion(id, profile, seed));
    {
        Timer timer;
        const auto tally = recognition_sweep(profile, seed);
        const double s = timer.seconds();
        emit(recognizer_agreement(tally, s));
        emit(replay_exact(tally, s));
    }
    for (int id = 8; id <= kCriterionCount; ++id) emit(run_criterion(id, profile, seed));
    return out;
}

bool acceptable(const std::vector<Result>& results) {
    return std::all_of(results.begin(), results.end(), [](const Result& r) { return r.passed || r.documented_gap; });
}

std::string format_line(const Result& r) {
    char timing[96];
    std::snprintf(timing, sizeof timing, "cases=%ld, %.2f s of %.0f s", r.cases, r.seconds, r.budget_seconds);
    return "criterion " + std::to_string(r.id) + (r.passed ? " PASS  " : " FAIL  ") + r.title + ": " + r.detail +
           " [" + timing + "]" + (r.documented_gap ? " (documented gap)" : "");
}

}  // namespace itr::acceptance
