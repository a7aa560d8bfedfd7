#include "itr/constructor.hpp"

#include <algorithm>
#include <numeric>

#include "itr/errors.hpp"
#include "itr/serialize.hpp"
#include "itr/version.hpp"

namespace itr {

namespace {

void check_spec(const ElementarySpec& spec) {
    const int m = static_cast<int>(spec.parts.size());
    for (int i = 0; i < m; ++i) {
        const auto& p = spec.parts[i];
        if (p.a_size < 1 || p.b_size < 1)
            throw InvalidArgument("part " + std::to_string(i) + " needs nonempty sides");
        if (static_cast<int>(p.b_blocks.size()) != p.b_size)
            throw InvalidArgument("part " + std::to_string(i) + " assigns " + std::to_string(p.b_blocks.size()) +
                                  " B vertices, expected " + std::to_string(p.b_size));
        for (BlockIndex b : p.b_blocks)
            if (b < 0 || b >= m) throw InvalidArgument("part " + std::to_string(i) + " targets block " + std::to_string(b));
    }
}

void verify_deletions_connected(const Instance& instance, const OracleOptions& options, const char* what) {
    for (BlockIndex i = 0; i < instance.block_count(); ++i) {
        auto status = status_without_block(instance, i, options);
        if (status != RgStatus::Connected)
            throw VerificationFailed(std::string(what) + ": deleting block " + std::to_string(i) + " leaves RG " +
                                     to_string(status));
    }
}

}  // namespace

Instance build_elementary(const ElementarySpec& spec, bool verify, const OracleOptions& options) {
    check_spec(spec);
    const int m = static_cast<int>(spec.parts.size());
    std::vector<Edge> edges;
    std::vector<VertexSet> blocks(m);
    Vertex next = 0;
    for (int i = 0; i < m; ++i) {
        const auto& p = spec.parts[i];
        const Vertex a0 = next;
        const Vertex b0 = next + p.a_size;
        for (int x = 0; x < p.a_size; ++x) {
            blocks[i].push_back(a0 + x);
            for (int y = 0; y < p.b_size; ++y) edges.emplace_back(a0 + x, b0 + y);
        }
        for (int y = 0; y < p.b_size; ++y) blocks[p.b_blocks[y]].push_back(b0 + y);
        next = b0 + p.b_size;
    }
    Instance out(Graph(next, edges), std::move(blocks));
    if (verify) verify_deletions_connected(out, options, "not elementary");
    return out;
}

Association elementary_association(const ElementarySpec& spec) {
    check_spec(spec);
    Association out;
    Vertex next = 0;
    for (std::size_t i = 0; i < spec.parts.size(); ++i) {
        const auto& p = spec.parts[i];
        ComponentSides sides;
        sides.component = static_cast<int>(i);
        for (int x = 0; x < p.a_size; ++x) sides.a.push_back(next++);
        for (int y = 0; y < p.b_size; ++y) sides.b.push_back(next++);
        out.push_back(std::move(sides));
    }
    return out;
}

Instance standard_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw InvalidArgument("complete bipartite sides must be nonempty");
    std::vector<Edge> edges;
    VertexSet left, right;
    for (int x = 0; x < a; ++x) left.push_back(x);
    for (int y = 0; y < b; ++y) right.push_back(a + y);
    for (Vertex u : left)
        for (Vertex v : right) edges.emplace_back(u, v);
    return Instance(Graph(a + b, edges), {left, right});
}

Instance single_block_bipartite(int a, int b) {
    auto two = standard_bipartite(a, b);
    VertexSet all(a + b);
    std::iota(all.begin(), all.end(), 0);
    auto edges = two.graph().edges();
    return Instance(Graph(a + b, edges), {all});
}

Instance combine(const Instance& g, BlockIndex donor_block, const Instance& h, const Distribution& dist, bool verify,
                 const OracleOptions& options) {
    if (donor_block < 0 || donor_block >= g.block_count())
        throw InvalidArgument("donor block " + std::to_string(donor_block) + " out of range");
    const auto& donor = g.block(donor_block);
    if (dist.target.size() != donor.size())
        throw InvalidArgument("distribution must cover exactly the donor block");
    for (auto [v, target] : dist.target) {
        if (!set_contains(donor, v)) throw InvalidArgument("vertex " + std::to_string(v) + " is not in the donor block");
        if (target < 0 || target >= h.block_count())
            throw InvalidArgument("distribution target " + std::to_string(target) + " out of range");
    }
    if (verify) {
        if (!is_minimally_nit(h, options)) throw PreconditionFailed("recipient instance is not minimally NIT");
        if (rg_status(g, options) != RgStatus::Disconnected)
            throw PreconditionFailed("donor instance does not have a disconnected RG");
    }

    const int offset = g.vertex_count();
    auto edges = g.graph().edges();
    for (auto [u, v] : h.graph().edges()) edges.emplace_back(u + offset, v + offset);
    std::vector<VertexSet> blocks;
    for (BlockIndex i = 0; i < g.block_count(); ++i)
        if (i != donor_block) blocks.push_back(g.block(i));
    for (BlockIndex j = 0; j < h.block_count(); ++j) {
        VertexSet b;
        for (Vertex v : h.block(j)) b.push_back(v + offset);
        for (auto [v, target] : dist.target)
            if (target == j) b.push_back(v);
        blocks.push_back(make_set(std::move(b)));
    }
    Instance out(Graph(offset + h.vertex_count(), edges), std::move(blocks));
    if (verify && rg_status(out, options) != RgStatus::Disconnected)
        throw VerificationFailed("combined instance does not have a disconnected RG");
    return out;
}

namespace {

void check_kdd_base(int delta, const ElementarySpec& base) {
    if (delta < 1) throw InvalidArgument("delta must be positive");
    if (base.parts.empty()) throw InvalidArgument("base needs at least one part");
    for (const auto& p : base.parts)
        if (p.a_size != delta || p.b_size != delta)
            throw InvalidArgument("base parts must all be K_{delta,delta}");
}

Instance glue_kdd(const Instance& current, int delta, const SplitChoice& choice) {
    if (choice.donor_block < 0 || choice.donor_block >= current.block_count())
        throw InvalidArgument("donor block " + std::to_string(choice.donor_block) + " out of range");
    const auto& donor = current.block(choice.donor_block);
    if (static_cast<int>(donor.size()) != 2 * delta)
        throw PreconditionFailed("donor block has size " + std::to_string(donor.size()) + ", expected 2*delta");
    auto to_a = make_set(choice.to_a);
    if (static_cast<int>(to_a.size()) != delta || to_a.size() != choice.to_a.size())
        throw PreconditionFailed("unbalanced split: exactly delta distinct donor vertices must go to A");
    Distribution dist;
    for (Vertex v : donor) dist.target[v] = set_contains(to_a, v) ? 0 : 1;
    for (Vertex v : to_a)
        if (!set_contains(donor, v)) throw PreconditionFailed("split vertex " + std::to_string(v) + " not in donor block");
    return combine(current, choice.donor_block, standard_bipartite(delta, delta), dist);
}

}  // namespace

Instance generate_bad_instance(int delta, const ElementarySpec& base, std::span<const SplitChoice> choices, bool verify,
                               const OracleOptions& options) {
    check_kdd_base(delta, base);
    Instance current = build_elementary(base, verify, options);
    for (const auto& b : current.blocks())
        if (static_cast<int>(b.size()) != 2 * delta) throw InvalidArgument("base blocks must all have size 2*delta");
    for (const auto& choice : choices) current = glue_kdd(current, delta, choice);
    if (verify && !is_minimally_rgd(current, options))
        throw VerificationFailed("generated instance is not minimally RGD");
    return current;
}

nlohmann::json to_json(const ConstructionTrace& trace) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : trace.base.parts)
        parts.push_back({{"a", p.a_size}, {"b", p.b_size}, {"b_blocks", p.b_blocks}});
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : trace.steps) steps.push_back({{"donor_block", s.donor_block}, {"to_a", s.to_a}});
    return {{"tool", kToolName},        {"version", kVersion}, {"seed", trace.seed},
            {"delta", trace.delta},     {"base", {{"parts", parts}}},
            {"steps", std::move(steps)}};
}

ConstructionTrace construction_trace_from_json(const nlohmann::json& doc) {
    try {
        ConstructionTrace t;
        t.seed = doc.at("seed").get<std::uint64_t>();
        t.delta = doc.at("delta").get<int>();
        for (const auto& p : doc.at("base").at("parts")) {
            PartSpec part;
            part.a_size = p.at("a").get<int>();
            part.b_size = p.at("b").get<int>();
            part.b_blocks = p.at("b_blocks").get<std::vector<BlockIndex>>();
            t.base.parts.push_back(std::move(part));
        }
        for (const auto& s : doc.at("steps"))
            t.steps.push_back({s.at("donor_block").get<BlockIndex>(), s.at("to_a").get<VertexSet>()});
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed construction trace: ") + e.what());
    }
}

Instance replay(const ConstructionTrace& trace, bool verify, const OracleOptions& options) {
    return generate_bad_instance(trace.delta, trace.base, trace.steps, verify, options);
}

ElementarySpec random_kdd_elementary_spec(int delta, int blocks, std::mt19937_64& rng, int attempts,
                                          const OracleOptions& options) {
    if (delta < 1 || blocks < 1) throw InvalidArgument("delta and block count must be positive");
    std::vector<BlockIndex> slots;
    for (BlockIndex i = 0; i < blocks; ++i)
        for (int k = 0; k < delta; ++k) slots.push_back(i);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::shuffle(slots.begin(), slots.end(), rng);
        ElementarySpec spec;
        for (int i = 0; i < blocks; ++i) {
            PartSpec p{delta, delta, {}};
            p.b_blocks.assign(slots.begin() + i * delta, slots.begin() + (i + 1) * delta);
            spec.parts.push_back(std::move(p));
        }
        try {
            build_elementary(spec, true, options);
            return spec;
        } catch (const VerificationFailed&) {
        }
    }
    throw VerificationFailed("no elementary spec found in " + std::to_string(attempts) + " attempts");
}

std::vector<SplitChoice> random_split_choices(int delta, const ElementarySpec& base, int iterations,
                                              std::mt19937_64& rng) {
    check_kdd_base(delta, base);
    Instance current = build_elementary(base);
    std::vector<SplitChoice> out;
    for (int k = 0; k < iterations; ++k) {
        std::uniform_int_distribution<BlockIndex> pick(0, current.block_count() - 1);
        SplitChoice choice;
        choice.donor_block = pick(rng);
        VertexSet donor = current.block(choice.donor_block);
        std::shuffle(donor.begin(), donor.end(), rng);
        choice.to_a = make_set(VertexSet(donor.begin(), donor.begin() + delta));
        current = glue_kdd(current, delta, choice);
        out.push_back(std::move(choice));
    }
    return out;
}

GeneratedInstance sample_bad_instance(int delta, int base_blocks, int iterations, std::uint64_t seed, bool verify,
                                      const OracleOptions& options) {
    std::mt19937_64 rng(seed);
    ConstructionTrace trace;
    trace.seed = seed;
    trace.delta = delta;
    trace.base = random_kdd_elementary_spec(delta, base_blocks, rng, 1000, options);
    trace.steps = random_split_choices(delta, trace.base, iterations, rng);
    Instance instance = replay(trace, verify, options);
    return {std::move(instance), std::move(trace)};
}

void require_association(const Instance& instance, const Association& association) {
    if (static_cast<int>(association.size()) != instance.block_count())
        throw InvalidArgument("association must name one component per block");
    const auto comps = components(instance.graph());
    std::vector<char> used(comps.size(), 0);
    for (BlockIndex i = 0; i < instance.block_count(); ++i) {
        const auto& s = association[i];
        if (s.component < 0 || s.component >= static_cast<int>(comps.size()))
            throw InvalidArgument("association names a missing component");
        if (used[s.component]) throw InvalidArgument("association reuses a component");
        used[s.component] = 1;
        auto parts = complete_bipartite_parts(instance.graph(), comps[s.component]);
        if (!parts) throw InvalidArgument("associated component is not complete bipartite");
        if (!((parts->a == s.a && parts->b == s.b) || (parts->a == s.b && parts->b == s.a)))
            throw InvalidArgument("association sides do not match component " + std::to_string(s.component));
        for (Vertex v : s.a)
            if (instance.block_of(v) != i)
                throw InvalidArgument("side A of block " + std::to_string(i) + " is not contained in the block");
    }
}

Transversal all_a_transversal(const Instance& instance, const Association& association) {
    require_association(instance, association);
    Transversal t;
    for (const auto& s : association) t.choice.push_back(s.a.front());
    return t;
}

Transversal second_component_it(const Instance& instance, const Association& association) {
    require_association(instance, association);
    const int m = instance.block_count();
    std::vector<char> alive(instance.vertex_count(), 1);
    std::vector<VertexSet> remaining = instance.blocks();
    std::vector<char> active(m, 1);
    Transversal t;
    t.choice.assign(m, -1);

    while (true) {
        std::vector<BlockIndex> peeled;
        for (BlockIndex i = 0; i < m; ++i)
            if (active[i] && remaining[i] == association[i].a) peeled.push_back(i);
        if (peeled.empty()) break;
        for (BlockIndex i : peeled) {
            t.choice[i] = remaining[i].front();
            for (Vertex v : association[i].a) alive[v] = 0;
            for (Vertex v : association[i].b) alive[v] = 0;
            active[i] = 0;
        }
        for (BlockIndex i = 0; i < m; ++i) {
            if (!active[i]) continue;
            std::erase_if(remaining[i], [&](Vertex v) { return !alive[v]; });
            if (remaining[i].empty())
                throw InternalError("block " + std::to_string(i) + " emptied while peeling; instance is not elementary");
        }
    }
    for (BlockIndex i = 0; i < m; ++i) {
        if (!active[i]) continue;
        VertexSet rest;
        std::set_difference(remaining[i].begin(), remaining[i].end(), association[i].a.begin(), association[i].a.end(),
                            std::back_inserter(rest));
        if (rest.empty()) throw InternalError("block " + std::to_string(i) + " has nothing outside its A side");
        t.choice[i] = rest.front();
    }
    if (!is_independent(instance, t)) throw InternalError("constructed transversal is not independent");
    return t;
}

}  // namespace itr
