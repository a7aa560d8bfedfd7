#include "itr/recognizer.hpp"

#include <algorithm>

#include "itr/constructor.hpp"
#include "itr/errors.hpp"
#include "itr/serialize.hpp"
#include "itr/union_find.hpp"

namespace itr {

std::vector<std::optional<Bipartition>> component_sides(const Instance& instance) {
    std::vector<std::optional<Bipartition>> out;
    for (const auto& c : components(instance.graph())) out.push_back(complete_bipartite_parts(instance.graph(), c));
    return out;
}

bool check_shape(const Instance& instance, int delta) {
    if (delta < 1) return false;
    for (const auto& b : instance.blocks())
        if (static_cast<int>(b.size()) != 2 * delta) return false;
    const auto sides = component_sides(instance);
    if (static_cast<int>(sides.size()) != instance.block_count()) return false;
    return std::all_of(sides.begin(), sides.end(), [&](const auto& s) {
        return s && static_cast<int>(s->a.size()) == delta && static_cast<int>(s->b.size()) == delta;
    });
}

namespace {

// Block holding all of `side`, or -1.
BlockIndex enclosing_block(const Instance& instance, const VertexSet& side) {
    BlockIndex b = instance.block_of(side.front());
    for (Vertex v : side)
        if (instance.block_of(v) != b) return -1;
    return b;
}

}  // namespace

Containment side_containment(const Instance& instance) {
    const auto sides = component_sides(instance);
    Containment out(instance.block_count());
    for (std::size_t c = 0; c < sides.size(); ++c) {
        if (!sides[c]) throw InvalidArgument("component " + std::to_string(c) + " is not complete bipartite");
        if (BlockIndex b = enclosing_block(instance, sides[c]->a); b >= 0)
            out[b].push_back({static_cast<int>(c), 0});
        if (BlockIndex b = enclosing_block(instance, sides[c]->b); b >= 0)
            out[b].push_back({static_cast<int>(c), 1});
    }
    return out;
}

namespace {

class BlockMatcher {
public:
    BlockMatcher(const Containment& containment, int component_count)
        : options_(containment.size()), owner_(component_count, -1), seen_(component_count, 0) {
        for (std::size_t b = 0; b < containment.size(); ++b) {
            for (const auto& s : containment[b]) options_[b].push_back(s.component);
            std::sort(options_[b].begin(), options_[b].end());
            options_[b].erase(std::unique(options_[b].begin(), options_[b].end()), options_[b].end());
        }
    }

    std::optional<std::vector<int>> run() {
        for (std::size_t b = 0; b < options_.size(); ++b) {
            std::fill(seen_.begin(), seen_.end(), 0);
            if (!augment(static_cast<int>(b))) return std::nullopt;
        }
        std::vector<int> match(options_.size(), -1);
        for (std::size_t c = 0; c < owner_.size(); ++c)
            if (owner_[c] >= 0) match[owner_[c]] = static_cast<int>(c);
        return match;
    }

private:
    bool augment(int block) {
        for (int c : options_[block]) {
            if (seen_[c]) continue;
            seen_[c] = 1;
            if (owner_[c] < 0 || augment(owner_[c])) {
                owner_[c] = block;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<int>> options_;
    std::vector<int> owner_;
    std::vector<char> seen_;
};

}  // namespace

std::optional<std::vector<int>> unique_association(const Containment& containment, int component_count) {
    for (const auto& list : containment)
        for (const auto& s : list)
            if (s.component < 0 || s.component >= component_count)
                throw InvalidArgument("containment names component " + std::to_string(s.component));
    return BlockMatcher(containment, component_count).run();
}

std::optional<Straddler> find_straddler(const Instance& instance, bool reverse_scan) {
    const auto sides = component_sides(instance);
    const int count = static_cast<int>(sides.size());
    for (int k = 0; k < count; ++k) {
        const int c = reverse_scan ? count - 1 - k : k;
        if (!sides[c]) continue;
        BlockIndex ba = enclosing_block(instance, sides[c]->a);
        BlockIndex bb = enclosing_block(instance, sides[c]->b);
        if (ba < 0 || bb < 0 || ba == bb) continue;
        Straddler s;
        s.component = c;
        if (ba < bb) {
            s.side_a = sides[c]->a;
            s.side_b = sides[c]->b;
            s.block_a = ba;
            s.block_b = bb;
        } else {
            s.side_a = sides[c]->b;
            s.side_b = sides[c]->a;
            s.block_a = bb;
            s.block_b = ba;
        }
        return s;
    }
    return std::nullopt;
}

PeelResult peel(const Instance& instance, const Straddler& straddler) {
    const int m = instance.block_count();
    if (straddler.block_a < 0 || straddler.block_b >= m || straddler.block_a >= straddler.block_b)
        throw PreconditionFailed("straddler blocks out of order or range");
    if (straddler.side_a.empty() || straddler.side_b.empty()) throw PreconditionFailed("straddler has an empty side");
    for (Vertex v : straddler.side_a)
        if (!instance.graph().contains(v) || instance.block_of(v) != straddler.block_a)
            throw PreconditionFailed("side A is not inside block_a");
    for (Vertex v : straddler.side_b)
        if (!instance.graph().contains(v) || instance.block_of(v) != straddler.block_b)
            throw PreconditionFailed("side B is not inside block_b");

    std::vector<char> removed(instance.vertex_count(), 0);
    for (Vertex v : straddler.side_a) removed[v] = 1;
    for (Vertex v : straddler.side_b) removed[v] = 1;
    {
        // The removed set must be a whole complete bipartite component.
        VertexSet comp = make_set([&] {
            VertexSet all = straddler.side_a;
            all.insert(all.end(), straddler.side_b.begin(), straddler.side_b.end());
            return all;
        }());
        std::optional<Bipartition> parts;
        try {
            parts = complete_bipartite_parts(instance.graph(), comp);
        } catch (const InvalidArgument&) {
            throw PreconditionFailed("straddler is not a connected component");
        }
        if (!parts || !((parts->a == straddler.side_a && parts->b == straddler.side_b) ||
                        (parts->a == straddler.side_b && parts->b == straddler.side_a)))
            throw PreconditionFailed("straddler sides do not form a complete bipartite component");
    }

    PeelResult out;
    out.record.straddler = straddler;
    std::vector<Vertex> new_id(instance.vertex_count(), -1);
    for (Vertex v = 0; v < instance.vertex_count(); ++v) {
        if (removed[v]) continue;
        new_id[v] = static_cast<Vertex>(out.record.vertex_origin.size());
        out.record.vertex_origin.push_back(v);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : instance.graph().edges())
        if (!removed[u] && !removed[v]) edges.emplace_back(new_id[u], new_id[v]);

    std::vector<VertexSet> blocks;
    VertexSet merged;
    for (BlockIndex i = 0; i < m; ++i) {
        VertexSet b;
        for (Vertex v : instance.block(i))
            if (!removed[v]) b.push_back(new_id[v]);
        if (i == straddler.block_a) {
            out.record.to_a = b;
            merged.insert(merged.end(), b.begin(), b.end());
        } else if (i == straddler.block_b) {
            merged.insert(merged.end(), b.begin(), b.end());
        } else {
            blocks.push_back(std::move(b));
        }
    }
    if (merged.empty()) throw PreconditionFailed("merged block would be empty");
    blocks.push_back(make_set(std::move(merged)));
    out.instance = Instance(Graph(static_cast<int>(out.record.vertex_origin.size()), edges), std::move(blocks));
    return out;
}

Instance unpeel(const Instance& peeled, const PeelRecord& record) {
    const auto& s = record.straddler;
    const int a = static_cast<int>(s.side_a.size());
    const int b = static_cast<int>(s.side_b.size());
    const BlockIndex donor = peeled.block_count() - 1;
    if (donor < 0) throw InvalidArgument("peeled instance has no merged block");
    Distribution dist;
    for (Vertex v : peeled.block(donor)) dist.target[v] = set_contains(record.to_a, v) ? 0 : 1;
    Instance glued = combine(peeled, donor, standard_bipartite(a, b), dist);

    const int n_peeled = peeled.vertex_count();
    if (static_cast<int>(record.vertex_origin.size()) != n_peeled)
        throw InvalidArgument("peel record does not match the peeled instance");
    std::vector<Vertex> new_id(glued.vertex_count());
    for (Vertex v = 0; v < n_peeled; ++v) new_id[v] = record.vertex_origin[v];
    for (int k = 0; k < a; ++k) new_id[n_peeled + k] = s.side_a[k];
    for (int k = 0; k < b; ++k) new_id[n_peeled + a + k] = s.side_b[k];

    const int m = glued.block_count();
    std::vector<BlockIndex> position(m);
    BlockIndex slot = 0;
    for (BlockIndex i = 0; i + 2 < m; ++i) {
        while (slot == s.block_a || slot == s.block_b) ++slot;
        position[i] = slot++;
    }
    position[m - 2] = s.block_a;
    position[m - 1] = s.block_b;
    return permute(glued, new_id, position);
}

bool is_irreducible(const Instance& instance) {
    const int m = instance.block_count();
    if (m == 0) return false;
    const auto comps = components(instance.graph());
    const int c = static_cast<int>(comps.size());
    UnionFind uf(m + c);
    for (int k = 0; k < c; ++k)
        for (Vertex v : comps[k]) uf.unite(instance.block_of(v), m + k);
    for (int x = 1; x < m + c; ++x)
        if (!uf.connected(0, x)) return false;
    return true;
}

namespace {

Recognition run_recognition(const Instance& input, bool general, const RecognizeOptions& options,
                            const OracleOptions& oracle) {
    Recognition result;
    auto& trace = result.trace;
    trace.general = general;
    Instance current = input;
    auto fail = [&](int step, std::string reason) {
        result.yes = false;
        trace.failed_step = step;
        trace.reason = std::move(reason);
        trace.terminal = current;
        return result;
    };

    if (current.block_count() == 0) return fail(1, "empty instance");
    int delta = 0;
    if (!general) {
        if (options.delta) {
            delta = *options.delta;
        } else {
            auto first = component_sides(current).front();
            if (!first) return fail(1, "component 0 is not complete bipartite");
            if (first->a.size() != first->b.size()) return fail(1, "component 0 is not balanced");
            delta = static_cast<int>(first->a.size());
        }
        trace.delta = delta;
    }

    while (true) {
        if (!general) {
            if (!check_shape(current, delta))
                return fail(1, "not a disjoint union of |U| copies of K_{delta,delta} with blocks of size 2*delta");
        } else {
            const auto sides = component_sides(current);
            for (std::size_t c = 0; c < sides.size(); ++c)
                if (!sides[c]) return fail(1, "component " + std::to_string(c) + " is not complete bipartite");
            if (static_cast<int>(sides.size()) != current.block_count())
                return fail(1, "component count differs from block count");
        }

        const auto containment = side_containment(current);
        for (BlockIndex i = 0; i < current.block_count(); ++i)
            if (containment[i].empty())
                return fail(2, "block " + std::to_string(i) + " contains no side of any component");
        const int comps = static_cast<int>(components(current.graph()).size());

        if (options.policy == PeelPolicy::MatchFirst) {
            if (auto match = unique_association(containment, comps)) {
                trace.matching = std::move(match);
                break;
            }
        }
        auto straddler = find_straddler(current, options.reverse_scan);
        if (!straddler) {
            if (options.policy == PeelPolicy::Eager) {
                if (auto match = unique_association(containment, comps)) {
                    trace.matching = std::move(match);
                    break;
                }
            }
            return fail(4, "no unique association and no straddling component");
        }
        const auto merged_size = current.block(straddler->block_a).size() + current.block(straddler->block_b).size() -
                                 straddler->side_a.size() - straddler->side_b.size();
        if (merged_size == 0) return fail(5, "merged block would be empty");
        auto peeled = peel(current, *straddler);
        trace.peels.push_back(std::move(peeled.record));
        current = std::move(peeled.instance);
    }

    trace.terminal = current;
    if (!general) {
        trace.irreducible = is_irreducible(current);
        if (!*trace.irreducible) return fail(6, "terminal instance is reducible");
    } else {
        trace.minimally_rgd = is_minimally_rgd(current, oracle);
        if (!*trace.minimally_rgd) return fail(6, "terminal instance is not minimally RGD");
    }
    result.yes = true;
    return result;
}

}  // namespace

Recognition recognize(const Instance& instance, const RecognizeOptions& options) {
    return run_recognition(instance, false, options, {});
}

Recognition recognize_general(const Instance& instance, const OracleOptions& oracle, const RecognizeOptions& options) {
    return run_recognition(instance, true, options, oracle);
}

Instance replay(const RecognitionTrace& trace) {
    Instance current = trace.terminal;
    for (auto it = trace.peels.rbegin(); it != trace.peels.rend(); ++it) current = unpeel(current, *it);
    return current;
}

nlohmann::json to_json(const Recognition& recognition) {
    using nlohmann::json;
    const auto& t = recognition.trace;
    json peels = json::array();
    for (const auto& p : t.peels) {
        peels.push_back({{"component", p.straddler.component},
                         {"block_a", p.straddler.block_a},
                         {"block_b", p.straddler.block_b},
                         {"side_a", p.straddler.side_a},
                         {"side_b", p.straddler.side_b},
                         {"vertex_origin", p.vertex_origin},
                         {"to_a", p.to_a}});
    }
    json terminal = {{"instance", instance_to_json(t.terminal)}};
    terminal["matching"] = t.matching ? json(*t.matching) : json(nullptr);
    terminal["irreducible"] = t.irreducible ? json(*t.irreducible) : json(nullptr);
    terminal["minimally_rgd"] = t.minimally_rgd ? json(*t.minimally_rgd) : json(nullptr);
    json out = {{"verdict", recognition.yes ? "YES" : "NO"},
                {"mode", t.general ? "general" : "bad-instance"},
                {"delta", t.delta},
                {"peels", std::move(peels)},
                {"terminal", std::move(terminal)},
                {"reason", t.reason}};
    out["failed_step"] = t.failed_step ? json(t.failed_step) : json(nullptr);
    return out;
}

RecognitionTrace recognition_trace_from_json(const nlohmann::json& doc) {
    try {
        RecognitionTrace t;
        t.general = doc.at("mode").get<std::string>() == "general";
        t.delta = doc.at("delta").get<int>();
        for (const auto& p : doc.at("peels")) {
            PeelRecord r;
            r.straddler.component = p.at("component").get<int>();
            r.straddler.block_a = p.at("block_a").get<BlockIndex>();
            r.straddler.block_b = p.at("block_b").get<BlockIndex>();
            r.straddler.side_a = p.at("side_a").get<VertexSet>();
            r.straddler.side_b = p.at("side_b").get<VertexSet>();
            r.vertex_origin = p.at("vertex_origin").get<std::vector<Vertex>>();
            r.to_a = p.at("to_a").get<VertexSet>();
            t.peels.push_back(std::move(r));
        }
        const auto& term = doc.at("terminal");
        t.terminal = instance_from_json(term.at("instance"));
        if (!term.at("matching").is_null()) t.matching = term.at("matching").get<std::vector<int>>();
        if (!term.at("irreducible").is_null()) t.irreducible = term.at("irreducible").get<bool>();
        if (!term.at("minimally_rgd").is_null()) t.minimally_rgd = term.at("minimally_rgd").get<bool>();
        if (!doc.at("failed_step").is_null()) t.failed_step = doc.at("failed_step").get<int>();
        t.reason = doc.at("reason").get<std::string>();
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed recognition trace: ") + e.what());
    }
}

}  // namespace itr
