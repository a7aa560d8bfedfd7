#pragma once

// Builders for non-reconfigurable instances: elementary instances, the
// gluing construction, iterated K_{Δ,Δ} gluing, and a second IT of an
// elementary instance lying outside the component of the all-A ITs.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "json.hpp"

#include "itr/instance.hpp"
#include "itr/oracle.hpp"

namespace itr {

// Component K_{A,B}; A is forced into the block with the same index as the part.
struct PartSpec {
    int a_size = 1;
    int b_size = 1;
    std::vector<BlockIndex> b_blocks;  // block of each B vertex, b_blocks.size() == b_size
};

struct ElementarySpec {
    std::vector<PartSpec> parts;
};

// Which component side each block contains. `a` ⊆ U_i for entry i.
struct ComponentSides {
    int component = 0;  // index into components(graph)
    VertexSet a;
    VertexSet b;
};

using Association = std::vector<ComponentSides>;

// Part i occupies consecutive vertex ids: its A side, then its B side.
// With verify, every single-block deletion must leave a connected RG
// (VerificationFailed otherwise).
Instance build_elementary(const ElementarySpec& spec, bool verify = false, const OracleOptions& options = {});

// The association induced by the vertex layout of build_elementary.
Association elementary_association(const ElementarySpec& spec);

// K_{a,b} with its standard bipartition: block 0 = {0..a-1}, block 1 = {a..a+b-1}.
Instance standard_bipartite(int a, int b);

// K_{a,b} as a single block, with the A side first.
Instance single_block_bipartite(int a, int b);

// Each vertex of the donor block mapped to a block of the recipient instance.
struct Distribution {
    std::map<Vertex, BlockIndex> target;
};

// Disjoint union of g and h; h's vertices are shifted by |V(g)|. Blocks: g's
// blocks without the donor (order kept), then h's blocks, each augmented with
// the donor vertices distributed to it. With verify, checks that h is minimally
// NIT and RG(g) is disconnected beforehand, and that the result's RG is
// disconnected afterwards.
Instance combine(const Instance& g, BlockIndex donor_block, const Instance& h, const Distribution& dist,
                 bool verify = false, const OracleOptions& options = {});

// Donor block split for one gluing of (K_{Δ,Δ}, {A, B}): `to_a` receives
// exactly Δ donor vertices, the rest of the donor block goes to B.
struct SplitChoice {
    BlockIndex donor_block = 0;
    VertexSet to_a;
};

// Starts from the elementary instance of `base` (all parts K_{Δ,Δ}, all blocks
// of size 2Δ) and glues one K_{Δ,Δ} per choice. With verify, the base is
// checked to be elementary and the result to be minimally RGD.
Instance generate_bad_instance(int delta, const ElementarySpec& base, std::span<const SplitChoice> choices,
                               bool verify = false, const OracleOptions& options = {});

// Enough to replay a generated instance.
struct ConstructionTrace {
    std::uint64_t seed = 0;
    int delta = 1;
    ElementarySpec base;
    std::vector<SplitChoice> steps;
};

nlohmann::json to_json(const ConstructionTrace& trace);
ConstructionTrace construction_trace_from_json(const nlohmann::json& doc);
Instance replay(const ConstructionTrace& trace, bool verify = false, const OracleOptions& options = {});

// Random elementary spec over K_{Δ,Δ} parts with every block of size 2Δ,
// resampled until the oracle accepts it. Throws VerificationFailed after
// `attempts` rejections.
ElementarySpec random_kdd_elementary_spec(int delta, int blocks, std::mt19937_64& rng, int attempts = 1000,
                                          const OracleOptions& options = {});

// Uniform donor block and uniform balanced split for each iteration.
std::vector<SplitChoice> random_split_choices(int delta, const ElementarySpec& base, int iterations,
                                              std::mt19937_64& rng);

struct GeneratedInstance {
    Instance instance;
    ConstructionTrace trace;
};

GeneratedInstance sample_bad_instance(int delta, int base_blocks, int iterations, std::uint64_t seed,
                                      bool verify = false, const OracleOptions& options = {});

// Throws InvalidArgument unless `association` names, for every block i, a
// distinct complete bipartite component whose side `a` lies in U_i.
void require_association(const Instance& instance, const Association& association);

// Smallest vertex of every A side.
Transversal all_a_transversal(const Instance& instance, const Association& association);

// Peels blocks whose remainder is exactly their A side, then picks from
// U_i - A_i in the surviving blocks. Choices take the smallest vertex id.
Transversal second_component_it(const Instance& instance, const Association& association);

}  // namespace itr
