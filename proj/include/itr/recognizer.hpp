#pragma once

// Polynomial-time recognition of bad instances: disjoint unions of m copies of
// K_{Δ,Δ} with m blocks of size 2Δ whose RG is disconnected but becomes
// connected after deleting any block. Every accepted instance comes with a
// peel trace that rebuilds it from an elementary instance by gluing.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "itr/instance.hpp"
#include "itr/oracle.hpp"

namespace itr {

// Components of G in components() order with their complete bipartite sides.
// Entries are nullopt for components that are not complete bipartite.
std::vector<std::optional<Bipartition>> component_sides(const Instance& instance);

// G is a disjoint union of |U| copies of K_{Δ,Δ} and every block has size 2Δ.
bool check_shape(const Instance& instance, int delta);

struct SideRef {
    int component = 0;
    int side = 0;  // 0: the A part of complete_bipartite_parts, 1: the B part
    friend bool operator==(const SideRef&, const SideRef&) = default;
};

// For each block, the component sides it fully contains. Throws InvalidArgument
// if some component is not complete bipartite.
using Containment = std::vector<std::vector<SideRef>>;
Containment side_containment(const Instance& instance);

// A matching of blocks to distinct components whose side they contain, covering
// every block (block -> component), found by augmenting paths.
std::optional<std::vector<int>> unique_association(const Containment& containment, int component_count);

// Component K_{A,B} with A ⊆ U_i, B ⊆ U_j, i < j.
struct Straddler {
    int component = 0;
    VertexSet side_a;
    VertexSet side_b;
    BlockIndex block_a = 0;
    BlockIndex block_b = 0;
};

// First straddler scanning components by smallest vertex id (reversed when
// requested). Components that are not complete bipartite are skipped.
std::optional<Straddler> find_straddler(const Instance& instance, bool reverse_scan = false);

// One peel, recorded so that it can be undone exactly.
struct PeelRecord {
    Straddler straddler;
    // Vertex id in the peeled instance -> id before the peel.
    std::vector<Vertex> vertex_origin;
    // Merged-block vertices (peeled ids) that came from block_a; the rest came from block_b.
    VertexSet to_a;
};

struct PeelResult {
    Instance instance;
    PeelRecord record;
};

// Deletes the straddling component and merges the residues of its two blocks
// into one block placed last. Throws PreconditionFailed if the merged block
// would be empty or the straddler does not fit the instance.
PeelResult peel(const Instance& instance, const Straddler& straddler);

// Glues the peeled component back with combine() and restores the original
// vertex ids and block positions.
Instance unpeel(const Instance& peeled, const PeelRecord& record);

// The block/component incidence structure is connected (false for m = 0).
bool is_irreducible(const Instance& instance);

enum class PeelPolicy {
    Eager,       // peel while a straddler exists, match only at the end
    MatchFirst,  // try the block/component matching before every peel
};

struct RecognizeOptions {
    PeelPolicy policy = PeelPolicy::Eager;
    bool reverse_scan = false;
    std::optional<int> delta;  // inferred from the first component when absent
};

struct RecognitionTrace {
    bool general = false;
    int delta = 0;  // 0 when not determined
    std::vector<PeelRecord> peels;
    Instance terminal;  // instance after the last peel
    std::optional<std::vector<int>> matching;
    std::optional<bool> irreducible;
    std::optional<bool> minimally_rgd;  // general recognition only
    int failed_step = 0;                // 0 on YES
    std::string reason;
};

struct Recognition {
    bool yes = false;
    RecognitionTrace trace;
};

Recognition recognize(const Instance& instance, const RecognizeOptions& options = {});

// Any complete bipartite components and block sizes; the terminal candidate is
// decided by the brute-force oracle. Throws EnumerationCapExceeded.
Recognition recognize_general(const Instance& instance, const OracleOptions& oracle = {},
                              const RecognizeOptions& options = {});

// Undoes the peels of a trace, last peel first, starting from the terminal instance.
Instance replay(const RecognitionTrace& trace);

nlohmann::json to_json(const Recognition& recognition);
RecognitionTrace recognition_trace_from_json(const nlohmann::json& doc);

}  // namespace itr
