#pragma once

// Executable certificates for disconnected reconfiguration graphs: an extremal
// pair of ITs from two RG components, the feasible 3-tuple (R, S, T) grown from
// it, checks that the tuple is an induced matching configuration (IMC), and a
// search for a vertex u with N(u) inside each block.
//
// Everything here is exhaustive and meant for small instances; the
// enumeration cap of OracleOptions applies throughout.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "itr/instance.hpp"
#include "itr/oracle.hpp"

namespace itr {

struct FeasibleTuple {
    VertexSet r;
    Transversal s;
    Transversal t;
    int c0 = 0;  // RG component label of s
    int c1 = 0;  // RG component label of t
};

struct ExtremalPair {
    ReconfigGraph rg;
    Transversal s;
    Transversal t;
    int c0 = 0;
    int c1 = 0;
    int shared_blocks = 0;  // |I(S ∩ T)|
};

// S and T from the two components with the smallest labels, maximizing the
// number of blocks on which they agree; ties go to the lexicographically
// first pair. Throws PreconditionFailed unless the RG is disconnected.
ExtremalPair extremal_pair(const Instance& instance, const OracleOptions& options = {});

// Number of blocks on which two transversals agree.
int agreement(const Transversal& s, const Transversal& t);

struct GrowStep {
    Vertex x = -1;                               // undominated vertex handled in this iteration
    std::vector<std::pair<BlockIndex, Vertex>> q;  // chosen IT of the agreement blocks
    VertexSet added;                             // {x} ∪ (Q ∩ N(x))
};

struct GrowResult {
    FeasibleTuple tuple;
    std::vector<GrowStep> steps;
};

// Grows R from S △ T until R totally dominates the blocks it meets. With
// check_each_step, feasibility is re-checked after every iteration and a
// violation throws InternalError. Throws InternalError if no admissible Q exists.
GrowResult grow(const Instance& instance, const ExtremalPair& pair, const OracleOptions& options = {},
                bool check_each_step = true);

struct FeasibilityReport {
    bool extremal_transversals = false;  // (i)
    bool covers_difference = false;      // (ii)
    bool star_forest = false;            // (iii)
    bool block_forest = false;           // (iv)

    bool all() const { return extremal_transversals && covers_difference && star_forest && block_forest; }
};

FeasibilityReport check_feasible(const Instance& instance, const ReconfigGraph& rg, const FeasibleTuple& tuple);
FeasibilityReport check_feasible(const Instance& instance, const FeasibleTuple& tuple, const OracleOptions& options = {});

struct Star {
    Vertex center = -1;
    VertexSet leaves;
};

// Each vertex of R - (S ∪ T) with its neighbours in R ∩ S ∩ T.
std::vector<Star> stars(const Instance& instance, const FeasibleTuple& tuple);

struct BlockForest {
    BlockGraph graph;                // block graph of R - (S - T)
    std::vector<BlockIndex> roots;   // I(S △ T)
    std::vector<BlockIndex> parent;  // per block; -1 for roots and blocks outside I(R)
};

BlockForest block_forest(const Instance& instance, const FeasibleTuple& tuple);

struct ImcReport {
    FeasibilityReport feasible;
    bool index_set_full = false;       // I(R) = [m]
    bool covers_transversals = false;  // S ∪ T ⊆ R
    bool induced_matching = false;     // G[R] has maximum degree at most 1
    bool is_imc = false;

    bool difference_has_no_isolated = false;    // G[S △ T] has no isolated vertex
    bool touched_components_meet_r = false;     // vertices of blocks in I(R) lie in components meeting R
    bool outside_agreement_avoids_r = false;    // (S ∩ T) - R lies in components avoiding R
    bool sub_instance_disconnected = false;     // RG of the blocks in I(R) is disconnected
    bool difference_cycles = false;             // block graph of S △ T is 2-regular
    bool unique_r_neighbor = false;             // every vertex has exactly one neighbour in R
    bool matched_pairs_cross = false;           // s–t edges: N(s) ⊆ block(t), N(t) ⊆ block(s)
    bool matched_pairs_cross_between_blocks = false;  // the same, only for s, t in different blocks
    bool center_neighbors_descend = false;      // N(w) lies in w-descendant blocks

    bool all_claims() const {
        return difference_has_no_isolated && touched_components_meet_r && outside_agreement_avoids_r &&
               sub_instance_disconnected && difference_cycles && unique_r_neighbor && matched_pairs_cross &&
               center_neighbors_descend;
    }
};

ImcReport check_imc(const Instance& instance, const ReconfigGraph& rg, const FeasibleTuple& tuple,
                    const OracleOptions& options = {});

// (a) minimally RGD, (b) every component complete bipartite, (c) as many
// components as blocks.
bool satisfies_general_conditions(const Instance& instance, const OracleOptions& options = {});

struct Witness {
    BlockIndex block = 0;
    Vertex vertex = -1;   // N(vertex) ⊆ U_block
    int component = 0;    // component of `vertex` in components() order
    VertexSet side;       // N(vertex): a full side of that component
    int surgeries = 0;    // tuple rewrites needed before the witness appeared
    int attempt = 0;      // index of the extremal pair used, in extremal_pairs() order
};

// Every pair (S, T) from two distinct RG components (c0, c1), c0 != c1 in both
// orders, that maximizes the agreement between those two components. Ordered
// by (c0, c1) and then lexicographically; extremal_pair() returns the first.
std::vector<FeasibleTuple> extremal_pairs(const ReconfigGraph& rg);

struct WitnessSearch {
    std::vector<std::optional<Witness>> witnesses;  // per block
    std::vector<std::string> failures;              // per block; why the walk got stuck, empty when found

    bool complete() const;
};

// For every block, a vertex whose neighbourhood lies inside it, found by
// walking the IMC's block forest and rewriting the tuple along forest paths.
// A walk that gets stuck moves on to the next extremal pair; blocks for which
// every pair gets stuck are reported, not thrown. Requires
// satisfies_general_conditions.
WitnessSearch block_side_witnesses(const Instance& instance, const OracleOptions& options = {});

struct Certificate {
    ExtremalPair pair;
    GrowResult grown;
    ImcReport report;
    std::optional<WitnessSearch> witnesses;
    std::string witness_note;
};

// Extremal pair, grown tuple and its report; witnesses only when the general
// conditions hold.
Certificate certify(const Instance& instance, const OracleOptions& options = {});

nlohmann::json to_json(const Certificate& certificate, const Instance& instance);

}  // namespace itr
