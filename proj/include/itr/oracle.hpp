#pragma once

// Exhaustive ground truth: independent transversals (ITs), the reconfiguration
// graph RG(G, U) and the minimality predicates, all by enumeration.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "itr/instance.hpp"

namespace itr {

// One chosen vertex per block, indexed by block.
struct Transversal {
    std::vector<Vertex> choice;

    int size() const noexcept { return static_cast<int>(choice.size()); }
    Vertex operator[](BlockIndex i) const { return choice[i]; }
    friend auto operator<=>(const Transversal&, const Transversal&) = default;
};

struct OracleOptions {
    static constexpr std::uint64_t kDefaultCap = 10'000'000;
    // Enumeration refuses instances whose product of block sizes exceeds this.
    std::uint64_t cap = kDefaultCap;
};

// Product of block sizes, saturating at UINT64_MAX.
std::uint64_t transversal_space_size(const Instance& instance);

// Throws InvalidArgument unless choice[i] ∈ U_i for every block.
void require_transversal(const Instance& instance, const Transversal& t);

bool is_independent(const Instance& instance, const Transversal& t);

// All ITs in lexicographic order of their choice vectors. The empty instance
// has exactly one IT, the empty transversal.
std::vector<Transversal> enumerate_its(const Instance& instance, const OracleOptions& options = {});

class ReconfigGraph {
public:
    ReconfigGraph() = default;
    ReconfigGraph(std::vector<Transversal> its, std::vector<std::vector<int>> adjacency);

    int size() const noexcept { return static_cast<int>(its_.size()); }
    const std::vector<Transversal>& its() const noexcept { return its_; }
    const Transversal& it(int index) const { return its_[index]; }
    const std::vector<int>& neighbors(int index) const { return adjacency_[index]; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    // Component label of an IT: the smallest IT index in its component.
    int component(int index) const { return component_[index]; }
    int component_count() const noexcept { return static_cast<int>(labels_.size()); }
    // Distinct labels, ascending.
    const std::vector<int>& component_labels() const noexcept { return labels_; }
    std::vector<int> members(int label) const;

    // Index of `t` if it is an IT of the instance.
    std::optional<int> find(const Transversal& t) const;

private:
    std::vector<Transversal> its_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> component_;
    std::vector<int> labels_;
    std::size_t edge_count_ = 0;
};

ReconfigGraph build_rg(const Instance& instance, const OracleOptions& options = {});

enum class RgStatus { Empty, Connected, Disconnected };

const char* to_string(RgStatus status);

RgStatus rg_status(const ReconfigGraph& rg);
RgStatus rg_status(const Instance& instance, const OracleOptions& options = {});

// Status of RG(G - U_i, U - {U_i}).
RgStatus status_without_block(const Instance& instance, BlockIndex removed, const OracleOptions& options = {});

// RG nonempty and disconnected, and every single-block deletion has status Connected.
bool is_minimally_rgd(const Instance& instance, const OracleOptions& options = {});

// No IT, and every single-block deletion has status Connected.
bool is_minimally_nit(const Instance& instance, const OracleOptions& options = {});

// Throws InvalidArgument on out-of-range indices.
bool same_component(const ReconfigGraph& rg, int s, int t);

}  // namespace itr
