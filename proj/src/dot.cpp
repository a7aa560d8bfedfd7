#include "itr/dot.hpp"

#include <array>
#include <sstream>

namespace itr {

namespace {

constexpr std::array<const char*, 8> kPalette{"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                              "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};

std::string choice_label(const Transversal& t) {
    std::string s = "(";
    for (int i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

}  // namespace

std::string instance_to_dot(const Instance& instance) {
    std::ostringstream out;
    out << "graph instance {\n  node [shape=circle];\n";
    for (BlockIndex i = 0; i < instance.block_count(); ++i) {
        out << "  subgraph cluster_" << i << " {\n    label=\"U" << i << "\";\n";
        for (Vertex v : instance.block(i)) out << "    " << v << ";\n";
        out << "  }\n";
    }
    for (auto [u, v] : instance.graph().edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

std::string rg_to_dot(const ReconfigGraph& rg) {
    std::ostringstream out;
    out << "graph rg {\n  node [shape=box, style=filled];\n";
    const auto& labels = rg.component_labels();
    for (int i = 0; i < rg.size(); ++i) {
        const auto pos = std::lower_bound(labels.begin(), labels.end(), rg.component(i)) - labels.begin();
        out << "  t" << i << " [label=\"" << choice_label(rg.it(i)) << "\", fillcolor=\""
            << kPalette[pos % kPalette.size()] << "\"];\n";
    }
    for (int i = 0; i < rg.size(); ++i)
        for (int j : rg.neighbors(i))
            if (i < j) out << "  t" << i << " -- t" << j << ";\n";
    out << "}\n";
    return out.str();
}

std::string block_forest_to_dot(const BlockForest& forest) {
    std::ostringstream out;
    out << "graph forest {\n";
    for (BlockIndex b : forest.graph.nodes) {
        const bool root = std::binary_search(forest.roots.begin(), forest.roots.end(), b);
        out << "  U" << b << (root ? " [shape=doublecircle];\n" : " [shape=circle];\n");
    }
    for (auto [a, b] : forest.graph.edges) out << "  U" << a << " -- U" << b << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace itr
