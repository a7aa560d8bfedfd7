#pragma once

// Graphviz renderings of instances, reconfiguration graphs and block forests.

#include <string>

#include "itr/imc.hpp"
#include "itr/instance.hpp"
#include "itr/oracle.hpp"

namespace itr {

// One cluster per block.
std::string instance_to_dot(const Instance& instance);

// IT nodes labelled by their choice vectors, filled by component.
std::string rg_to_dot(const ReconfigGraph& rg);

std::string block_forest_to_dot(const BlockForest& forest);

}  // namespace itr
