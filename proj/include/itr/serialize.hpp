#pragma once

// Canonical instance file format:
//
//   {"blocks":[[...],...],"edges":[[u,v],...],"n":<int>}
//
// written on one line with sorted keys, followed by a newline. Edges have u < v
// and are sorted lexicographically; every block is sorted ascending; block order
// is significant. The parser accepts any whitespace, edge orientation and list
// order, but rejects anything that violates the instance invariants.

#include <string>
#include <string_view>

#include "json.hpp"

#include "itr/instance.hpp"

namespace itr {

nlohmann::json instance_to_json(const Instance& instance);

// Byte-exact canonical text, including the trailing newline.
std::string to_canonical_json(const Instance& instance);

// Throws ParseError with a 1-based line number on syntax errors, unknown keys,
// wrong types and instance-invariant violations.
Instance parse_instance(std::string_view text);

// For instances embedded in other documents; errors carry no line number.
Instance instance_from_json(const nlohmann::json& doc);

Instance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace itr
