#pragma once

#include <iosfwd>
#include <string>

#include "ptts/flow.hpp"

namespace ptts {

// DIMACS-like min-cost flow text format with 1-based node ids:
//
//   c <comment>
//   p min <nodes> <edges>
//   n <id> <supply>
//   a <from> <to> <lower> <upper> <cost>
//
// Nodes without an `n` line have zero supply. Edge order is preserved.
std::string to_dimacs(const FlowNetwork& n);

// Throws std::invalid_argument with the offending line number.
FlowNetwork read_dimacs(std::istream& in);
FlowNetwork parse_dimacs(const std::string& text);

}  // namespace ptts
