#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mrfcut/network.hpp"

namespace mrfcut {

struct ParsedDimacs {
  Network network;
  /// 1-based file id of each usual node, in internal order.
  std::vector<std::int64_t> usual_file_ids;
};

/// Reads the DIMACS max-flow format ("c", "p max", "n <id> s|t", "a <u> <v> <cap>").
/// File ids are 1-based; internally the source becomes 0, the sink n+1 and the
/// remaining ids keep their relative order. Parallel arcs are preserved.
/// Errors are InputError with the offending line number.
ParsedDimacs parse_dimacs_with_ids(std::istream& in);
Network parse_dimacs(std::istream& in);
Network parse_dimacs(std::string_view text);

/// Writes s as id 1, usual node i as i+1 and t as n+2, arcs in stable
/// (from, to) order.
void write_dimacs(const Network& net, std::ostream& out);
std::string write_dimacs(const Network& net);

}  // namespace mrfcut
