#pragma once

#include <string>
#include <string_view>

#include "extremal/graph.hpp"

namespace extremal {

// graph6 / digraph6 interchange formats (the formats used by nauty's gtools).
//
// graph6:   N(n) followed by the upper triangle x(0,1) x(0,2) x(1,2) x(0,3) ...
//           packed big-endian into 6-bit groups, each group offset by 63.
// digraph6: '&' N(n) followed by the full n*n matrix, row-major.
//
// Decoding rejects non-zero padding bits, so emit(parse(s)) == s for every
// string parse accepts. An optional ">>graph6<<" / ">>digraph6<<" header is
// skipped. Errors are ParseError (with byte offset) or SizeLimitError.

std::string emit_graph6(const Graph& g);
Graph parse_graph6(std::string_view text);

std::string emit_digraph6(const Digraph& d);
Digraph parse_digraph6(std::string_view text);

/// True when `text` (after an optional header) starts with the digraph6 '&'.
bool looks_like_digraph6(std::string_view text);

}  // namespace extremal
