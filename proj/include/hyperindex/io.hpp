#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperindex/hypergraph.hpp"
#include "hyperindex/indices.hpp"

namespace hyperindex {

// Parsed .uhg file. Comment lines ('#' in column one) are preserved verbatim
// in reading order; the payload is version line, "m n k" header, k edge lines.
struct UhgDocument {
    int version = 1;
    UniformHypergraph hypergraph;
    std::vector<std::string> comments;
};

// Throws ParseError (with 1-based line number) on malformed input.
UhgDocument parse_uhg(std::string_view text);

// Canonical serialization: no comments, edges sorted, single spaces, trailing
// newline. parse_uhg(serialize_uhg(g)).hypergraph == g for every valid g.
std::string serialize_uhg(const UniformHypergraph& g);

// JSON object with fixed key order m, n, k, invariant_divisors, free_rank,
// stabilizing_index (decimal string), cyclic_index, decomposition, method.
std::string report_to_json(const IndexReport& r);

} // namespace hyperindex
