#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperindex/modring.hpp"

namespace hyperindex {

using Vertex = int;
using Edge = std::vector<Vertex>; // m distinct labels, stored sorted ascending

// m-uniform hypergraph on vertices 1..n. Construction canonicalizes the edge
// list (each edge sorted, edges sorted lexicographically) but does not reject
// malformed data; use validate() for diagnostics. Ops that need a valid input
// throw DomainError.
class UniformHypergraph {
public:
    UniformHypergraph(int m, int n, std::vector<Edge> edges);

    int uniformity() const noexcept { return m_; }
    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool operator==(const UniformHypergraph&) const = default;

private:
    int m_, n_;
    std::vector<Edge> edges_;
};

struct ValidationResult {
    bool ok;
    std::string message; // empty when ok
    explicit operator bool() const noexcept { return ok; }
};

ValidationResult validate(const UniformHypergraph& g);
// Throws DomainError with the validation message unless g is valid.
void require_valid(const UniformHypergraph& g);

// True iff the bipartite vertex-edge incidence graph is connected (n >= 1).
bool is_connected(const UniformHypergraph& g);

// k x n 0/1 matrix over Z_m, rows in the stored edge order.
ZmMatrix incidence_matrix(const UniformHypergraph& g);
// Same, but rows follow the given edge list (used for the construction-order
// matrix identities of the composition operations).
ZmMatrix incidence_from_edges(const std::vector<Edge>& edges, int n, Modulus m);

// Coalescence G1(v1) . G2(v2): G1 keeps labels 1..n1, the merged vertex keeps
// label v1, the remaining G2 vertices take n1+1..n1+n2-1 in ascending order.
UniformHypergraph coalesce(const UniformHypergraph& g1, Vertex v1,
                           const UniformHypergraph& g2, Vertex v2);
// Its edges in construction order: G1's edges, then G2's relabeled edges.
std::vector<Edge> coalescence_edges(const UniformHypergraph& g1, Vertex v1,
                                    const UniformHypergraph& g2, Vertex v2);

// Cartesian product on vertex grid (i, j) -> (i-1)*n2 + j.
UniformHypergraph cartesian_product(const UniformHypergraph& g1, const UniformHypergraph& g2);
// Its edges in canonical family order: {u} x E(G2) grouped by u (rows of
// I (x) In(G2)), then E(G1) x {v} grouped by edge (rows of In(G1) (x) I).
std::vector<Edge> cartesian_product_edges(const UniformHypergraph& g1,
                                          const UniformHypergraph& g2);
UniformHypergraph cartesian_product_n(std::span<const UniformHypergraph> factors);

struct Block {
    UniformHypergraph graph;
    std::vector<Vertex> vertex_map; // block label i -> parent label vertex_map[i-1]
};

struct BlockDecomposition {
    std::vector<Block> blocks;        // ordered by smallest parent edge index
    std::vector<Vertex> cut_vertices; // ascending parent labels
};

// Maximal sub-hypergraphs without cut vertices, via biconnected components of
// the bipartite incidence graph. Requires a valid connected input.
BlockDecomposition blocks(const UniformHypergraph& g);

enum class GeneratorKind { single_edge, path_hypertree, random_hypertree, complete, loose_cycle };

struct GeneratorSpec {
    GeneratorKind kind;
    int m = 0;
    int edges = 0;         // path_hypertree, random_hypertree, loose_cycle
    int vertices = 0;      // complete
    std::uint64_t seed = 0; // random_hypertree
};

UniformHypergraph generate(const GeneratorSpec& spec);

UniformHypergraph single_edge(int m);
UniformHypergraph path_hypertree(int m, int edge_count);
UniformHypergraph random_hypertree(int m, int edge_count, std::uint64_t seed = 0);
UniformHypergraph complete_hypergraph(int m, int n);
UniformHypergraph loose_cycle(int m, int edge_count);

} // namespace hyperindex
