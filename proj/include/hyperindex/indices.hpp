#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperindex/bigint.hpp"
#include "hyperindex/hypergraph.hpp"
#include "hyperindex/modring.hpp"

namespace hyperindex {

enum class Method { snf, predicted_coalescence, predicted_cartesian, brute_force };

std::string method_name(Method m);

struct IndexReport {
    int m = 0, n = 0, k = 0;
    std::vector<std::int64_t> invariant_divisors; // d_1 | ... | d_r | m
    int free_rank = 0;                            // n - 1 - r
    BigInt stabilizing_index;                     // m^free_rank * prod d_i
    std::int64_t cyclic_index = 0;                // divides m
    ModuleDecomposition decomposition;            // of {x : In(G)x = 0, x_1 = 0}
    Method method = Method::snf;
};

// Vertex map phi realizing an (m, ell)-coloring: every edge sums to m/ell mod m.
struct ColoringWitness {
    std::int64_t ell = 1;
    std::vector<std::int64_t> phi;
};

struct CyclicResult {
    std::int64_t value;
    ColoringWitness witness;
};

// Full report for a valid connected hypergraph with n >= 2, via SNF of the
// incidence matrix (fills both indices; method = snf).
IndexReport stabilizing_index(const UniformHypergraph& g);

// Largest divisor ell of m admitting an (m, ell)-coloring, with a witness.
CyclicResult cyclic_index(const UniformHypergraph& g);

// True iff w.phi is an (m, w.ell)-coloring of g. Throws DomainError when
// w.ell does not divide m or w.phi has the wrong length.
bool check_coloring(const UniformHypergraph& g, const ColoringWitness& w);

IndexReport predict_coalescence(const IndexReport& r1, const IndexReport& r2);
// Fold of >= 2 block reports: s multiplies, c is the gcd.
IndexReport predict_blocks(std::span<const IndexReport> reports);
IndexReport predict_cartesian(const IndexReport& r1, const IndexReport& r2);
// Cyclic index of an n-fold Cartesian product: gcd of the factor values.
std::int64_t predict_cartesian_n(std::span<const IndexReport> reports);

// Exponent vectors t (t_1 = 0, In(G)t = 0) of all spectral-radius
// eigenvectors; cap as in enumerate_kernel (error carries s(G)).
std::vector<std::vector<std::int64_t>> eigenvector_exponents(const UniformHypergraph& g,
                                                             std::uint64_t cap);

} // namespace hyperindex
