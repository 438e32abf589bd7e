#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hyperindex/hypergraph.hpp"

namespace hyperindex {

// Output of the spectral-radius power iteration. perron is positive and
// sup-normalized (max entry 1); residual = max_i |(A x^{m-1})_i - rho x_i^{m-1}|
// is at most the tolerance the iteration was run with.
struct SpectralEstimate {
    double rho = 0.0;
    std::vector<double> perron;
    int iterations = 0;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct EigenvectorCheck {
    std::vector<std::int64_t> exponents;
    std::vector<std::complex<double>> vector;
    double residual = 0.0;
};

// (A x^{m-1})_i = sum over edges e containing i of prod_{j in e, j != i} x_j.
std::vector<std::complex<double>> tensor_apply(const UniformHypergraph& g,
                                               const std::vector<std::complex<double>>& x);
std::vector<double> tensor_apply(const UniformHypergraph& g, const std::vector<double>& x);

// Collatz-Wielandt bracket iteration for the spectral radius of a valid
// connected hypergraph with n >= 2. Runs until max_i - min_i of the ratios
// (A x^{m-1})_i / x_i^{m-1} is <= tol; rho is the geometric midpoint of the
// final bracket. Throws ConvergenceError when max_iter is exhausted.
SpectralEstimate power_iteration(const UniformHypergraph& g, double tol = 1e-10,
                                 int max_iter = 100000);

// Lift the Perron vector by phases exp(2*pi*i*t_j/m) for each exponent vector
// t and report the eigen-equation residual of each lifted vector. Exponent
// vectors must satisfy t_1 = 0 and In(G)t = 0.
std::vector<EigenvectorCheck> lift_and_check(const UniformHypergraph& g,
                                             const SpectralEstimate& est,
                                             const std::vector<std::vector<std::int64_t>>& exponents);

// |{x in Z_m^n : In(G)x = 0, x_1 = 0}| by exhaustive scan of the m^{n-1}
// assignments (jobs > 1 splits the range). Throws CapExceededError when
// m^{n-1} > cap.
std::uint64_t brute_stabilizing(const UniformHypergraph& g, std::uint64_t cap = 1000000,
                                int jobs = 1);

// Largest divisor ell of m with an (m, ell)-coloring, by exhaustive scan of
// the m^n vertex maps per candidate. Throws CapExceededError when m^n > cap.
std::int64_t brute_cyclic(const UniformHypergraph& g, std::uint64_t cap = 1000000,
                          int jobs = 1);

} // namespace hyperindex
