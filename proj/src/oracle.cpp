#include "hyperindex/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "hyperindex/errors.hpp"
#include "hyperindex/modring.hpp"

namespace hyperindex {

namespace {

template <typename T>
std::vector<T> apply_tensor(const UniformHypergraph& g, const std::vector<T>& x) {
    if (x.size() != static_cast<std::size_t>(g.vertex_count()))
        throw DomainError("tensor_apply: vector length does not match vertex count");
    std::vector<T> y(x.size(), T{});
    for (const Edge& e : g.edges())
        for (std::size_t i = 0; i < e.size(); ++i) {
            T prod{1};
            for (std::size_t j = 0; j < e.size(); ++j)
                if (j != i)
                    prod *= x[e[j] - 1];
            y[e[i] - 1] += prod;
        }
    return y;
}

void require_spectral_input(const UniformHypergraph& g) {
    require_valid(g);
    if (g.vertex_count() < 2)
        throw DomainError("spectral iteration needs at least two vertices");
    if (!is_connected(g))
        throw DomainError("spectral iteration needs a connected hypergraph");
}

} // namespace

std::vector<std::complex<double>> tensor_apply(const UniformHypergraph& g,
                                               const std::vector<std::complex<double>>& x) {
    require_valid(g);
    return apply_tensor(g, x);
}

std::vector<double> tensor_apply(const UniformHypergraph& g, const std::vector<double>& x) {
    require_valid(g);
    return apply_tensor(g, x);
}

SpectralEstimate power_iteration(const UniformHypergraph& g, double tol, int max_iter) {
    require_spectral_input(g);
    if (tol <= 0)
        throw DomainError("power_iteration: tolerance must be positive");
    const int n = g.vertex_count();
    const int m = g.uniformity();
    const double inv_exp = 1.0 / (m - 1);

    std::vector<double> x(n, 1.0);
    double lo = 0.0, hi = 0.0;
    int iter = 0;
    for (;; ++iter) {
        std::vector<double> z = apply_tensor(g, x);
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (int i = 0; i < n; ++i) {
            double ratio = z[i] / std::pow(x[i], m - 1);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi - lo <= tol)
            break;
        if (iter >= max_iter)
            throw ConvergenceError("power_iteration: bracket width " + std::to_string(hi - lo) +
                                   " after " + std::to_string(max_iter) + " iterations");
        // Shifted update (A + I): same eigenvectors, keeps the iteration
        // aperiodic so the bracket closes on bipartite-like inputs too.
        double top = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] = std::pow(z[i] + std::pow(x[i], m - 1), inv_exp);
            top = std::max(top, x[i]);
        }
        for (int i = 0; i < n; ++i)
            x[i] /= top;
    }

    SpectralEstimate est;
    est.rho = std::sqrt(lo * hi);
    est.iterations = iter;
    est.tolerance = tol;
    double top = *std::max_element(x.begin(), x.end());
    for (double& v : x)
        v /= top;
    est.perron = std::move(x);
    std::vector<double> z = apply_tensor(g, est.perron);
    double resid = 0.0;
    for (int i = 0; i < n; ++i)
        resid = std::max(resid, std::abs(z[i] - est.rho * std::pow(est.perron[i], m - 1)));
    est.residual = resid;
    return est;
}

std::vector<EigenvectorCheck> lift_and_check(const UniformHypergraph& g,
                                             const SpectralEstimate& est,
                                             const std::vector<std::vector<std::int64_t>>& exponents) {
    require_spectral_input(g);
    const int n = g.vertex_count();
    const std::int64_t m = g.uniformity();
    if (est.perron.size() != static_cast<std::size_t>(n))
        throw DomainError("lift_and_check: estimate does not match hypergraph");
    ZmMatrix b = incidence_matrix(g);

    std::vector<EigenvectorCheck> checks;
    checks.reserve(exponents.size());
    for (const auto& t : exponents) {
        if (t.size() != static_cast<std::size_t>(n))
            throw DomainError("lift_and_check: exponent vector has wrong length");
        std::vector<std::int64_t> reduced(n);
        for (int i = 0; i < n; ++i)
            reduced[i] = ((t[i] % m) + m) % m;
        if (reduced[0] != 0)
            throw DomainError("lift_and_check: exponent vector must have t_1 = 0");
        for (std::int64_t row : b.apply(reduced))
            if (row != 0)
                throw DomainError("lift_and_check: exponent vector is not in the kernel");

        EigenvectorCheck chk;
        chk.exponents = reduced;
        chk.vector.resize(n);
        for (int i = 0; i < n; ++i)
            chk.vector[i] = std::polar(est.perron[i],
                                       2.0 * std::numbers::pi * static_cast<double>(reduced[i]) /
                                           static_cast<double>(m));
        std::vector<std::complex<double>> z = apply_tensor(g, chk.vector);
        double resid = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> pw{1.0, 0.0};
            for (std::int64_t rep = 0; rep + 1 < m; ++rep)
                pw *= chk.vector[i];
            resid = std::max(resid, std::abs(z[i] - est.rho * pw));
        }
        chk.residual = resid;
        checks.push_back(std::move(chk));
    }
    return checks;
}

namespace {

// Digits of `index` over Z_m, most significant first, into out[offset...].
void decode_odometer(std::uint64_t index, std::int64_t m, std::vector<std::int64_t>& out,
                     std::size_t offset) {
    for (std::size_t pos = out.size(); pos > offset; --pos) {
        out[pos - 1] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(m));
        index /= static_cast<std::uint64_t>(m);
    }
}

bool advance_odometer(std::vector<std::int64_t>& digits, std::int64_t m, std::size_t offset) {
    for (std::size_t pos = digits.size(); pos > offset; --pos) {
        if (++digits[pos - 1] < m)
            return true;
        digits[pos - 1] = 0;
    }
    return false;
}

std::uint64_t checked_cap(const UniformHypergraph& g, int fixed, std::uint64_t cap,
                          const char* what) {
    BigInt space = big_pow(g.uniformity(), g.vertex_count() - fixed);
    if (space > BigInt(cap))
        throw CapExceededError(std::string(what) + ": search space exceeds cap", space);
    return static_cast<std::uint64_t>(space);
}

int clamp_jobs(int jobs, std::uint64_t total) {
    if (jobs < 1)
        throw DomainError("jobs must be at least 1");
    return static_cast<int>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(total, 1)));
}

} // namespace

std::uint64_t brute_stabilizing(const UniformHypergraph& g, std::uint64_t cap, int jobs) {
    require_valid(g);
    if (!is_connected(g))
        throw DomainError("brute_stabilizing: hypergraph is disconnected");
    const std::int64_t m = g.uniformity();
    const int n = g.vertex_count();
    const std::uint64_t total = checked_cap(g, 1, cap, "brute_stabilizing");
    const int threads = clamp_jobs(jobs, total);

    auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::int64_t> x(n, 0); // x[0] pinned to 0
        decode_odometer(begin, m, x, 1);
        std::uint64_t hits = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            bool ok = true;
            for (const Edge& e : g.edges()) {
                std::int64_t sum = 0;
                for (Vertex v : e)
                    sum += x[v - 1];
                if (sum % m != 0) {
                    ok = false;
                    break;
                }
            }
            hits += ok;
            advance_odometer(x, m, 1);
        }
        return hits;
    };

    if (threads == 1)
        return count_range(0, total);
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        std::uint64_t begin = total / threads * t + std::min<std::uint64_t>(t, total % threads);
        std::uint64_t end = begin + total / threads + (static_cast<std::uint64_t>(t) < total % threads);
        pool.emplace_back([&, t, begin, end] { partial[t] = count_range(begin, end); });
    }
    for (std::thread& th : pool)
        th.join();
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::int64_t brute_cyclic(const UniformHypergraph& g, std::uint64_t cap, int jobs) {
    require_valid(g);
    if (!is_connected(g))
        throw DomainError("brute_cyclic: hypergraph is disconnected");
    const std::int64_t m = g.uniformity();
    const int n = g.vertex_count();
    const std::uint64_t total = checked_cap(g, 0, cap, "brute_cyclic");
    const int threads = clamp_jobs(jobs, total);

    auto scan_range = [&](std::uint64_t begin, std::uint64_t end, std::int64_t target,
                          std::atomic<bool>& found) {
        std::vector<std::int64_t> phi(n, 0);
        decode_odometer(begin, m, phi, 0);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            if ((idx & 0xfff) == 0 && found.load(std::memory_order_relaxed))
                return;
            bool ok = true;
            for (const Edge& e : g.edges()) {
                std::int64_t sum = 0;
                for (Vertex v : e)
                    sum += phi[v - 1];
                if (sum % m != target) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                found.store(true, std::memory_order_relaxed);
                return;
            }
            advance_odometer(phi, m, 0);
        }
    };

    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d <= m; ++d)
        if (m % d == 0)
            divisors.push_back(d);
    for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) {
        const std::int64_t ell = *it;
        const std::int64_t target = (m / ell) % m;
        std::atomic<bool> found{false};
        if (threads == 1) {
            scan_range(0, total, target, found);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) {
                std::uint64_t begin =
                    total / threads * t + std::min<std::uint64_t>(t, total % threads);
                std::uint64_t end =
                    begin + total / threads + (static_cast<std::uint64_t>(t) < total % threads);
                pool.emplace_back([&, begin, end] { scan_range(begin, end, target, found); });
            }
            for (std::thread& th : pool)
                th.join();
        }
        if (found.load())
            return ell;
    }
    throw std::logic_error("brute_cyclic: ell = 1 must always admit a coloring");
}

} // namespace hyperindex
