#pragma once

// Shared test utilities. The checks here are deliberately independent of the
// library's Z_m machinery: the reference Smith normal form runs over the
// integers with exact arithmetic, and the exhaustive solvers walk assignment
// space with plain loops.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "hyperindex/bigint.hpp"
#include "hyperindex/hypergraph.hpp"
#include "hyperindex/modring.hpp"

namespace testutil {

using hyperindex::BigInt;
using hyperindex::Edge;
using hyperindex::UniformHypergraph;
using hyperindex::ZmMatrix;

inline ZmMatrix make_matrix(std::vector<std::vector<std::int64_t>> rows, std::int64_t m) {
    std::size_t nc = rows.empty() ? 0 : rows[0].size();
    ZmMatrix out(rows.size(), nc, hyperindex::Modulus(m));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < nc; ++j)
            out.set(i, j, rows[i][j]);
    return out;
}

// Invariant factors of an integer matrix, exact arithmetic, textbook
// elimination: move a minimal entry to the pivot, reduce its row and column
// by division with remainder, and when the pivot fails to divide some
// remaining entry fold that row in and start over.
inline std::vector<BigInt> integer_invariant_factors(std::vector<std::vector<BigInt>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<BigInt> factors;
    std::size_t top = 0;
    while (top < rows && top < cols) {
        std::size_t pi = top, pj = top;
        bool any = false;
        BigInt best = 0;
        for (std::size_t i = top; i < rows; ++i)
            for (std::size_t j = top; j < cols; ++j) {
                if (a[i][j] == 0)
                    continue;
                BigInt mag = abs(a[i][j]);
                if (!any || mag < best) {
                    any = true;
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (!any)
            break;
        std::swap(a[top], a[pi]);
        for (std::size_t i = 0; i < rows; ++i)
            std::swap(a[i][top], a[i][pj]);

        bool clean = true;
        for (std::size_t i = top + 1; i < rows && clean; ++i) {
            if (a[i][top] == 0)
                continue;
            BigInt q = a[i][top] / a[top][top];
            for (std::size_t j = top; j < cols; ++j)
                a[i][j] -= q * a[top][j];
            if (a[i][top] != 0)
                clean = false; // remainder left, re-pivot on the smaller entry
        }
        if (!clean)
            continue;
        for (std::size_t j = top + 1; j < cols && clean; ++j) {
            if (a[top][j] == 0)
                continue;
            BigInt q = a[top][j] / a[top][top];
            for (std::size_t i = top; i < rows; ++i)
                a[i][j] -= q * a[i][top];
            if (a[top][j] != 0)
                clean = false;
        }
        if (!clean)
            continue;

        bool divides_all = true;
        for (std::size_t i = top + 1; i < rows && divides_all; ++i)
            for (std::size_t j = top + 1; j < cols; ++j)
                if (a[i][j] % a[top][top] != 0) {
                    for (std::size_t jj = top; jj < cols; ++jj)
                        a[top][jj] += a[i][jj];
                    divides_all = false;
                    break;
                }
        if (!divides_all)
            continue;

        factors.push_back(abs(a[top][top]));
        ++top;
    }
    return factors;
}

struct ReferenceSnf {
    std::vector<std::int64_t> divisors;
    std::size_t zero_rank_deficit;
};

// Divisors of the Z_m Smith form, derived from the integer invariant factors:
// each factor e contributes gcd(e, m); entries that hit m are zero in Z_m.
inline ReferenceSnf reference_snf(const ZmMatrix& b) {
    const std::int64_t m = b.modulus().value();
    std::vector<std::vector<BigInt>> a(b.rows(), std::vector<BigInt>(b.cols()));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            a[i][j] = b(i, j);
    ReferenceSnf out;
    out.zero_rank_deficit = b.cols();
    for (const BigInt& e : integer_invariant_factors(std::move(a))) {
        BigInt g = gcd(e, BigInt(m));
        if (g < m) {
            out.divisors.push_back(static_cast<std::int64_t>(g));
            --out.zero_rank_deficit;
        }
    }
    return out;
}

// Counts x in Z_m^cols with Bx = 0 and x_1 = 0, by direct enumeration.
inline std::uint64_t exhaustive_pinned_kernel_count(const ZmMatrix& b) {
    const std::int64_t m = b.modulus().value();
    const std::size_t n = b.cols();
    std::vector<std::int64_t> x(n, 0);
    std::uint64_t count = 0;
    while (true) {
        bool zero = true;
        for (std::size_t i = 0; i < b.rows() && zero; ++i) {
            std::int64_t sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                sum += b(i, j) * x[j];
            zero = sum % m == 0;
        }
        count += zero;
        std::size_t pos = n;
        while (pos > 1) {
            if (++x[pos - 1] < m)
                break;
            x[pos - 1] = 0;
            --pos;
        }
        if (pos == 1)
            break;
    }
    return count;
}

// Any x with Bx = rhs over Z_m, by direct enumeration (m^cols small).
inline std::optional<std::vector<std::int64_t>> exhaustive_solve(
    const ZmMatrix& b, const std::vector<std::int64_t>& rhs) {
    const std::int64_t m = b.modulus().value();
    const std::size_t n = b.cols();
    std::vector<std::int64_t> x(n, 0);
    while (true) {
        bool match = true;
        for (std::size_t i = 0; i < b.rows() && match; ++i) {
            std::int64_t sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                sum += b(i, j) * x[j];
            match = ((sum - rhs[i]) % m + m) % m == 0;
        }
        if (match)
            return x;
        std::size_t pos = n;
        while (pos > 0) {
            if (++x[pos - 1] < m)
                break;
            x[pos - 1] = 0;
            --pos;
        }
        if (pos == 0)
            return std::nullopt;
    }
}

// Two-coloring check for 2-uniform graphs (BFS).
inline bool is_bipartite(const UniformHypergraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> adj(n + 1);
    for (const Edge& e : g.edges()) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    std::vector<int> color(n + 1, -1);
    for (int start = 1; start <= n; ++start) {
        if (color[start] != -1)
            continue;
        color[start] = 0;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Small connected hypergraph drawn from the generator zoo, optionally grown
// by one coalescence. Deterministic in (m, seed).
inline UniformHypergraph sample_connected(int m, std::mt19937_64& rng) {
    auto base = [&](int which) {
        switch (which) {
        case 0:
            return hyperindex::single_edge(m);
        case 1:
            return hyperindex::path_hypertree(m, 1 + static_cast<int>(rng() % 3));
        case 2:
            return hyperindex::random_hypertree(m, 1 + static_cast<int>(rng() % 3), rng());
        case 3:
            // s(m-1) must reach 3, so 2-uniform cycles start at three edges.
            return hyperindex::loose_cycle(m, (m == 2 ? 3 : 2) + static_cast<int>(rng() % 2));
        default:
            return hyperindex::complete_hypergraph(m, m + 1);
        }
    };
    UniformHypergraph g = base(static_cast<int>(rng() % 5));
    if (rng() % 2 == 0) {
        UniformHypergraph h = base(static_cast<int>(rng() % 3));
        int v1 = 1 + static_cast<int>(rng() % g.vertex_count());
        int v2 = 1 + static_cast<int>(rng() % h.vertex_count());
        return hyperindex::coalesce(g, v1, h, v2);
    }
    return g;
}

} // namespace testutil
