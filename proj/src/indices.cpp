#include "hyperindex/indices.hpp"

#include <algorithm>
#include <numeric>

#include "hyperindex/errors.hpp"

namespace hyperindex {

std::string method_name(Method m) {
    switch (m) {
    case Method::snf:
        return "snf";
    case Method::predicted_coalescence:
        return "predicted_coalescence";
    case Method::predicted_cartesian:
        return "predicted_cartesian";
    case Method::brute_force:
        return "brute_force";
    }
    return "unknown";
}

namespace {

void require_connected_nontrivial(const UniformHypergraph& g) {
    require_valid(g);
    if (g.vertex_count() < 2)
        throw DomainError("index computation needs at least two vertices");
    if (!is_connected(g))
        throw DomainError("index computation needs a connected hypergraph");
}

std::vector<std::int64_t> divisors_descending(std::int64_t m) {
    std::vector<std::int64_t> divs;
    for (std::int64_t d = 1; d * d <= m; ++d)
        if (m % d == 0) {
            divs.push_back(d);
            if (d != m / d)
                divs.push_back(m / d);
        }
    std::sort(divs.rbegin(), divs.rend());
    return divs;
}

// Largest divisor ell of m with In(G)x = (m/ell) * 1 solvable, plus a witness.
CyclicResult cyclic_scan(const UniformHypergraph& g, const SmithDecomposition& dec,
                         const ZmMatrix& b) {
    const std::int64_t m = g.uniformity();
    for (std::int64_t ell : divisors_descending(m)) {
        std::vector<std::int64_t> rhs(b.rows(), (m / ell) % m);
        if (auto x = solve_linear(dec, b, rhs))
            return {ell, {ell, std::move(*x)}};
    }
    throw std::logic_error("cyclic_scan: ell = 1 must always be solvable");
}

IndexReport build_report(int m, int n, int k, std::vector<std::int64_t> divisors,
                         std::int64_t cyclic, Method method) {
    IndexReport r;
    r.m = m;
    r.n = n;
    r.k = k;
    r.invariant_divisors = std::move(divisors);
    const int rank = static_cast<int>(r.invariant_divisors.size());
    if (rank < 1 || rank > n - 1)
        throw std::logic_error("index report: rank outside [1, n-1]");
    r.free_rank = n - 1 - rank;
    r.stabilizing_index = big_pow(m, r.free_rank);
    for (std::int64_t d : r.invariant_divisors) {
        r.stabilizing_index *= d;
        if (d != 1)
            r.decomposition.cyclic_orders.push_back(d);
    }
    r.decomposition.free_rank = static_cast<std::size_t>(r.free_rank);
    r.cyclic_index = cyclic;
    if (cyclic < 1 || m % cyclic != 0)
        throw std::logic_error("index report: cyclic index must divide m");
    r.method = method;
    return r;
}

} // namespace

IndexReport stabilizing_index(const UniformHypergraph& g) {
    require_connected_nontrivial(g);
    ZmMatrix b = incidence_matrix(g);
    SmithDecomposition dec = snf(b);
    CyclicResult c = cyclic_scan(g, dec, b);
    return build_report(g.uniformity(), g.vertex_count(), g.edge_count(), dec.divisors,
                        c.value, Method::snf);
}

CyclicResult cyclic_index(const UniformHypergraph& g) {
    require_connected_nontrivial(g);
    ZmMatrix b = incidence_matrix(g);
    return cyclic_scan(g, snf(b), b);
}

bool check_coloring(const UniformHypergraph& g, const ColoringWitness& w) {
    require_valid(g);
    const std::int64_t m = g.uniformity();
    if (w.ell < 1 || m % w.ell != 0)
        throw DomainError("check_coloring: ell must divide the uniformity");
    if (w.phi.size() != static_cast<std::size_t>(g.vertex_count()))
        throw DomainError("check_coloring: phi length does not match vertex count");
    const std::int64_t target = (m / w.ell) % m;
    for (const Edge& e : g.edges()) {
        std::int64_t sum = 0;
        for (Vertex v : e)
            sum += ((w.phi[v - 1] % m) + m) % m;
        if (sum % m != target)
            return false;
    }
    return true;
}

namespace {

void require_same_modulus(const IndexReport& a, const IndexReport& b, const char* op) {
    if (a.m != b.m)
        throw DomainError(std::string(op) + ": mismatched uniformities");
}

void check_prediction_consistency(const IndexReport& r) {
    BigInt recomputed = big_pow(r.m, r.free_rank);
    for (std::int64_t d : r.invariant_divisors)
        recomputed *= d;
    if (recomputed != r.stabilizing_index)
        throw std::logic_error("prediction: divisors inconsistent with stabilizing index");
}

} // namespace

IndexReport predict_coalescence(const IndexReport& r1, const IndexReport& r2) {
    require_same_modulus(r1, r2, "predict_coalescence");
    std::vector<std::int64_t> merged = r1.invariant_divisors;
    merged.insert(merged.end(), r2.invariant_divisors.begin(), r2.invariant_divisors.end());
    IndexReport r = build_report(r1.m, r1.n + r2.n - 1, r1.k + r2.k,
                                 normalize_divisor_chain(std::move(merged), r1.m),
                                 std::gcd(r1.cyclic_index, r2.cyclic_index),
                                 Method::predicted_coalescence);
    if (r.stabilizing_index != r1.stabilizing_index * r2.stabilizing_index)
        throw std::logic_error("predict_coalescence: index product mismatch");
    check_prediction_consistency(r);
    return r;
}

IndexReport predict_blocks(std::span<const IndexReport> reports) {
    if (reports.size() < 2)
        throw DomainError("predict_blocks: need at least two block reports");
    IndexReport acc = reports[0];
    for (std::size_t i = 1; i < reports.size(); ++i)
        acc = predict_coalescence(acc, reports[i]);
    return acc;
}

IndexReport predict_cartesian(const IndexReport& r1, const IndexReport& r2) {
    require_same_modulus(r1, r2, "predict_cartesian");
    const std::int64_t m = r1.m;
    const int rank1 = static_cast<int>(r1.invariant_divisors.size());
    const int rank2 = static_cast<int>(r2.invariant_divisors.size());
    const int free1 = r1.n - rank1, free2 = r2.n - rank2; // kernel ranks, >= 1

    // Extended divisor lists pad the rank deficit with m (a zero row imposes
    // no constraint); each kernel cell (i, j) contributes Z_gcd(D_i, D_j).
    auto extended = [m](const IndexReport& r, int size) {
        std::vector<std::int64_t> d = r.invariant_divisors;
        d.resize(size, m);
        return d;
    };
    std::vector<std::int64_t> d1 = extended(r1, r1.n), d2 = extended(r2, r2.n);
    std::vector<std::int64_t> cells;
    cells.reserve(static_cast<std::size_t>(r1.n) * r2.n);
    for (std::int64_t a : d1)
        for (std::int64_t b : d2)
            cells.push_back(std::gcd(a, b));

    IndexReport r = build_report(r1.m, r1.n * r2.n, r1.n * r2.k + r1.k * r2.n,
                                 normalize_divisor_chain(std::move(cells), m),
                                 std::gcd(r1.cyclic_index, r2.cyclic_index),
                                 Method::predicted_cartesian);

    // Closed form: m^{(n1-r1)(n2-r2)-1} * prod gcd(d_i, d_j) * prod d_i^{n2-r2}
    // * prod d_j^{n1-r1}; must agree with the normalized divisor chain.
    BigInt closed = big_pow(m, static_cast<std::int64_t>(free1) * free2 - 1);
    for (std::int64_t a : r1.invariant_divisors)
        for (std::int64_t b : r2.invariant_divisors)
            closed *= std::gcd(a, b);
    for (std::int64_t a : r1.invariant_divisors)
        closed *= big_pow(a, free2);
    for (std::int64_t b : r2.invariant_divisors)
        closed *= big_pow(b, free1);
    if (closed != r.stabilizing_index)
        throw std::logic_error("predict_cartesian: closed form disagrees with divisor chain");
    check_prediction_consistency(r);
    return r;
}

std::int64_t predict_cartesian_n(std::span<const IndexReport> reports) {
    if (reports.empty())
        throw DomainError("predict_cartesian_n: no factor reports");
    std::int64_t c = 0;
    for (const IndexReport& r : reports) {
        if (r.m != reports[0].m)
            throw DomainError("predict_cartesian_n: mismatched uniformities");
        c = std::gcd(c, r.cyclic_index);
    }
    return c;
}

std::vector<std::vector<std::int64_t>> eigenvector_exponents(const UniformHypergraph& g,
                                                             std::uint64_t cap) {
    require_connected_nontrivial(g);
    return enumerate_kernel(incidence_matrix(g), cap);
}

} // namespace hyperindex
