#include "hyperindex/modring.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace hyperindex {

namespace {

constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

// Extended gcd: returns (g, u, v) with u*a + v*b = g = gcd(a, b), a, b >= 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> xgcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_u = 1, u = 0;
    std::int64_t old_v = 0, v = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_u = std::exchange(u, old_u - q * u);
        old_v = std::exchange(v, old_v - q * v);
    }
    return {old_r, old_u, old_v};
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

// Inverse of a mod m; requires gcd(a, m) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    auto [g, u, v] = xgcd(mod_reduce(a, m), m);
    if (g != 1)
        throw std::logic_error("mod_inverse: argument is not a unit");
    (void)v;
    return mod_reduce(u, m);
}

// Unit u with u*a = gcd(a, m) (mod m), for a in [1, m). Every residue is a
// unit multiple of its gcd class; the unit is found by lifting the inverse of
// a/g from Z_{m/g} (the reduction map is surjective on units).
std::int64_t unit_scaling_to_gcd(std::int64_t a, std::int64_t m) {
    std::int64_t g = std::gcd(a, m);
    std::int64_t mp = m / g;
    std::int64_t u0 = mp == 1 ? 0 : mod_inverse((a / g) % mp, mp);
    for (std::int64_t k = 0; k <= g; ++k) {
        std::int64_t u = u0 + k * mp;
        if (u > 0 && std::gcd(u % m, m) == 1)
            return u % m;
    }
    throw std::logic_error("unit_scaling_to_gcd: no unit lift found");
}

} // namespace

Modulus::Modulus(std::int64_t value) : value_(value) {
    if (value < 2)
        throw DomainError("modulus must be at least 2");
    if (value > kMaxModulus)
        throw DomainError("modulus too large for int64 entry arithmetic");
}

ZmMatrix::ZmMatrix(std::size_t rows, std::size_t cols, Modulus m)
    : rows_(rows), cols_(cols), m_(m), data_(rows * cols, 0) {}

ZmMatrix ZmMatrix::identity(std::size_t n, Modulus m) {
    ZmMatrix eye(n, n, m);
    for (std::size_t i = 0; i < n; ++i)
        eye.data_[i * n + i] = 1;
    return eye;
}

ZmMatrix ZmMatrix::kronecker(const ZmMatrix& a, const ZmMatrix& b) {
    if (!(a.modulus() == b.modulus()))
        throw DomainError("kronecker: mismatched moduli");
    const std::int64_t m = a.modulus().value();
    ZmMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.modulus());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            std::int64_t av = a(i1, j1);
            if (av == 0)
                continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    out.data_[(i1 * b.rows() + i2) * out.cols_ + (j1 * b.cols() + j2)] =
                        av * b(i2, j2) % m;
        }
    return out;
}

void ZmMatrix::set(std::size_t i, std::size_t j, std::int64_t v) {
    data_[i * cols_ + j] = mod_reduce(v, m_.value());
}

ZmMatrix ZmMatrix::multiply(const ZmMatrix& rhs) const {
    if (cols_ != rhs.rows_ || !(m_ == rhs.m_))
        throw DomainError("multiply: incompatible shapes or moduli");
    const std::int64_t m = m_.value();
    ZmMatrix out(rows_, rhs.cols_, m_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t l = 0; l < cols_; ++l) {
            std::int64_t a = data_[i * cols_ + l];
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                std::int64_t& cell = out.data_[i * rhs.cols_ + j];
                cell = (cell + a * rhs.data_[l * rhs.cols_ + j]) % m;
            }
        }
    return out;
}

std::vector<std::int64_t> ZmMatrix::apply(const std::vector<std::int64_t>& x) const {
    if (x.size() != cols_)
        throw DomainError("apply: vector length does not match column count");
    const std::int64_t m = m_.value();
    std::vector<std::int64_t> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            acc = (acc + data_[i * cols_ + j] * mod_reduce(x[j], m)) % m;
        y[i] = acc;
    }
    return y;
}

ZmMatrix SmithDecomposition::diagonal(std::size_t rows, std::size_t cols) const {
    ZmMatrix d(rows, cols, p.modulus());
    for (std::size_t i = 0; i < divisors.size(); ++i)
        d.set(i, i, divisors[i]);
    return d;
}

// Elementary row/column operations applied to the working matrix and mirrored
// into the accumulated transforms, keeping P * B * Q = A invariant throughout.
struct SnfWorkspace {
    ZmMatrix a, p, q;
    std::int64_t m;
    std::int64_t det_p = 1, det_q = 1;

    explicit SnfWorkspace(const ZmMatrix& b)
        : a(b),
          p(ZmMatrix::identity(b.rows(), b.modulus())),
          q(ZmMatrix::identity(b.cols(), b.modulus())),
          m(b.modulus().value()) {}

    std::int64_t at(std::size_t i, std::size_t j) const { return a(i, j); }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t c = 0; c < a.cols(); ++c)
            std::swap(a.data_[i * a.cols() + c], a.data_[j * a.cols() + c]);
        for (std::size_t c = 0; c < p.cols(); ++c)
            std::swap(p.data_[i * p.cols() + c], p.data_[j * p.cols() + c]);
        det_p = m - det_p;
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t r = 0; r < a.rows(); ++r)
            std::swap(a.data_[r * a.cols() + i], a.data_[r * a.cols() + j]);
        for (std::size_t r = 0; r < q.rows(); ++r)
            std::swap(q.data_[r * q.cols() + i], q.data_[r * q.cols() + j]);
        det_q = m - det_q;
    }

    void scale_row(std::size_t i, std::int64_t u) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            a.data_[i * a.cols() + c] = a.data_[i * a.cols() + c] * u % m;
        for (std::size_t c = 0; c < p.cols(); ++c)
            p.data_[i * p.cols() + c] = p.data_[i * p.cols() + c] * u % m;
        det_p = det_p * u % m;
    }

    // row_dst += c * row_src
    void add_row(std::size_t dst, std::size_t src, std::int64_t c) {
        for (std::size_t col = 0; col < a.cols(); ++col)
            a.data_[dst * a.cols() + col] =
                (a.data_[dst * a.cols() + col] + c * a.data_[src * a.cols() + col]) % m;
        for (std::size_t col = 0; col < p.cols(); ++col)
            p.data_[dst * p.cols() + col] =
                (p.data_[dst * p.cols() + col] + c * p.data_[src * p.cols() + col]) % m;
    }

    // col_dst += c * col_src
    void add_col(std::size_t dst, std::size_t src, std::int64_t c) {
        for (std::size_t r = 0; r < a.rows(); ++r)
            a.data_[r * a.cols() + dst] =
                (a.data_[r * a.cols() + dst] + c * a.data_[r * a.cols() + src]) % m;
        for (std::size_t r = 0; r < q.rows(); ++r)
            q.data_[r * q.cols() + dst] =
                (q.data_[r * q.cols() + dst] + c * q.data_[r * q.cols() + src]) % m;
    }

    // [row_i; row_j] <- [[u, v], [w, x]] * [row_i; row_j], with det = 1 mod m.
    void combine_rows(std::size_t i, std::size_t j, std::int64_t u, std::int64_t v,
                      std::int64_t w, std::int64_t x) {
        auto mix = [&](ZmMatrix& mat) {
            for (std::size_t c = 0; c < mat.cols(); ++c) {
                std::int64_t ri = mat.data_[i * mat.cols() + c];
                std::int64_t rj = mat.data_[j * mat.cols() + c];
                mat.data_[i * mat.cols() + c] = (u * ri + v * rj) % m;
                mat.data_[j * mat.cols() + c] = (w * ri + x * rj) % m;
            }
        };
        mix(a);
        mix(p);
    }

    // [col_i, col_j] <- [col_i, col_j] * [[u, w], [v, x]], with det = 1 mod m.
    void combine_cols(std::size_t i, std::size_t j, std::int64_t u, std::int64_t v,
                      std::int64_t w, std::int64_t x) {
        auto mix = [&](ZmMatrix& mat) {
            for (std::size_t r = 0; r < mat.rows(); ++r) {
                std::int64_t ci = mat.data_[r * mat.cols() + i];
                std::int64_t cj = mat.data_[r * mat.cols() + j];
                mat.data_[r * mat.cols() + i] = (u * ci + v * cj) % m;
                mat.data_[r * mat.cols() + j] = (w * ci + x * cj) % m;
            }
        };
        mix(a);
        mix(q);
    }

    // Unimodular 2x2 coefficients turning (pivot, other) into (gcd, 0).
    std::array<std::int64_t, 4> gcd_coefficients(std::int64_t pivot, std::int64_t other) const {
        auto [g, u, v] = xgcd(pivot, other);
        return {mod_reduce(u, m), mod_reduce(v, m), mod_reduce(-(other / g), m),
                mod_reduce(pivot / g, m)};
    }
};

namespace {

// Reduce the diagonal pair (a[i][i], a[j][j]) to (gcd, lcm) via elementary
// operations; all other entries of rows/cols i, j are zero on entry and exit.
void chain_fix_pair(SnfWorkspace& w, std::size_t i, std::size_t j) {
    w.add_col(i, j, 1); // puts a[j][j] at position (j, i)
    auto [u, v, x, y] = w.gcd_coefficients(w.at(i, i), w.at(j, i));
    w.combine_rows(i, j, u, v, x, y);
    std::int64_t g = w.at(i, i);
    std::int64_t spill = w.at(i, j);
    if (spill != 0)
        w.add_col(j, i, mod_reduce(-(spill / g), w.m)); // g | m and g | spill
}

void verify_decomposition(const SmithDecomposition& dec, const ZmMatrix& b) {
    ZmMatrix product = dec.p.multiply(b).multiply(dec.q);
    if (!(product == dec.diagonal(b.rows(), b.cols())))
        throw std::logic_error("snf: verification multiply failed");
    const std::int64_t m = b.modulus().value();
    std::int64_t prev = 1;
    for (std::int64_t d : dec.divisors) {
        if (d < 1 || d >= m || d % prev != 0 || m % d != 0)
            throw std::logic_error("snf: divisor chain invariant violated");
        prev = d;
    }
}

} // namespace

SmithDecomposition snf(const ZmMatrix& b) {
    const std::int64_t m = b.modulus().value();
    const std::size_t rows = b.rows(), cols = b.cols();
    const std::size_t steps = std::min(rows, cols);
    SnfWorkspace w(b);

    std::size_t t = 0;
    for (; t < steps; ++t) {
        // Pivot: nonzero entry minimizing gcd(entry, m); ties by row, then column.
        std::size_t bi = 0, bj = 0;
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                std::int64_t v = w.at(i, j);
                if (v == 0)
                    continue;
                std::int64_t g = std::gcd(v, m);
                if (best == 0 || g < best) {
                    best = g;
                    bi = i;
                    bj = j;
                }
            }
        if (best == 0)
            break; // remaining submatrix is zero
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);

        // Clear row and column t. A non-divisible entry triggers a unimodular
        // gcd combine, which strictly decreases gcd(pivot, m), so the guard
        // bound 2*log2(m) + O(1) is never hit.
        for (int guard = 0;; ++guard) {
            if (guard > 80)
                throw std::logic_error("snf: pivot reduction failed to settle");
            std::int64_t pivot = w.at(t, t);
            std::int64_t g = std::gcd(pivot, m);
            if (pivot != g)
                w.scale_row(t, unit_scaling_to_gcd(pivot, m));
            g = w.at(t, t);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows && !dirty; ++i) {
                std::int64_t v = w.at(i, t);
                if (v == 0)
                    continue;
                if (v % g == 0) {
                    w.add_row(i, t, mod_reduce(-(v / g), m));
                } else {
                    auto [cu, cv, cw_, cx] = w.gcd_coefficients(g, v);
                    w.combine_rows(t, i, cu, cv, cw_, cx);
                    dirty = true;
                }
            }
            if (dirty)
                continue;
            for (std::size_t j = t + 1; j < cols && !dirty; ++j) {
                std::int64_t v = w.at(t, j);
                if (v == 0)
                    continue;
                if (v % g == 0) {
                    w.add_col(j, t, mod_reduce(-(v / g), m));
                } else {
                    auto [cu, cv, cw_, cx] = w.gcd_coefficients(g, v);
                    w.combine_cols(t, j, cu, cv, cw_, cx);
                    dirty = true;
                }
            }
            if (!dirty)
                break;
        }
    }

    // Enforce the divisor chain on the diagonal. Entries merged up to m reduce
    // to 0 and sink past the nonzero prefix.
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            std::int64_t di = w.at(i, i), dj = w.at(j, j);
            bool divides = di != 0 ? dj % di == 0 : dj == 0;
            if (!divides)
                chain_fix_pair(w, i, j);
        }

    SmithDecomposition dec{std::move(w.p), std::move(w.q), {}, 0, w.det_p, w.det_q};
    bool zero_seen = false;
    for (std::size_t i = 0; i < t; ++i) {
        std::int64_t d = w.a(i, i);
        if (d == 0) {
            zero_seen = true;
        } else {
            if (zero_seen)
                throw std::logic_error("snf: zero entry before end of divisor chain");
            dec.divisors.push_back(d);
        }
    }
    dec.zero_rank_deficit = cols - dec.divisors.size();
    verify_decomposition(dec, b);
    return dec;
}

std::int64_t det_mod(const ZmMatrix& mat) {
    if (mat.rows() != mat.cols())
        throw DomainError("det_mod: matrix is not square");
    const std::int64_t m = mat.modulus().value();
    if (mat.rows() == 0)
        return 1 % m;
    SmithDecomposition dec = snf(mat);
    if (dec.rank() < mat.rows())
        return 0;
    std::int64_t diag = 1;
    for (std::int64_t d : dec.divisors)
        diag = diag * d % m;
    // det P * det B * det Q = det(diagonal)
    std::int64_t inv = mod_inverse(dec.det_p * dec.det_q % m, m);
    return diag * inv % m;
}

bool is_invertible(const ZmMatrix& mat) {
    if (mat.rows() != mat.cols())
        throw DomainError("is_invertible: matrix is not square");
    return std::gcd(det_mod(mat), mat.modulus().value()) == 1;
}

std::optional<std::vector<std::int64_t>> solve_linear(const SmithDecomposition& dec,
                                                      const ZmMatrix& b,
                                                      const std::vector<std::int64_t>& rhs) {
    if (rhs.size() != b.rows())
        throw DomainError("solve_linear: rhs length does not match row count");
    const std::int64_t m = b.modulus().value();
    std::vector<std::int64_t> c = dec.p.apply(rhs);
    const std::size_t r = dec.rank();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < r ? c[i] % dec.divisors[i] != 0 : c[i] != 0)
            return std::nullopt;
    }
    std::vector<std::int64_t> y(b.cols(), 0);
    for (std::size_t i = 0; i < r; ++i)
        y[i] = c[i] / dec.divisors[i];
    std::vector<std::int64_t> x = dec.q.apply(y);
    // Re-multiplication check; a failure here is an internal bug.
    std::vector<std::int64_t> check = b.apply(x);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        if (check[i] != mod_reduce(rhs[i], m))
            throw std::logic_error("solve_linear: verification failed");
    return x;
}

std::optional<std::vector<std::int64_t>> solve_linear(const ZmMatrix& b,
                                                      const std::vector<std::int64_t>& rhs) {
    return solve_linear(snf(b), b, rhs);
}

KernelStructure kernel_structure(const SmithDecomposition& dec, std::size_t cols) {
    if (cols == 0)
        throw DomainError("kernel_structure: matrix has no columns");
    const std::size_t r = dec.rank();
    if (r >= cols)
        throw DomainError("kernel_structure: full column rank (not a connected incidence matrix)");
    const std::int64_t m = dec.p.modulus().value();
    KernelStructure ks;
    ks.decomposition.free_rank = cols - 1 - r;
    ks.cardinality = big_pow(m, static_cast<std::int64_t>(ks.decomposition.free_rank));
    for (std::int64_t d : dec.divisors) {
        if (d != 1)
            ks.decomposition.cyclic_orders.push_back(d);
        ks.cardinality *= d;
    }
    return ks;
}

KernelStructure kernel_structure(const ZmMatrix& b) {
    return kernel_structure(snf(b), b.cols());
}

std::vector<std::vector<std::int64_t>> enumerate_kernel(const ZmMatrix& b, std::uint64_t cap) {
    KernelStructure ks = kernel_structure(b); // also rejects degenerate shapes
    if (ks.cardinality > BigInt(cap))
        throw CapExceededError("enumerate_kernel: kernel larger than cap", ks.cardinality);

    SmithDecomposition dec = snf(b);
    const std::int64_t m = b.modulus().value();
    const std::size_t n = b.cols();
    const std::size_t r = dec.rank();

    // Kernel of the diagonalized system: y_i ranges over (m/d_i) * {0..d_i-1}
    // for i < r and over all of Z_m beyond; x = Qy enumerates ker(B) exactly.
    std::vector<std::int64_t> period(n), count(n);
    for (std::size_t i = 0; i < n; ++i) {
        period[i] = i < r ? m / dec.divisors[i] : 1;
        count[i] = i < r ? dec.divisors[i] : m;
    }
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> digit(n, 0), y(n, 0);
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            y[i] = digit[i] * period[i] % m;
        std::vector<std::int64_t> x = dec.q.apply(y);
        if (x[0] == 0)
            out.push_back(std::move(x));
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < count[pos])
                break;
            digit[pos] = 0;
            if (pos == 0)
                goto done;
        }
    }
done:
    std::sort(out.begin(), out.end());
    if (BigInt(out.size()) != ks.cardinality)
        throw std::logic_error("enumerate_kernel: cardinality mismatch");
    return out;
}

std::vector<std::int64_t> normalize_divisor_chain(std::vector<std::int64_t> values,
                                                  std::int64_t m, std::size_t* dropped) {
    for (std::int64_t& v : values) {
        if (v == 0)
            v = m;
        if (v < 1 || m % v != 0)
            throw DomainError("normalize_divisor_chain: value does not divide the modulus");
    }
    // Repeated (a, b) -> (gcd, lcm) sorts every prime valuation; entries that
    // reach m stand for free Z_m summands.
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (values[j] % values[i] == 0)
                continue;
            std::int64_t g = std::gcd(values[i], values[j]);
            std::int64_t l = values[i] / g * values[j];
            values[i] = g;
            values[j] = l;
        }
    std::size_t drops = 0;
    std::vector<std::int64_t> chain;
    for (std::int64_t v : values) {
        if (v == m)
            ++drops;
        else
            chain.push_back(v);
    }
    if (dropped)
        *dropped = drops;
    return chain;
}

} // namespace hyperindex
