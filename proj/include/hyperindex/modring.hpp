#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperindex/bigint.hpp"
#include "hyperindex/errors.hpp"

namespace hyperindex {

// Modulus of the residue ring Z_m. Kept below 2^31 so that a product of two
// reduced residues fits in int64 without overflow.
class Modulus {
public:
    explicit Modulus(std::int64_t value);
    std::int64_t value() const noexcept { return value_; }
    friend bool operator==(Modulus a, Modulus b) noexcept { return a.value_ == b.value_; }

private:
    std::int64_t value_;
};

// Dense matrix over Z_m; entries are stored reduced to [0, m).
class ZmMatrix {
public:
    ZmMatrix(std::size_t rows, std::size_t cols, Modulus m);
    static ZmMatrix identity(std::size_t n, Modulus m);
    static ZmMatrix kronecker(const ZmMatrix& a, const ZmMatrix& b);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Modulus modulus() const noexcept { return m_; }

    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    // Reduces v into [0, m); accepts negative values.
    void set(std::size_t i, std::size_t j, std::int64_t v);

    ZmMatrix multiply(const ZmMatrix& rhs) const;
    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;

    bool operator==(const ZmMatrix& rhs) const = default;

private:
    std::size_t rows_, cols_;
    Modulus m_;
    std::vector<std::int64_t> data_;

    friend struct SnfWorkspace;
};

// PBQ = diag(divisors, 0...) with P, Q invertible over Z_m. Divisors form a
// chain d_1 | d_2 | ... | d_r | m with 1 <= d_i <= m-1; diagonal entries that
// reduce to 0 mod m are excluded and counted in zero_rank_deficit = cols - r.
struct SmithDecomposition {
    ZmMatrix p, q;
    std::vector<std::int64_t> divisors;
    std::size_t zero_rank_deficit;
    std::int64_t det_p, det_q; // determinants of the accumulated transforms (units)

    std::size_t rank() const noexcept { return divisors.size(); }
    // The diagonal matrix this decomposition asserts for a rows x cols input.
    ZmMatrix diagonal(std::size_t rows, std::size_t cols) const;
};

// Cyclic decomposition of a finite Z_m-module:
//   (+)_{d in cyclic_orders} Z_d  (+)  free_rank * Z_m,   each d | m, d != 1.
struct ModuleDecomposition {
    std::vector<std::int64_t> cyclic_orders;
    std::size_t free_rank = 0;

    bool operator==(const ModuleDecomposition&) const = default;
};

struct KernelStructure {
    ModuleDecomposition decomposition;
    BigInt cardinality;
};

SmithDecomposition snf(const ZmMatrix& b);

// det(M) as an element of Z_m (square input only).
std::int64_t det_mod(const ZmMatrix& m);
// True iff gcd(det(M) mod m, m) = 1. Throws DomainError on non-square input.
bool is_invertible(const ZmMatrix& m);

// One solution of Bx = rhs over Z_m, or nullopt if the system is unsolvable.
// The choice is deterministic: y_i = c_i / d_i on the diagonalized system.
std::optional<std::vector<std::int64_t>> solve_linear(const ZmMatrix& b,
                                                      const std::vector<std::int64_t>& rhs);
std::optional<std::vector<std::int64_t>> solve_linear(const SmithDecomposition& dec,
                                                      const ZmMatrix& b,
                                                      const std::vector<std::int64_t>& rhs);

// Structure of {x : Bx = 0, x_1 = 0} assuming B is the incidence matrix of a
// connected hypergraph (caller's duty; not checked here):
//   (+)_{d_i != 1} Z_{d_i}  (+)  (cols - 1 - r) * Z_m.
KernelStructure kernel_structure(const ZmMatrix& b);
KernelStructure kernel_structure(const SmithDecomposition& dec, std::size_t cols);

// All x with Bx = 0 and x_1 = 0, from the SNF parametrization x = Qy, sorted
// lexicographically. Throws CapExceededError (carrying the cardinality) when
// kernel_structure predicts more than cap vectors.
std::vector<std::vector<std::int64_t>> enumerate_kernel(const ZmMatrix& b, std::uint64_t cap);

// Invariant-factor chain of (+)_i Z_{values[i]} over Z_m: values must divide m
// (0 stands for m). Returns the chain of entries in [1, m-1]; entries that end
// up = m are dropped and counted in *dropped (each is one free Z_m summand).
std::vector<std::int64_t> normalize_divisor_chain(std::vector<std::int64_t> values,
                                                  std::int64_t m,
                                                  std::size_t* dropped = nullptr);

} // namespace hyperindex
