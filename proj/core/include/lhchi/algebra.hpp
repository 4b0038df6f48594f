#pragma once

#include "lhchi/coloring.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lhchi {

/// e_i * e_j = sign * e_index (1-based basis, e_1 is the unit).
struct SignedBasis {
    int sign;
    int index;

    friend bool operator==(const SignedBasis&, const SignedBasis&) = default;
};

/// Multiplication table of a real algebra on a signed basis.
class AlgebraTable {
public:
    AlgebraTable(std::size_t dim, std::vector<SignedBasis> products);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] SignedBasis product(std::size_t i, std::size_t j) const noexcept {
        return products_[(i - 1) * dim_ + (j - 1)];
    }
    [[nodiscard]] const std::vector<SignedBasis>& products() const noexcept { return products_; }

    /// Bilinear product of coefficient vectors (index 0 is e_1).
    [[nodiscard]] std::vector<long> multiply(std::span<const long> x,
                                             std::span<const long> y) const;

    /// e_1 is a two-sided unit and e_i^2 = -e_1 for i >= 2.
    [[nodiscard]] bool has_unit_and_imaginary_units() const;

    /// The unsigned table (basis indices) is a Latin square.
    [[nodiscard]] bool is_latin() const;

    friend bool operator==(const AlgebraTable&, const AlgebraTable&) = default;

private:
    std::size_t dim_;
    std::vector<SignedBasis> products_;
};

/// Cayley-Dickson doubling of the reals m times, dimension 2^m, using
/// (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)). For m = 2 this is the
/// quaternion table on basis 1, i, j, k with ij = k.
[[nodiscard]] AlgebraTable cayley_dickson_table(unsigned m);

inline constexpr unsigned max_cayley_dickson_exponent = 5;

/// Reads a coloured square as a multiplication table: e_i e_j = sgn(H_ij) e_|H_ij|.
[[nodiscard]] AlgebraTable table_from_signed_square(const SignedLatinSquare& h);

/// (e_i + s1 e_j)(e_k + s2 e_l) = 0 with 2 <= i < j, 2 <= k < l.
struct ZeroDivisorPair {
    int i, j, s1;
    int k, l, s2;

    friend bool operator==(const ZeroDivisorPair&, const ZeroDivisorPair&) = default;
};

/// Formats as "(e_i - e_j)(e_k + e_l) = 0".
[[nodiscard]] std::string to_string(const ZeroDivisorPair& z);

/// Exhaustive scan over products of the form (e_i +/- e_j)(e_k +/- e_l).
/// Exhaustive for all zero divisors up to dimension 16; a sample beyond.
[[nodiscard]] std::vector<ZeroDivisorPair> find_zero_divisors(const AlgebraTable& table);

/// Same scan, stopping at the first hit.
[[nodiscard]] bool has_zero_divisors(const AlgebraTable& table);

/// Radon's function: n = 2^(4c+d) * odd, 0 <= d < 4  ->  8c + 2^d.
[[nodiscard]] std::uint64_t radon(std::uint64_t n);

} // namespace lhchi
