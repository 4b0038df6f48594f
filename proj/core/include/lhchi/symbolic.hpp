#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace lhchi {

/// A symbolic entry: 0 is the zero entry, +k / -k stand for +x_k / -x_k.
using SignedIndex = int;

/// Monomial x_a * x_b with a <= b.
struct Monomial {
    int a;
    int b;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Quadratic form with integer coefficients; zero coefficients are dropped.
using QuadraticForm = std::map<Monomial, long>;

/// Exact dot product of two symbolic vectors over commuting indeterminates.
[[nodiscard]] QuadraticForm symbolic_dot(std::span<const SignedIndex> u,
                                         std::span<const SignedIndex> v);

/// Column j (0-based) of a row-major n x n symbolic matrix.
[[nodiscard]] std::vector<SignedIndex> column_of(std::span<const SignedIndex> row_major,
                                                 std::size_t n, std::size_t j);

} // namespace lhchi
