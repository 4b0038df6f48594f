#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lhchi {

/// The structured Latin square S_w of order n = 2^w.
///
/// Built by the block recursion S_0 = [1], S_w = [[A, B], [B, A]] with
/// A = S_{w-1} and B = A + 2^{w-1}. Rows and columns are permutations of
/// 1..n, the matrix is symmetric about both diagonals and every diagonal
/// entry is 1.
///
/// Indices on the public surface are 1-based.
class LatinSquare {
public:
    /// Largest exponent the library will build (n = 32768).
    static constexpr unsigned max_exponent = 15;

    explicit LatinSquare(unsigned w);

    [[nodiscard]] unsigned exponent() const noexcept { return w_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    [[nodiscard]] int at(std::size_t i, std::size_t j) const noexcept {
        return entries_[(i - 1) * n_ + (j - 1)];
    }

    [[nodiscard]] std::span<const int> row(std::size_t i) const noexcept {
        return {entries_.data() + (i - 1) * n_, n_};
    }

    /// Row-major storage.
    [[nodiscard]] const std::vector<int>& entries() const noexcept { return entries_; }

    friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

private:
    unsigned w_;
    std::size_t n_;
    std::vector<int> entries_;
};

[[nodiscard]] LatinSquare construct_latin_square(unsigned w);

/// Four AB-BA corners: S[i1][j1] = S[i2][j2] = a and S[i1][j2] = S[i2][j1] = b.
struct CornerQuad {
    std::size_t i1, j1, i2, j2;
    int a, b;

    friend bool operator==(const CornerQuad&, const CornerQuad&) = default;
};

/// Completes the AB-BA quad through (i1, j1) and (i1, j2). The partner row is
/// unique because b occurs once in column j1.
///
/// Throws ValidationError on out-of-range indices or j1 == j2, and
/// ConsistencyError if the square lacks the AB-BA property at this spot.
[[nodiscard]] CornerQuad find_abba_partner(const LatinSquare& s, std::size_t i1,
                                           std::size_t j1, std::size_t j2);

/// Every quad once, normalised to i1 < i2 and j1 < j2, in lexicographic
/// (i1, j1, j2) order. There are n(n-1)/2 * n/2 of them.
[[nodiscard]] std::vector<CornerQuad> enumerate_abba_quads(const LatinSquare& s);

/// True when every row and column of the row-major n x n array is a
/// permutation of 1..n.
[[nodiscard]] bool is_latin(std::span<const int> row_major, std::size_t n);

} // namespace lhchi
