#pragma once

#include "lhchi/latin_square.hpp"
#include "lhchi/symbolic.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lhchi {

/// n x n matrix of +1 / -1, 1-based access.
class SignMatrix {
public:
    SignMatrix(std::size_t n, std::vector<std::int8_t> signs);

    [[nodiscard]] static SignMatrix all_plus(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] int at(std::size_t i, std::size_t j) const noexcept {
        return signs_[(i - 1) * n_ + (j - 1)];
    }
    [[nodiscard]] const std::vector<std::int8_t>& entries() const noexcept { return signs_; }

    friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

private:
    std::size_t n_;
    std::vector<std::int8_t> signs_;
};

/// H[i][j] = signs[i][j] * S[i][j] for the structured square S.
class SignedLatinSquare {
public:
    SignedLatinSquare(LatinSquare square, SignMatrix signs);

    /// Rebuilds from row-major signed entries; |H| must equal S_w.
    [[nodiscard]] static SignedLatinSquare from_entries(std::span<const int> signed_entries);

    [[nodiscard]] const LatinSquare& square() const noexcept { return square_; }
    [[nodiscard]] const SignMatrix& signs() const noexcept { return signs_; }
    [[nodiscard]] std::size_t size() const noexcept { return square_.size(); }
    [[nodiscard]] unsigned exponent() const noexcept { return square_.exponent(); }

    [[nodiscard]] int at(std::size_t i, std::size_t j) const noexcept {
        return signs_.at(i, j) * square_.at(i, j);
    }

    /// Row-major signed entries; the canonical serialisation used for identity.
    [[nodiscard]] std::vector<int> entries() const;

    /// First row and column positive, diagonal below row 1 negative.
    [[nodiscard]] bool has_coloring_shape() const;

    friend bool operator==(const SignedLatinSquare&, const SignedLatinSquare&) = default;

private:
    LatinSquare square_;
    SignMatrix signs_;
};

/// Free colour choices, consumed level by level (w' = 2..w) and by row
/// i = 2..2^{w'-1} within a level. `true` colours the entry with '-'.
using ChoiceVector = std::vector<bool>;

/// 2^w - (w + 1) free choices (0 for w <= 1).
[[nodiscard]] std::size_t choice_length(unsigned w);

/// 2^(choice_length(w)).
[[nodiscard]] std::uint64_t coloring_count(unsigned w);

/// Bitstring with '0' for '+' and '1' for '-', first choice first.
[[nodiscard]] std::string to_bitstring(const ChoiceVector& choices);
[[nodiscard]] ChoiceVector parse_bitstring(std::string_view bits);

/// Enumeration order: the bitstring read as a binary number.
[[nodiscard]] ChoiceVector choices_from_index(unsigned w, std::uint64_t index);
[[nodiscard]] std::uint64_t index_from_choices(const ChoiceVector& choices);

/// Colours S so that every column is orthogonal to column 1 and every row to
/// row 1 (symbolically). The result is not necessarily Latin-Hadamard.
///
/// Throws ValidationError on a wrong choice length and ConsistencyError if
/// propagation ever recolours an entry differently.
[[nodiscard]] SignedLatinSquare color(const LatinSquare& s, const ChoiceVector& choices);

/// Largest exponent accepted by enumerate_colorings (2048 candidates).
inline constexpr unsigned max_enumeration_exponent = 4;

/// All 2^(2^w-(w+1)) candidates in index order. Work is split across
/// `threads` workers; the output order does not depend on it.
[[nodiscard]] std::vector<SignedLatinSquare> enumerate_colorings(const LatinSquare& s,
                                                                 unsigned threads = 1);

enum class Orientation { columns, rows };

/// Symbolic Gram matrix over the indeterminates x_1..x_n: entry (j, j') is
/// the quadratic form of the dot product of columns (or rows) j and j'.
struct SymbolicGram {
    std::size_t n = 0;
    Orientation orientation = Orientation::columns;
    /// Keyed by 1-based (j, j') with j <= j'. Diagonal included.
    std::map<std::pair<std::size_t, std::size_t>, QuadraticForm> entries;

    [[nodiscard]] bool off_diagonal_zero() const;
};

[[nodiscard]] SymbolicGram symbolic_gram(const SignedLatinSquare& h,
                                         Orientation orientation = Orientation::columns);

/// Columns and rows mutually orthogonal with the symbols as indeterminates.
[[nodiscard]] bool is_latin_hadamard(const SignedLatinSquare& h);

/// 1-based column pairs (j < j') whose symbolic dot product vanishes.
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>>
partial_orthogonality_report(const SignedLatinSquare& h);

/// H * H^T == n * I for a +/-1 matrix.
[[nodiscard]] bool sign_pattern_is_hadamard(const SignMatrix& signs);
[[nodiscard]] bool sign_pattern_is_hadamard(const SignedLatinSquare& h);

/// Reference Latin-Hadamard matrices: the two of order 4 followed by the
/// sixteen of order 8, each stored as its colouring choices.
struct CatalogEntry {
    unsigned w;
    std::string_view choices;
};

[[nodiscard]] std::span<const CatalogEntry> latin_hadamard_catalog();
[[nodiscard]] SignedLatinSquare catalog_matrix(std::size_t index);

} // namespace lhchi
