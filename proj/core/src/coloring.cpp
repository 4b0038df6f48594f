#include "lhchi/coloring.hpp"

#include "lhchi/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>

namespace lhchi {

SignMatrix::SignMatrix(std::size_t n, std::vector<std::int8_t> signs)
    : n_{n}, signs_{std::move(signs)} {
    if (signs_.size() != n_ * n_) {
        throw ValidationError("sign matrix has wrong number of entries");
    }
    for (auto s : signs_) {
        if (s != 1 && s != -1) {
            throw ValidationError("sign matrix entries must be +1 or -1");
        }
    }
}

SignMatrix SignMatrix::all_plus(std::size_t n) {
    return SignMatrix{n, std::vector<std::int8_t>(n * n, 1)};
}

SignedLatinSquare::SignedLatinSquare(LatinSquare square, SignMatrix signs)
    : square_{std::move(square)}, signs_{std::move(signs)} {
    if (signs_.size() != square_.size()) {
        throw ValidationError("sign matrix and latin square differ in size");
    }
}

SignedLatinSquare SignedLatinSquare::from_entries(std::span<const int> signed_entries) {
    const std::size_t count = signed_entries.size();
    unsigned w = 0;
    while (w <= LatinSquare::max_exponent && (std::size_t{1} << (2 * w)) < count) {
        ++w;
    }
    if (w > LatinSquare::max_exponent || (std::size_t{1} << (2 * w)) != count) {
        throw ValidationError("signed matrix must be square of order 2^w");
    }
    LatinSquare s{w};
    const std::size_t n = s.size();
    std::vector<std::int8_t> signs(count);
    for (std::size_t t = 0; t < count; ++t) {
        if (std::abs(signed_entries[t]) != s.entries()[t]) {
            throw ValidationError("absolute values do not match the structured latin square");
        }
        signs[t] = signed_entries[t] > 0 ? 1 : -1;
    }
    SignMatrix sign_matrix{n, std::move(signs)};
    return SignedLatinSquare{std::move(s), std::move(sign_matrix)};
}

std::vector<int> SignedLatinSquare::entries() const {
    std::vector<int> out(square_.entries().size());
    for (std::size_t t = 0; t < out.size(); ++t) {
        out[t] = signs_.entries()[t] * square_.entries()[t];
    }
    return out;
}

bool SignedLatinSquare::has_coloring_shape() const {
    const std::size_t n = size();
    for (std::size_t t = 1; t <= n; ++t) {
        if (signs_.at(1, t) != 1 || signs_.at(t, 1) != 1) return false;
        if (t >= 2 && signs_.at(t, t) != -1) return false;
    }
    return true;
}

std::size_t choice_length(unsigned w) {
    if (w <= 1) return 0;
    return (std::size_t{1} << w) - (w + 1);
}

std::uint64_t coloring_count(unsigned w) {
    const std::size_t len = choice_length(w);
    if (len >= 64) {
        throw ValidationError("coloring count overflows 64 bits");
    }
    return std::uint64_t{1} << len;
}

std::string to_bitstring(const ChoiceVector& choices) {
    std::string out;
    out.reserve(choices.size());
    for (bool minus : choices) out.push_back(minus ? '1' : '0');
    return out;
}

ChoiceVector parse_bitstring(std::string_view bits) {
    ChoiceVector out;
    out.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ValidationError("choice bitstring may only contain '0' and '1'");
        }
        out.push_back(c == '1');
    }
    return out;
}

ChoiceVector choices_from_index(unsigned w, std::uint64_t index) {
    const std::size_t len = choice_length(w);
    if (len < 64 && index >= (std::uint64_t{1} << len)) {
        throw ValidationError("coloring index out of range");
    }
    ChoiceVector out(len);
    for (std::size_t k = 0; k < len; ++k) {
        out[k] = ((index >> (len - 1 - k)) & 1U) != 0;
    }
    return out;
}

std::uint64_t index_from_choices(const ChoiceVector& choices) {
    std::uint64_t index = 0;
    for (bool minus : choices) index = (index << 1) | (minus ? 1U : 0U);
    return index;
}

namespace {

// 1-based sign grid with 0 meaning "not yet coloured".
class Palette {
public:
    explicit Palette(std::size_t n) : n_{n}, cells_(n * n, 0) {}

    [[nodiscard]] int get(std::size_t i, std::size_t j) const { return cells_[(i - 1) * n_ + (j - 1)]; }

    void set(std::size_t i, std::size_t j, int sign) {
        auto& cell = cells_[(i - 1) * n_ + (j - 1)];
        if (cell != 0 && cell != sign) {
            throw ConsistencyError("coloring conflict at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
        }
        cell = static_cast<std::int8_t>(sign);
    }

    [[nodiscard]] SignMatrix finish() && {
        if (std::find(cells_.begin(), cells_.end(), 0) != cells_.end()) {
            throw ConsistencyError("coloring left entries uncoloured");
        }
        return SignMatrix{n_, std::move(cells_)};
    }

private:
    std::size_t n_;
    std::vector<std::int8_t> cells_;
};

} // namespace

SignedLatinSquare color(const LatinSquare& s, const ChoiceVector& choices) {
    const unsigned w = s.exponent();
    const std::size_t n = s.size();
    if (choices.size() != choice_length(w)) {
        throw ValidationError("expected " + std::to_string(choice_length(w)) +
                              " coloring choices, got " + std::to_string(choices.size()));
    }

    Palette p{n};
    for (std::size_t t = 1; t <= n; ++t) {
        p.set(1, t, +1);
        p.set(t, 1, +1);
    }
    if (n >= 2) {
        p.set(2, 2, -1);
    }

    std::size_t next_choice = 0;
    for (std::size_t h = 2; h < n; h *= 2) {
        // Upper-left h x h block is complete; extend to 2h x 2h.
        p.set(h + 1, h + 1, -1);

        // Each free choice fixes a six-entry cycle of alternating colours.
        for (std::size_t i = 2; i <= h; ++i) {
            const int c = choices[next_choice++] ? -1 : +1;
            const std::array<std::pair<std::size_t, std::size_t>, 6> cycle{{
                {i, h + 1}, {i, h + i}, {h + 1, h + i}, {h + 1, i}, {h + i, i}, {h + i, h + 1},
            }};
            for (std::size_t k = 0; k < cycle.size(); ++k) {
                p.set(cycle[k].first, cycle[k].second, (k % 2 == 0) ? c : -c);
            }
        }

        // Lower-left block: AB-BA quad with the first column of the upper-right block.
        for (std::size_t i = 1; i <= h; ++i) {
            for (std::size_t j = 2; j <= h; ++j) {
                if (p.get(h + i, j) != 0) continue;
                const int v = s.at(h + i, j);
                std::size_t ip = 1;
                while (ip <= h && s.at(ip, h + 1) != v) ++ip;
                if (ip > h || s.at(ip, j) != s.at(h + i, h + 1)) {
                    throw ConsistencyError("missing AB-BA corner while colouring lower-left block");
                }
                p.set(h + i, j, -p.get(ip, j) * p.get(ip, h + 1) * p.get(h + i, h + 1));
            }
        }

        // Upper-right block: antisymmetric to the lower-left one.
        for (std::size_t i = 2; i <= h; ++i) {
            for (std::size_t j = 2; j <= h; ++j) {
                p.set(i, h + j, -p.get(h + j, i));
            }
        }

        // Lower-right block: AB-BA quad with column 1. Row r = S[h+i][h+j]
        // holds the matching corner because S is the XOR table.
        for (std::size_t i = 1; i <= h; ++i) {
            for (std::size_t j = 1; j <= h; ++j) {
                if (p.get(h + i, h + j) != 0) continue;
                const auto r = static_cast<std::size_t>(s.at(h + i, h + j));
                if (s.at(r, 1) != s.at(h + i, h + j) || s.at(r, h + j) != s.at(h + i, 1)) {
                    throw ConsistencyError("missing AB-BA corner while colouring lower-right block");
                }
                p.set(h + i, h + j, -p.get(h + i, 1) * p.get(r, 1) * p.get(r, h + j));
            }
        }
    }

    return SignedLatinSquare{s, std::move(p).finish()};
}

std::vector<SignedLatinSquare> enumerate_colorings(const LatinSquare& s, unsigned threads) {
    const unsigned w = s.exponent();
    if (w > max_enumeration_exponent) {
        throw ValidationError("exhaustive enumeration is limited to w <= " +
                              std::to_string(max_enumeration_exponent));
    }
    const std::uint64_t count = coloring_count(w);
    std::vector<std::optional<SignedLatinSquare>> slots(count);

    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            slots[idx].emplace(color(s, choices_from_index(w, idx)));
        }
    };

    const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, count);
    if (workers == 1) {
        work(0, count);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (count + workers - 1) / workers;
        for (std::uint64_t t = 0; t < workers; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min(count, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }

    std::vector<SignedLatinSquare> out;
    out.reserve(count);
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

bool SymbolicGram::off_diagonal_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& kv) {
        return kv.first.first == kv.first.second || kv.second.empty();
    });
}

namespace {

std::vector<int> line_of(const SignedLatinSquare& h, Orientation o, std::size_t k) {
    const std::size_t n = h.size();
    std::vector<int> out(n);
    for (std::size_t t = 1; t <= n; ++t) {
        out[t - 1] = o == Orientation::columns ? h.at(t, k) : h.at(k, t);
    }
    return out;
}

std::vector<std::vector<int>> lines_of(const SignedLatinSquare& h, Orientation o) {
    std::vector<std::vector<int>> lines;
    lines.reserve(h.size());
    for (std::size_t k = 1; k <= h.size(); ++k) lines.push_back(line_of(h, o, k));
    return lines;
}

bool all_pairs_orthogonal(const SignedLatinSquare& h, Orientation o) {
    const auto lines = lines_of(h, o);
    for (std::size_t a = 0; a < lines.size(); ++a) {
        for (std::size_t b = a + 1; b < lines.size(); ++b) {
            if (!symbolic_dot(lines[a], lines[b]).empty()) return false;
        }
    }
    return true;
}

} // namespace

SymbolicGram symbolic_gram(const SignedLatinSquare& h, Orientation orientation) {
    SymbolicGram gram;
    gram.n = h.size();
    gram.orientation = orientation;
    const auto lines = lines_of(h, orientation);
    for (std::size_t a = 0; a < lines.size(); ++a) {
        for (std::size_t b = a; b < lines.size(); ++b) {
            gram.entries.emplace(std::pair{a + 1, b + 1}, symbolic_dot(lines[a], lines[b]));
        }
    }
    return gram;
}

bool is_latin_hadamard(const SignedLatinSquare& h) {
    return all_pairs_orthogonal(h, Orientation::columns) &&
           all_pairs_orthogonal(h, Orientation::rows);
}

std::vector<std::pair<std::size_t, std::size_t>>
partial_orthogonality_report(const SignedLatinSquare& h) {
    const auto cols = lines_of(h, Orientation::columns);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < cols.size(); ++a) {
        for (std::size_t b = a + 1; b < cols.size(); ++b) {
            if (symbolic_dot(cols[a], cols[b]).empty()) pairs.emplace_back(a + 1, b + 1);
        }
    }
    return pairs;
}

bool sign_pattern_is_hadamard(const SignMatrix& signs) {
    const std::size_t n = signs.size();
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = a; b <= n; ++b) {
            long dot = 0;
            for (std::size_t t = 1; t <= n; ++t) dot += signs.at(a, t) * signs.at(b, t);
            if (dot != (a == b ? static_cast<long>(n) : 0L)) return false;
        }
    }
    return true;
}

bool sign_pattern_is_hadamard(const SignedLatinSquare& h) {
    return sign_pattern_is_hadamard(h.signs());
}

namespace {

// Published order: two matrices of order 4, then sixteen of order 8 read
// left to right, top to bottom.
constexpr std::array<CatalogEntry, 18> kCatalog{{
    {2, "0"},    {2, "1"},
    {3, "1101"}, {3, "1110"}, {3, "1111"}, {3, "1100"}, {3, "1011"}, {3, "1010"},
    {3, "1001"}, {3, "1000"}, {3, "0111"}, {3, "0110"}, {3, "0101"}, {3, "0100"},
    {3, "0011"}, {3, "0010"}, {3, "0001"}, {3, "0000"},
}};

} // namespace

std::span<const CatalogEntry> latin_hadamard_catalog() { return kCatalog; }

SignedLatinSquare catalog_matrix(std::size_t index) {
    if (index >= kCatalog.size()) {
        throw ValidationError("catalogue index " + std::to_string(index) + " out of range (0.." +
                              std::to_string(kCatalog.size() - 1) + ")");
    }
    const auto& entry = kCatalog[index];
    return color(LatinSquare{entry.w}, parse_bitstring(entry.choices));
}

} // namespace lhchi
