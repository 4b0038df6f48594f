#include "lhchi/latin_square.hpp"

#include "lhchi/errors.hpp"

#include <algorithm>
#include <string>

namespace lhchi {

LatinSquare::LatinSquare(unsigned w) : w_{w}, n_{std::size_t{1} << (w > max_exponent ? 0 : w)} {
    if (w > max_exponent) {
        throw ValidationError("latin square exponent " + std::to_string(w) + " exceeds " +
                              std::to_string(max_exponent));
    }
    entries_.assign(n_ * n_, 0);
    entries_[0] = 1;

    // Grow the upper-left block of order h into order 2h.
    for (std::size_t h = 1; h < n_; h *= 2) {
        const int shift = static_cast<int>(h);
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < h; ++j) {
                const int a = entries_[i * n_ + j];
                entries_[i * n_ + (j + h)] = a + shift;
                entries_[(i + h) * n_ + j] = a + shift;
                entries_[(i + h) * n_ + (j + h)] = a;
            }
        }
    }
}

LatinSquare construct_latin_square(unsigned w) { return LatinSquare{w}; }

CornerQuad find_abba_partner(const LatinSquare& s, std::size_t i1, std::size_t j1,
                             std::size_t j2) {
    const std::size_t n = s.size();
    if (i1 < 1 || i1 > n || j1 < 1 || j1 > n || j2 < 1 || j2 > n) {
        throw ValidationError("AB-BA index out of range");
    }
    if (j1 == j2) {
        throw ValidationError("AB-BA columns must differ");
    }
    const int a = s.at(i1, j1);
    const int b = s.at(i1, j2);
    for (std::size_t i2 = 1; i2 <= n; ++i2) {
        if (s.at(i2, j1) != b) {
            continue;
        }
        if (i2 == i1 || s.at(i2, j2) != a) {
            break;
        }
        return CornerQuad{i1, j1, i2, j2, a, b};
    }
    throw ConsistencyError("no AB-BA partner for row " + std::to_string(i1) + ", columns " +
                           std::to_string(j1) + "/" + std::to_string(j2));
}

std::vector<CornerQuad> enumerate_abba_quads(const LatinSquare& s) {
    const std::size_t n = s.size();
    std::vector<CornerQuad> quads;
    if (n >= 2) {
        quads.reserve(n * (n - 1) / 2 * (n / 2));
    }
    for (std::size_t i1 = 1; i1 <= n; ++i1) {
        for (std::size_t j1 = 1; j1 <= n; ++j1) {
            for (std::size_t j2 = j1 + 1; j2 <= n; ++j2) {
                const CornerQuad q = find_abba_partner(s, i1, j1, j2);
                if (q.i2 > i1) {
                    quads.push_back(q);
                }
            }
        }
    }
    return quads;
}

bool is_latin(std::span<const int> row_major, std::size_t n) {
    if (row_major.size() != n * n) {
        return false;
    }
    std::vector<char> seen(n + 1);
    auto check = [&](auto at) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t t = 0; t < n; ++t) {
            const int v = at(t);
            if (v < 1 || static_cast<std::size_t>(v) > n || seen[v]) {
                return false;
            }
            seen[v] = 1;
        }
        return true;
    };
    for (std::size_t r = 0; r < n; ++r) {
        if (!check([&](std::size_t t) { return row_major[r * n + t]; })) return false;
        if (!check([&](std::size_t t) { return row_major[t * n + r]; })) return false;
    }
    return true;
}

} // namespace lhchi
