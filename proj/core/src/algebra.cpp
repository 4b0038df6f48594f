#include "lhchi/algebra.hpp"

#include "lhchi/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace lhchi {

AlgebraTable::AlgebraTable(std::size_t dim, std::vector<SignedBasis> products)
    : dim_{dim}, products_{std::move(products)} {
    if (products_.size() != dim_ * dim_) {
        throw ValidationError("algebra table has wrong number of entries");
    }
    for (const auto& p : products_) {
        if ((p.sign != 1 && p.sign != -1) || p.index < 1 ||
            static_cast<std::size_t>(p.index) > dim_) {
            throw ValidationError("algebra table entry out of range");
        }
    }
}

std::vector<long> AlgebraTable::multiply(std::span<const long> x, std::span<const long> y) const {
    if (x.size() != dim_ || y.size() != dim_) {
        throw ValidationError("multiply: operand dimension mismatch");
    }
    std::vector<long> out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j] == 0) continue;
            const SignedBasis p = products_[i * dim_ + j];
            out[p.index - 1] += p.sign * x[i] * y[j];
        }
    }
    return out;
}

bool AlgebraTable::has_unit_and_imaginary_units() const {
    for (std::size_t t = 1; t <= dim_; ++t) {
        const int idx = static_cast<int>(t);
        if (product(1, t) != SignedBasis{1, idx} || product(t, 1) != SignedBasis{1, idx}) {
            return false;
        }
        if (t >= 2 && product(t, t) != SignedBasis{-1, 1}) return false;
    }
    return true;
}

bool AlgebraTable::is_latin() const {
    std::vector<int> indices(products_.size());
    std::transform(products_.begin(), products_.end(), indices.begin(),
                   [](const SignedBasis& p) { return p.index; });
    return lhchi::is_latin(indices, dim_);
}

namespace {

std::vector<long> conjugate(std::span<const long> x) {
    std::vector<long> out(x.begin(), x.end());
    for (std::size_t t = 1; t < out.size(); ++t) out[t] = -out[t];
    return out;
}

// (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
std::vector<long> cd_multiply(std::span<const long> x, std::span<const long> y) {
    const std::size_t dim = x.size();
    if (dim == 1) return {x[0] * y[0]};
    const std::size_t h = dim / 2;
    const auto a = x.first(h), b = x.last(h);
    const auto c = y.first(h), d = y.last(h);

    const auto ac = cd_multiply(a, c);
    const auto dbar_b = cd_multiply(conjugate(d), b);
    const auto da = cd_multiply(d, a);
    const auto b_cbar = cd_multiply(b, conjugate(c));

    std::vector<long> out(dim);
    for (std::size_t t = 0; t < h; ++t) {
        out[t] = ac[t] - dbar_b[t];
        out[h + t] = da[t] + b_cbar[t];
    }
    return out;
}

} // namespace

AlgebraTable cayley_dickson_table(unsigned m) {
    if (m > max_cayley_dickson_exponent) {
        throw ValidationError("Cayley-Dickson exponent limited to " +
                              std::to_string(max_cayley_dickson_exponent));
    }
    const std::size_t dim = std::size_t{1} << m;
    std::vector<SignedBasis> products;
    products.reserve(dim * dim);
    std::vector<long> ei(dim), ej(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            std::fill(ei.begin(), ei.end(), 0);
            std::fill(ej.begin(), ej.end(), 0);
            ei[i] = 1;
            ej[j] = 1;
            const auto prod = cd_multiply(ei, ej);
            const auto hit = std::find_if(prod.begin(), prod.end(), [](long v) { return v != 0; });
            if (hit == prod.end() || std::abs(*hit) != 1 ||
                std::count(prod.begin(), prod.end(), 0L) != static_cast<long>(dim - 1)) {
                throw ConsistencyError("Cayley-Dickson basis product is not a signed basis element");
            }
            products.push_back({static_cast<int>(*hit), static_cast<int>(hit - prod.begin()) + 1});
        }
    }
    return AlgebraTable{dim, std::move(products)};
}

AlgebraTable table_from_signed_square(const SignedLatinSquare& h) {
    const std::size_t n = h.size();
    for (std::size_t t = 1; t <= n; ++t) {
        if (h.at(1, t) < 0 || h.at(t, 1) < 0) {
            throw ValidationError("first row and column of the coloured square must be positive");
        }
    }
    std::vector<SignedBasis> products;
    products.reserve(n * n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const int v = h.at(i, j);
            products.push_back({v > 0 ? 1 : -1, std::abs(v)});
        }
    }
    return AlgebraTable{n, std::move(products)};
}

std::string to_string(const ZeroDivisorPair& z) {
    auto sign = [](int s) { return s > 0 ? " + " : " - "; };
    return "(e_" + std::to_string(z.i) + sign(z.s1) + "e_" + std::to_string(z.j) + ")(e_" +
           std::to_string(z.k) + sign(z.s2) + "e_" + std::to_string(z.l) + ") = 0";
}

namespace {

// Sum of four signed basis elements is zero iff they cancel in pairs.
bool cancels(std::array<SignedBasis, 4> terms) {
    long acc[4] = {0, 0, 0, 0};
    int idx[4] = {0, 0, 0, 0};
    int used = 0;
    for (const auto& t : terms) {
        int slot = 0;
        while (slot < used && idx[slot] != t.index) ++slot;
        if (slot == used) idx[used++] = t.index;
        acc[slot] += t.sign;
    }
    return std::all_of(acc, acc + used, [](long v) { return v == 0; });
}

template <typename OnHit>
void scan_zero_divisors(const AlgebraTable& table, OnHit&& on_hit) {
    const int dim = static_cast<int>(table.dim());
    auto term = [&](int a, int b, int sign) {
        SignedBasis p = table.product(a, b);
        p.sign *= sign;
        return p;
    };
    for (int i = 2; i <= dim; ++i) {
        for (int j = i + 1; j <= dim; ++j) {
            for (int s1 : {+1, -1}) {
                for (int k = 2; k <= dim; ++k) {
                    for (int l = k + 1; l <= dim; ++l) {
                        for (int s2 : {+1, -1}) {
                            // (e_i + s1 e_j)(e_k + s2 e_l)
                            if (cancels({term(i, k, 1), term(i, l, s2), term(j, k, s1),
                                         term(j, l, s1 * s2)})) {
                                if (!on_hit(ZeroDivisorPair{i, j, s1, k, l, s2})) return;
                            }
                        }
                    }
                }
            }
        }
    }
}

} // namespace

std::vector<ZeroDivisorPair> find_zero_divisors(const AlgebraTable& table) {
    std::vector<ZeroDivisorPair> hits;
    scan_zero_divisors(table, [&](const ZeroDivisorPair& z) {
        hits.push_back(z);
        return true;
    });
    return hits;
}

bool has_zero_divisors(const AlgebraTable& table) {
    bool found = false;
    scan_zero_divisors(table, [&](const ZeroDivisorPair&) {
        found = true;
        return false;
    });
    return found;
}

std::uint64_t radon(std::uint64_t n) {
    if (n == 0) {
        throw ValidationError("radon: n must be positive");
    }
    std::uint64_t a = 0;
    while ((n & 1U) == 0) {
        n >>= 1;
        ++a;
    }
    const std::uint64_t c = a / 4;
    const std::uint64_t d = a % 4;
    return 8 * c + (std::uint64_t{1} << d);
}

} // namespace lhchi
