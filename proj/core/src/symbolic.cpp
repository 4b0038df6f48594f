#include "lhchi/symbolic.hpp"

#include "lhchi/errors.hpp"

#include <cstdlib>

namespace lhchi {

QuadraticForm symbolic_dot(std::span<const SignedIndex> u, std::span<const SignedIndex> v) {
    if (u.size() != v.size()) {
        throw ValidationError("symbolic_dot: length mismatch");
    }
    QuadraticForm form;
    for (std::size_t t = 0; t < u.size(); ++t) {
        if (u[t] == 0 || v[t] == 0) {
            continue;
        }
        int a = std::abs(u[t]);
        int b = std::abs(v[t]);
        if (a > b) std::swap(a, b);
        const long sign = ((u[t] > 0) == (v[t] > 0)) ? 1 : -1;
        auto it = form.try_emplace(Monomial{a, b}, 0).first;
        it->second += sign;
        if (it->second == 0) {
            form.erase(it);
        }
    }
    return form;
}

std::vector<SignedIndex> column_of(std::span<const SignedIndex> row_major, std::size_t n,
                                   std::size_t j) {
    std::vector<SignedIndex> col(n);
    for (std::size_t i = 0; i < n; ++i) {
        col[i] = row_major[i * n + j];
    }
    return col;
}

} // namespace lhchi
