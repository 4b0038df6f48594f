#include "lhchi/ortho_design.hpp"

#include "lhchi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace lhchi {

OrthogonalDesign::OrthogonalDesign(std::size_t n, std::vector<SignedIndex> entries)
    : n_{n}, entries_(std::move(entries)) {
    if (n_ == 0 || entries_.size() != n_ * n_) {
        throw ValidationError("design needs n*n entries");
    }
    int l = 0;
    for (auto e : entries_) l = std::max(l, std::abs(e));
    if (l == 0) throw ValidationError("design has no variables");
    type_.assign(static_cast<std::size_t>(l), 0);
    for (std::size_t j = 0; j < n_; ++j) {
        if (const auto e = entries_[j]; e != 0) ++type_[static_cast<std::size_t>(std::abs(e)) - 1];
    }
}

const OrthogonalDesign& builtin_design_16() {
    // clang-format off
    static const OrthogonalDesign design(16, {
         1,  2,  3,  4,  5,  6,  7,  8,  9,  2,  3,  4,  5,  6,  7,  8,
        -2,  1, -4,  3, -6,  5,  8, -7, -2,  9,  4, -3,  6, -5, -8,  7,
        -3,  4,  1, -2, -7, -8,  5,  6, -3, -4,  9,  2,  7,  8, -5, -6,
        -4, -3,  2,  1, -8,  7, -6,  5, -4,  3, -2,  9,  8, -7,  6, -5,
        -5,  6,  7,  8,  1, -2, -3, -4, -5, -6, -7, -8,  9,  2,  3,  4,
        -6, -5,  8, -7,  2,  1,  4, -3, -6,  5, -8,  7, -2,  9, -4,  3,
        -7, -8, -5,  6,  3, -4,  1,  2, -7,  8,  5, -6, -3,  4,  9, -2,
        -8,  7, -6, -5,  4,  3, -2,  1, -8, -7,  6,  5, -4, -3,  2,  9,
        -9,  2,  3,  4,  5,  6,  7,  8,  1, -2, -3, -4, -5, -6, -7, -8,
        -2, -9,  4, -3,  6, -5, -8,  7,  2,  1,  4, -3,  6, -5, -8,  7,
        -3, -4, -9,  2,  7,  8, -5, -6,  3, -4,  1,  2,  7,  8, -5, -6,
        -4,  3, -2, -9,  8, -7,  6, -5,  4,  3, -2,  1,  8, -7,  6, -5,
        -5, -6, -7, -8, -9,  2,  3,  4,  5, -6, -7, -8,  1,  2,  3,  4,
        -6,  5, -8,  7, -2, -9, -4,  3,  6,  5, -8,  7, -2,  1, -4,  3,
        -7,  8,  5, -6, -3,  4, -9, -2,  7,  8,  5, -6, -3,  4,  1, -2,
        -8, -7,  6,  5, -4, -3,  2, -9,  8, -7,  6,  5, -4, -3,  2,  1,
    });
    // clang-format on
    return design;
}

bool verify_design(const OrthogonalDesign& d) {
    const std::size_t n = d.order();
    QuadraticForm expected;
    for (std::size_t v = 0; v < d.num_vars(); ++v) {
        if (d.type()[v] != 0) {
            const int x = static_cast<int>(v) + 1;
            expected[{x, x}] = d.type()[v];
        }
    }
    const auto& a = d.entries();
    for (std::size_t i = 0; i < n; ++i) {
        const std::span<const SignedIndex> ri(a.data() + i * n, n);
        for (std::size_t j = i; j < n; ++j) {
            const std::span<const SignedIndex> rj(a.data() + j * n, n);
            const auto form = symbolic_dot(ri, rj);
            if (i == j ? form != expected : !form.empty()) return false;
        }
    }
    return true;
}

ProbabilityVector induced_cell_probabilities(const OrthogonalDesign& d,
                                             std::span<const double> p_vars, double tol) {
    if (p_vars.size() != d.num_vars()) {
        throw ValidationError("expected " + std::to_string(d.num_vars()) + " variable probabilities, got " +
                              std::to_string(p_vars.size()));
    }
    double norm = 0.0;
    for (std::size_t v = 0; v < p_vars.size(); ++v) {
        if (!(p_vars[v] > 0.0) || !std::isfinite(p_vars[v])) {
            throw ValidationError("variable probabilities must be positive");
        }
        norm += d.type()[v] * p_vars[v];
    }
    if (std::abs(norm - 1.0) > tol) {
        throw ValidationError("variable probabilities violate sum s_i p_i = 1 (got " +
                              std::to_string(norm) + ")");
    }
    std::vector<double> p(d.order());
    for (std::size_t c = 1; c <= d.order(); ++c) {
        const auto e = d.at(1, c);
        if (e == 0) throw ValidationError("row 1 of the design has a zero entry");
        p[c - 1] = p_vars[static_cast<std::size_t>(std::abs(e)) - 1];
    }
    return ProbabilityVector(std::move(p), tol);
}

EigenbasisMatrix design_to_eigenbasis(const OrthogonalDesign& d, std::span<const double> p_vars,
                                      double tol) {
    const auto p = induced_cell_probabilities(d, p_vars, tol);
    const std::size_t n = d.order();
    std::vector<double> root(p_vars.size());
    for (std::size_t v = 0; v < p_vars.size(); ++v) root[v] = std::sqrt(p_vars[v]);
    Matrix o(n, n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const auto e = d.at(i, j);
            const double r = e == 0 ? 0.0 : root[static_cast<std::size_t>(std::abs(e)) - 1];
            o(j - 1, i - 1) = e < 0 ? -r : r;
        }
    }
    return EigenbasisMatrix(std::move(o), p, tol);
}

} // namespace lhchi
