#pragma once

#include "lhchi/chisq.hpp"
#include "lhchi/symbolic.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace lhchi {

/// n x n matrix over {0, +-x_1, ..., +-x_l}. The type vector s_1..s_l counts
/// how often each variable occurs in row 1.
class OrthogonalDesign {
public:
    /// `entries` is row-major; the variable count l is the largest |entry|.
    OrthogonalDesign(std::size_t n, std::vector<SignedIndex> entries);

    [[nodiscard]] std::size_t order() const noexcept { return n_; }
    [[nodiscard]] std::size_t num_vars() const noexcept { return type_.size(); }
    [[nodiscard]] const std::vector<int>& type() const noexcept { return type_; }

    /// 1-based.
    [[nodiscard]] SignedIndex at(std::size_t i, std::size_t j) const noexcept {
        return entries_[(i - 1) * n_ + (j - 1)];
    }
    [[nodiscard]] const std::vector<SignedIndex>& entries() const noexcept { return entries_; }

    friend bool operator==(const OrthogonalDesign&, const OrthogonalDesign&) = default;

private:
    std::size_t n_;
    std::vector<SignedIndex> entries_;
    std::vector<int> type_;
};

/// The 16x16 nine-variable design of type (1,2,2,2,2,2,2,2,1).
[[nodiscard]] const OrthogonalDesign& builtin_design_16();

/// Exact check of A A^T = (sum s_i x_i^2) I.
[[nodiscard]] bool verify_design(const OrthogonalDesign& d);

/// Cell probabilities read off row 1: cell c gets p_vars[|A(1,c)|].
/// Requires p_vars > 0 and sum s_i p_vars_i = 1 within `tol`.
[[nodiscard]] ProbabilityVector induced_cell_probabilities(const OrthogonalDesign& d,
                                                           std::span<const double> p_vars,
                                                           double tol = 1e-12);

/// Substitutes x_i = sqrt(p_vars_i) and transposes.
[[nodiscard]] EigenbasisMatrix design_to_eigenbasis(const OrthogonalDesign& d,
                                                    std::span<const double> p_vars,
                                                    double tol = 1e-12);

} // namespace lhchi
