#pragma once

#include "lhchi/coloring.hpp"
#include "lhchi/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lhchi {

/// Identity tolerances: constructed matrices vs. quantities accumulated
/// through floating-point sums.
struct Tolerances {
    double constructed = 1e-12;
    double derived = 1e-10;
};

/// Fully specified multinomial cell probabilities: p_i > 0, sum p_i = 1.
class ProbabilityVector {
public:
    /// Validates positivity and normalisation (|sum - 1| <= tol).
    explicit ProbabilityVector(std::vector<double> p, double tol = 1e-12);

    /// Scales positive weights to sum to one.
    [[nodiscard]] static ProbabilityVector from_weights(std::span<const double> weights);
    [[nodiscard]] static ProbabilityVector uniform(std::size_t k);

    /// Presets 'a' (1,1,1,1,1,1,1,1), 'b' (1,2,3,4,4,3,2,1), 'c' (1,2,3,4,1,2,3,4), normalised.
    [[nodiscard]] static ProbabilityVector preset(char name);

    [[nodiscard]] std::size_t size() const noexcept { return p_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return p_[i]; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return p_; }
    [[nodiscard]] std::vector<double> sqrt_values() const;
    [[nodiscard]] bool is_equiprobable(double tol = 1e-12) const;

private:
    std::vector<double> p_;
};

/// Observed cell frequencies m_i with n = sum m_i.
class CellCounts {
public:
    explicit CellCounts(std::vector<std::int64_t> m);

    [[nodiscard]] std::size_t size() const noexcept { return m_.size(); }
    [[nodiscard]] std::int64_t operator[](std::size_t i) const noexcept { return m_[i]; }
    [[nodiscard]] const std::vector<std::int64_t>& values() const noexcept { return m_; }
    [[nodiscard]] std::int64_t total() const noexcept { return n_; }

private:
    std::vector<std::int64_t> m_;
    std::int64_t n_ = 0;
};

/// Pearson X^2 = sum (m_i - n p_i)^2 / (n p_i).
[[nodiscard]] double pearson_x2(const CellCounts& m, const ProbabilityVector& p);

/// y_i = (m_i - n p_i) / sqrt(n p_i).
[[nodiscard]] std::vector<double> scaled_residuals(const CellCounts& m, const ProbabilityVector& p);

/// Multinomial covariance D(p) - p p^T.
[[nodiscard]] Matrix sigma(const ProbabilityVector& p);

/// D^{-1/2}(p) Sigma D^{-1/2}(p); idempotent with kernel spanned by sqrt(p).
[[nodiscard]] Matrix sigma_star(const ProbabilityVector& p);

/// Orthonormal basis whose first column is sqrt(p). Columns 2..k are then
/// eigenvectors of Sigma* with eigenvalue 1.
class EigenbasisMatrix {
public:
    /// Checks shape, O^T O = I and column 1 = sqrt(p), all within `tol`.
    EigenbasisMatrix(Matrix o, const ProbabilityVector& p, double tol = 1e-12);

    [[nodiscard]] std::size_t size() const noexcept { return o_.rows(); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return o_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return o_(i, j); }

private:
    Matrix o_;
};

/// O_ij = sgn(H_ij) sqrt(p_|H_ij|). Rejects H that is not Latin-Hadamard.
[[nodiscard]] EigenbasisMatrix eigenbasis_from_latin_hadamard(const SignedLatinSquare& h,
                                                              const ProbabilityVector& p);

/// Standard-form Sylvester Hadamard matrix of order 2^w: [[H, H], [H, -H]].
[[nodiscard]] SignMatrix sylvester_hadamard(unsigned w);

/// O = H / sqrt(k) for a Hadamard sign pattern; requires equiprobable p.
[[nodiscard]] EigenbasisMatrix eigenbasis_from_hadamard(const SignMatrix& h,
                                                        const ProbabilityVector& p);

/// Components T_l = v_l^T y for columns l = 2..k (signed; T_l^2 is the
/// one-degree-of-freedom chi-square piece).
struct Decomposition {
    double x2 = 0.0;
    std::vector<double> components;  ///< components[0] is T_2
    std::vector<double> residuals;   ///< y

    [[nodiscard]] double component_sum_of_squares() const;
};

/// Throws ValidationError on dimension mismatch, and ConsistencyError if
/// |X^2 - sum T_l^2| exceeds tol.derived * max(1, X^2).
[[nodiscard]] Decomposition decompose(const CellCounts& m, const ProbabilityVector& p,
                                      const EigenbasisMatrix& o, Tolerances tol = {});

/// Closed-form weighted-difference versions of T_2, T_6 and T_8 for eight
/// cells, with pair signs taken from the reference 8x8 matrix (catalogue 2).
struct ComponentTriple {
    double t2, t6, t8;
};

[[nodiscard]] ComponentTriple component_formulas_t2_t6_t8(const CellCounts& m,
                                                          const ProbabilityVector& p);

/// Eigenvalues of Sigma interlace the sorted probabilities:
/// p_(1) <= l_1 <= p_(2) <= ... <= l_{k-1} <= p_(k), within `tol`.
[[nodiscard]] bool eigen_interlacing_check(const ProbabilityVector& p, double tol = 1e-9);

} // namespace lhchi
