#include "lhchi/chisq.hpp"

#include "lhchi/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace lhchi {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                              " vs " + std::to_string(b) + ")");
    }
}

} // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> p, double tol) : p_(std::move(p)) {
    if (p_.empty()) throw ValidationError("probability vector is empty");
    double sum = 0.0;
    for (double v : p_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError("cell probabilities must be positive and finite");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
        throw ValidationError("cell probabilities must sum to 1 (got " + std::to_string(sum) + ")");
    }
}

ProbabilityVector ProbabilityVector::from_weights(std::span<const double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("weights must be positive and finite");
        sum += w;
    }
    std::vector<double> p(weights.begin(), weights.end());
    for (double& v : p) v /= sum;
    return ProbabilityVector(std::move(p), 1e-12);
}

ProbabilityVector ProbabilityVector::uniform(std::size_t k) {
    if (k == 0) throw ValidationError("probability vector is empty");
    return ProbabilityVector(std::vector<double>(k, 1.0 / static_cast<double>(k)), 1e-12);
}

ProbabilityVector ProbabilityVector::preset(char name) {
    static constexpr std::array<double, 8> b{1, 2, 3, 4, 4, 3, 2, 1};
    static constexpr std::array<double, 8> c{1, 2, 3, 4, 1, 2, 3, 4};
    switch (name) {
    case 'a': return uniform(8);
    case 'b': return from_weights(b);
    case 'c': return from_weights(c);
    default: throw ValidationError(std::string("unknown preset '") + name + "' (expected a, b or c)");
    }
}

std::vector<double> ProbabilityVector::sqrt_values() const {
    std::vector<double> out(p_.size());
    std::transform(p_.begin(), p_.end(), out.begin(), [](double v) { return std::sqrt(v); });
    return out;
}

bool ProbabilityVector::is_equiprobable(double tol) const {
    const double target = 1.0 / static_cast<double>(p_.size());
    return std::all_of(p_.begin(), p_.end(), [&](double v) { return std::abs(v - target) <= tol; });
}

CellCounts::CellCounts(std::vector<std::int64_t> m) : m_(std::move(m)) {
    if (m_.empty()) throw ValidationError("cell counts are empty");
    for (auto v : m_) {
        if (v < 0) throw ValidationError("cell counts must be non-negative");
        n_ += v;
    }
}

double pearson_x2(const CellCounts& m, const ProbabilityVector& p) {
    require_same_size(m.size(), p.size(), "pearson_x2");
    const auto n = static_cast<double>(m.total());
    if (n <= 0.0) throw ValidationError("sample size must be positive");
    double x2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e = n * p[i];
        const double d = static_cast<double>(m[i]) - e;
        x2 += d * d / e;
    }
    return x2;
}

std::vector<double> scaled_residuals(const CellCounts& m, const ProbabilityVector& p) {
    require_same_size(m.size(), p.size(), "scaled_residuals");
    const auto n = static_cast<double>(m.total());
    if (n <= 0.0) throw ValidationError("sample size must be positive");
    std::vector<double> y(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double e = n * p[i];
        y[i] = (static_cast<double>(m[i]) - e) / std::sqrt(e);
    }
    return y;
}

Matrix sigma(const ProbabilityVector& p) {
    const std::size_t k = p.size();
    Matrix s(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) s(i, j) = (i == j ? p[i] : 0.0) - p[i] * p[j];
    }
    return s;
}

Matrix sigma_star(const ProbabilityVector& p) {
    const std::size_t k = p.size();
    Matrix s(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) s(i, j) = (i == j ? 1.0 : 0.0) - std::sqrt(p[i] * p[j]);
    }
    return s;
}

EigenbasisMatrix::EigenbasisMatrix(Matrix o, const ProbabilityVector& p, double tol)
    : o_(std::move(o)) {
    const std::size_t k = p.size();
    if (o_.rows() != k || o_.cols() != k) {
        throw ValidationError("eigenbasis must be " + std::to_string(k) + "x" + std::to_string(k));
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (std::abs(o_(i, 0) - std::sqrt(p[i])) > tol) {
            throw ValidationError("first eigenbasis column must equal sqrt(p)");
        }
    }
    const Matrix gram = o_.transpose() * o_;
    if (max_abs_diff(gram, Matrix::identity(k)) > tol) {
        throw ValidationError("eigenbasis columns are not orthonormal");
    }
}

EigenbasisMatrix eigenbasis_from_latin_hadamard(const SignedLatinSquare& h,
                                                const ProbabilityVector& p) {
    require_same_size(h.size(), p.size(), "eigenbasis_from_latin_hadamard");
    if (!is_latin_hadamard(h)) throw ValidationError("matrix is not Latin-Hadamard");
    const std::size_t k = h.size();
    Matrix o(k, k);
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= k; ++j) {
            const int v = h.at(i, j);
            const double r = std::sqrt(p[static_cast<std::size_t>(std::abs(v)) - 1]);
            o(i - 1, j - 1) = v < 0 ? -r : r;
        }
    }
    return EigenbasisMatrix(std::move(o), p);
}

SignMatrix sylvester_hadamard(unsigned w) {
    if (w > LatinSquare::max_exponent) throw ValidationError("Sylvester order too large");
    std::size_t n = 1;
    std::vector<std::int8_t> h{1};
    for (unsigned level = 0; level < w; ++level) {
        const std::size_t m = 2 * n;
        std::vector<std::int8_t> next(m * m);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto v = h[i * n + j];
                next[i * m + j] = v;
                next[i * m + j + n] = v;
                next[(i + n) * m + j] = v;
                next[(i + n) * m + j + n] = static_cast<std::int8_t>(-v);
            }
        }
        h = std::move(next);
        n = m;
    }
    return SignMatrix(n, std::move(h));
}

EigenbasisMatrix eigenbasis_from_hadamard(const SignMatrix& h, const ProbabilityVector& p) {
    require_same_size(h.size(), p.size(), "eigenbasis_from_hadamard");
    if (!p.is_equiprobable()) {
        throw ValidationError("a plain Hadamard basis requires equiprobable cells");
    }
    const std::size_t k = h.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    Matrix o(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) o(i, j) = h.at(i + 1, j + 1) * scale;
    }
    return EigenbasisMatrix(std::move(o), p);
}

double Decomposition::component_sum_of_squares() const {
    return std::accumulate(components.begin(), components.end(), 0.0,
                           [](double acc, double t) { return acc + t * t; });
}

Decomposition decompose(const CellCounts& m, const ProbabilityVector& p, const EigenbasisMatrix& o,
                        Tolerances tol) {
    require_same_size(m.size(), p.size(), "decompose");
    require_same_size(o.size(), p.size(), "decompose");
    Decomposition d;
    d.x2 = pearson_x2(m, p);
    d.residuals = scaled_residuals(m, p);
    const std::size_t k = p.size();
    d.components.resize(k - 1);
    for (std::size_t l = 1; l < k; ++l) {
        double t = 0.0;
        for (std::size_t i = 0; i < k; ++i) t += o(i, l) * d.residuals[i];
        d.components[l - 1] = t;
    }
    const double gap = std::abs(d.x2 - d.component_sum_of_squares());
    if (gap > tol.derived * std::max(1.0, d.x2)) {
        throw ConsistencyError("chi-square partition failed: |X2 - sum T^2| = " + std::to_string(gap));
    }
    return d;
}

namespace {

struct SignedPair {
    int sign;
    std::size_t a, b;
};

double pair_component(std::span<const SignedPair> pairs, const CellCounts& m,
                      const ProbabilityVector& p) {
    const auto n = static_cast<double>(m.total());
    double sum = 0.0;
    for (const auto& [sign, a, b] : pairs) {
        const double pa = p[a - 1];
        const double pb = p[b - 1];
        const double ha = static_cast<double>(m[a - 1]) / n;
        const double hb = static_cast<double>(m[b - 1]) / n;
        sum += sign * (std::sqrt(pb / pa) * ha - std::sqrt(pa / pb) * hb);
    }
    return std::sqrt(n) * sum;
}

} // namespace

ComponentTriple component_formulas_t2_t6_t8(const CellCounts& m, const ProbabilityVector& p) {
    if (m.size() != 8 || p.size() != 8) throw ValidationError("component formulas need k = 8");
    if (m.total() <= 0) throw ValidationError("sample size must be positive");
    static constexpr std::array<SignedPair, 4> t2{{{1, 1, 2}, {1, 3, 4}, {1, 5, 6}, {1, 7, 8}}};
    static constexpr std::array<SignedPair, 4> t6{{{1, 1, 6}, {1, 2, 5}, {-1, 3, 8}, {-1, 4, 7}}};
    static constexpr std::array<SignedPair, 4> t8{{{1, 1, 8}, {1, 2, 7}, {1, 3, 6}, {1, 4, 5}}};
    return {pair_component(t2, m, p), pair_component(t6, m, p), pair_component(t8, m, p)};
}

bool eigen_interlacing_check(const ProbabilityVector& p, double tol) {
    const std::size_t k = p.size();
    if (k < 2) return true;
    const auto lambda = jacobi_eigenvalues(sigma(p));
    std::vector<double> sorted = p.values();
    std::sort(sorted.begin(), sorted.end());
    // lambda[0] is the zero eigenvalue along 1.
    if (std::abs(lambda[0]) > tol) return false;
    for (std::size_t i = 1; i < k; ++i) {
        if (lambda[i] < sorted[i - 1] - tol || lambda[i] > sorted[i] + tol) return false;
    }
    return true;
}

} // namespace lhchi
