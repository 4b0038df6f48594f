#include "lhchi/chisq.hpp"
#include "lhchi/errors.hpp"
#include "lhchi/ortho_design.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace lhchi;

namespace {

ProbabilityVector random_p(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w(k);
    for (auto& v : w) v = u(rng);
    return ProbabilityVector::from_weights(w);
}

CellCounts random_counts(std::mt19937_64& rng, std::size_t k, int max = 60) {
    std::uniform_int_distribution<std::int64_t> u(0, max);
    std::vector<std::int64_t> m(k);
    for (auto& v : m) v = u(rng);
    if (m[0] == 0) m[0] = 1;
    return CellCounts(m);
}

EigenbasisMatrix basis_for(const ProbabilityVector& p) {
    switch (p.size()) {
    case 2: return eigenbasis_from_latin_hadamard(color(LatinSquare(1), {}), p);
    case 4: return eigenbasis_from_latin_hadamard(catalog_matrix(1), p);
    default: return eigenbasis_from_latin_hadamard(catalog_matrix(2), p);
    }
}

// Secular equation for the nonzero eigenvalues of D(p) - p p^T.
double secular(const ProbabilityVector& p, double lambda) {
    double s = 0.0;
    for (double v : p.values()) s += v * v / (v - lambda);
    return s - 1.0;
}

} // namespace

TEST(ProbabilityVector, Validation) {
    EXPECT_THROW(ProbabilityVector({0.5, 0.6}), ValidationError);
    EXPECT_THROW(ProbabilityVector({1.0, 0.0}), ValidationError);
    EXPECT_THROW(ProbabilityVector({}), ValidationError);
    EXPECT_NO_THROW(ProbabilityVector({0.25, 0.75}));
    EXPECT_THROW((void)ProbabilityVector::preset('d'), ValidationError);
}

TEST(ProbabilityVector, Presets) {
    EXPECT_TRUE(ProbabilityVector::preset('a').is_equiprobable());
    EXPECT_DOUBLE_EQ(ProbabilityVector::preset('b')[3], 4.0 / 20.0);
    EXPECT_DOUBLE_EQ(ProbabilityVector::preset('c')[4], 1.0 / 20.0);
    EXPECT_FALSE(ProbabilityVector::preset('c').is_equiprobable());
}

TEST(CellCounts, Validation) {
    EXPECT_THROW(CellCounts({1, -1}), ValidationError);
    EXPECT_EQ(CellCounts({3, 4, 5}).total(), 12);
}

TEST(Pearson, HandValues) {
    const ProbabilityVector half({0.5, 0.5});
    EXPECT_NEAR(pearson_x2(CellCounts({6, 4}), half), 0.4, 1e-15);
    EXPECT_EQ(pearson_x2(CellCounts({5, 5}), half), 0.0);
    const auto p = ProbabilityVector::preset('b');
    EXPECT_NEAR(pearson_x2(CellCounts({10, 20, 30, 40, 40, 30, 20, 10}), p), 0.0, 1e-12);
    EXPECT_THROW((void)pearson_x2(CellCounts({1, 2, 3}), half), ValidationError);
}

TEST(Pearson, MatchesObservedMinusExpectedForm) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_p(rng, 8);
        const auto m = random_counts(rng, 8);
        // sum m_i^2 / (n p_i) - n
        double alt = 0.0;
        const double n = static_cast<double>(m.total());
        for (std::size_t i = 0; i < 8; ++i) alt += static_cast<double>(m[i] * m[i]) / (n * p[i]);
        alt -= n;
        EXPECT_NEAR(pearson_x2(m, p), alt, 1e-9 * std::max(1.0, alt));
    }
}

TEST(Residuals, HandValuesAndIdentities) {
    const auto y = scaled_residuals(CellCounts({6, 4}), ProbabilityVector({0.5, 0.5}));
    EXPECT_NEAR(y[0], 1.0 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(y[1], -1.0 / std::sqrt(5.0), 1e-15);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_p(rng, 8);
        const auto m = random_counts(rng, 8);
        const auto r = scaled_residuals(m, p);
        double yy = 0.0, conserved = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            yy += r[i] * r[i];
            conserved += r[i] * std::sqrt(p[i]);
        }
        EXPECT_NEAR(yy, pearson_x2(m, p), 1e-10 * std::max(1.0, yy));
        EXPECT_NEAR(conserved, 0.0, 1e-12);
    }
}

TEST(Sigma, HandValues) {
    const auto s = sigma(ProbabilityVector({0.5, 0.5}));
    EXPECT_DOUBLE_EQ(s(0, 0), 0.25);
    EXPECT_DOUBLE_EQ(s(0, 1), -0.25);
    EXPECT_DOUBLE_EQ(s(1, 1), 0.25);

    for (std::size_t k : {2u, 4u, 8u, 16u}) {
        const auto e = sigma(ProbabilityVector::uniform(k));
        const double kk = static_cast<double>(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                EXPECT_NEAR(e(i, j), ((i == j ? 1.0 : 0.0) - 1.0 / kk) / kk, 1e-16);
    }
}

TEST(SigmaStar, IdempotentWithSqrtPKernel) {
    std::mt19937_64 rng(3);
    for (std::size_t k : {2u, 4u, 8u, 16u}) {
        for (int t = 0; t < 25; ++t) {
            const auto p = random_p(rng, k);
            const auto s = sigma_star(p);
            EXPECT_LT(max_abs_diff(s * s, s), 1e-12);
            const auto kernel = s * std::span<const double>(p.sqrt_values());
            for (double v : kernel) EXPECT_LT(std::abs(v), 1e-12);
            double trace = 0.0;
            for (std::size_t i = 0; i < k; ++i) trace += s(i, i);
            EXPECT_NEAR(trace, static_cast<double>(k - 1), 1e-12);

            // D^{-1/2} Sigma D^{-1/2} computed the long way.
            const auto raw = sigma(p);
            Matrix scaled(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) scaled(i, j) = raw(i, j) / std::sqrt(p[i] * p[j]);
            EXPECT_LT(max_abs_diff(scaled, s), 1e-12);
        }
    }
}

TEST(Eigenbasis, TwoCells) {
    const ProbabilityVector p({0.3, 0.7});
    const auto o = basis_for(p);
    EXPECT_NEAR(o(0, 0), std::sqrt(0.3), 1e-15);
    EXPECT_NEAR(o(1, 0), std::sqrt(0.7), 1e-15);
    EXPECT_NEAR(o(0, 1), std::sqrt(0.7), 1e-15);
    EXPECT_NEAR(o(1, 1), -std::sqrt(0.3), 1e-15);
}

TEST(Eigenbasis, EquiprobableIsScaledSignPattern) {
    const auto p = ProbabilityVector::uniform(8);
    const auto h = catalog_matrix(7);
    const auto o = eigenbasis_from_latin_hadamard(h, p);
    for (std::size_t i = 1; i <= 8; ++i)
        for (std::size_t j = 1; j <= 8; ++j)
            EXPECT_NEAR(o(i - 1, j - 1), h.signs().at(i, j) / std::sqrt(8.0), 1e-15);
}

TEST(Eigenbasis, PresetBIsOrthonormalEigenvectors) {
    const auto p = ProbabilityVector::preset('b');
    const auto o = eigenbasis_from_latin_hadamard(catalog_matrix(2), p);
    EXPECT_LT(max_abs_diff(o.matrix().transpose() * o.matrix(), Matrix::identity(8)), 1e-12);
    const auto s = sigma_star(p);
    for (std::size_t l = 1; l < 8; ++l) {
        const auto v = o.matrix().column(l);
        const auto sv = s * std::span<const double>(v);
        for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(sv[i], v[i], 1e-10);
    }
}

TEST(Eigenbasis, RejectsInvalidInput) {
    const auto p = ProbabilityVector::preset('b');
    EXPECT_THROW((void)eigenbasis_from_latin_hadamard(color(LatinSquare(3), parse_bitstring("0000")),
                                                      ProbabilityVector::uniform(4)),
                 ValidationError);
    // An order-16 colouring is never Latin-Hadamard.
    EXPECT_THROW((void)eigenbasis_from_latin_hadamard(color(LatinSquare(4), ChoiceVector(11, false)),
                                                      ProbabilityVector::uniform(16)),
                 ValidationError);
    EXPECT_THROW((void)eigenbasis_from_hadamard(sylvester_hadamard(3), p), ValidationError);
    EXPECT_THROW(EigenbasisMatrix(Matrix::identity(8), p), ValidationError);
}

TEST(Sylvester, Construction) {
    const auto h1 = sylvester_hadamard(1);
    EXPECT_EQ(h1.entries(), (std::vector<std::int8_t>{1, 1, 1, -1}));
    for (unsigned w = 0; w <= 5; ++w) {
        const auto h = sylvester_hadamard(w);
        EXPECT_TRUE(sign_pattern_is_hadamard(h));
        for (std::size_t i = 1; i <= h.size(); ++i) {
            EXPECT_EQ(h.at(1, i), 1);
            EXPECT_EQ(h.at(i, 1), 1);
        }
    }
    const auto o = eigenbasis_from_hadamard(sylvester_hadamard(3), ProbabilityVector::uniform(8));
    EXPECT_LT(max_abs_diff(o.matrix().transpose() * o.matrix(), Matrix::identity(8)), 1e-12);
}

TEST(Decompose, PerfectFitHasZeroComponents) {
    const auto p = ProbabilityVector::preset('b');
    const auto d = decompose(CellCounts({10, 20, 30, 40, 40, 30, 20, 10}), p, basis_for(p));
    EXPECT_NEAR(d.x2, 0.0, 1e-12);
    for (double t : d.components) EXPECT_NEAR(t, 0.0, 1e-12);
}

TEST(Decompose, PartitionIdentityRandomized) {
    std::mt19937_64 rng(19);
    for (std::size_t k : {2u, 4u, 8u}) {
        for (int t = 0; t < 200; ++t) {
            const auto p = random_p(rng, k);
            const auto m = random_counts(rng, k);
            const auto d = decompose(m, p, basis_for(p));
            EXPECT_EQ(d.components.size(), k - 1);
            EXPECT_LE(std::abs(d.x2 - d.component_sum_of_squares()), 1e-10 * std::max(1.0, d.x2));
        }
    }
}

TEST(Decompose, SixteenCells) {
    std::mt19937_64 rng(23);
    const auto& design = builtin_design_16();
    for (int t = 0; t < 20; ++t) {
        std::uniform_real_distribution<double> u(0.1, 1.0);
        std::vector<double> w(9);
        for (auto& v : w) v = u(rng);
        double norm = 0.0;
        for (std::size_t i = 0; i < 9; ++i) norm += design.type()[i] * w[i];
        for (auto& v : w) v /= norm;
        const auto p = induced_cell_probabilities(design, w);
        const auto d = decompose(random_counts(rng, 16), p, design_to_eigenbasis(design, w));
        EXPECT_LE(std::abs(d.x2 - d.component_sum_of_squares()), 1e-10 * std::max(1.0, d.x2));
    }
    const auto u16 = ProbabilityVector::uniform(16);
    const auto d = decompose(random_counts(rng, 16), u16, eigenbasis_from_hadamard(sylvester_hadamard(4), u16));
    EXPECT_LE(std::abs(d.x2 - d.component_sum_of_squares()), 1e-10 * std::max(1.0, d.x2));
}

TEST(Decompose, DimensionMismatch) {
    const auto p = ProbabilityVector::preset('a');
    EXPECT_THROW((void)decompose(CellCounts({1, 2, 3}), p, basis_for(p)), ValidationError);
}

TEST(Decompose, SecondComponentMatchesPrintedFormula) {
    const auto p = ProbabilityVector::uniform(8);
    const CellCounts m({30, 20, 25, 25, 25, 25, 25, 25});
    const auto d = decompose(m, p, eigenbasis_from_latin_hadamard(catalog_matrix(2), p));
    const double n = 200.0;
    auto ph = [&](std::size_t i) { return static_cast<double>(m[i - 1]) / n; };
    auto pp = [&](std::size_t i) { return p[i - 1]; };
    double printed = 0.0;
    for (std::size_t a = 1; a <= 7; a += 2) {
        printed += std::sqrt(pp(a + 1) / pp(a)) * ph(a) - std::sqrt(pp(a) / pp(a + 1)) * ph(a + 1);
    }
    printed *= std::sqrt(n);
    EXPECT_NEAR(d.components[0], printed, 1e-12);
    EXPECT_NEAR(d.components[0], 10.0 / std::sqrt(200.0), 1e-12);
}

TEST(ComponentFormulas, AgreeWithDecomposition) {
    std::mt19937_64 rng(29);
    for (char preset : {'a', 'b', 'c'}) {
        const auto p = ProbabilityVector::preset(preset);
        const auto o = eigenbasis_from_latin_hadamard(catalog_matrix(2), p);
        for (int t = 0; t < 50; ++t) {
            const auto m = random_counts(rng, 8);
            const auto d = decompose(m, p, o);
            const auto f = component_formulas_t2_t6_t8(m, p);
            EXPECT_NEAR(f.t2, d.components[0], 1e-10);
            EXPECT_NEAR(f.t6, d.components[4], 1e-10);
            EXPECT_NEAR(f.t8, d.components[6], 1e-10);
        }
    }
    const auto p = ProbabilityVector::preset('c');
    const auto zero = component_formulas_t2_t6_t8(CellCounts({10, 20, 30, 40, 10, 20, 30, 40}), p);
    EXPECT_NEAR(zero.t2, 0.0, 1e-12);
    EXPECT_NEAR(zero.t6, 0.0, 1e-12);
    EXPECT_NEAR(zero.t8, 0.0, 1e-12);
    EXPECT_THROW((void)component_formulas_t2_t6_t8(CellCounts({1, 2}), ProbabilityVector({0.5, 0.5})),
                 ValidationError);
}

TEST(Lemma, CalculationIdentities) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_p(rng, 8);
        const auto root = p.sqrt_values();
        Matrix d_inv(8, 8), d_mhalf(8, 8), d_half(8, 8);
        for (std::size_t i = 0; i < 8; ++i) {
            d_inv(i, i) = 1.0 / p[i];
            d_mhalf(i, i) = 1.0 / std::sqrt(p[i]);
            d_half(i, i) = std::sqrt(p[i]);
        }
        const std::vector<double> ones(8, 1.0);
        const auto a = d_inv * std::span<const double>(p.values());
        const auto c = d_mhalf * std::span<const double>(root);
        const auto dd = d_mhalf * std::span<const double>(p.values());
        const auto e = d_half * std::span<const double>(ones);
        double b = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            EXPECT_NEAR(a[i], 1.0, 1e-12);
            EXPECT_NEAR(c[i], 1.0, 1e-12);
            EXPECT_NEAR(dd[i], root[i], 1e-12);
            EXPECT_NEAR(e[i], root[i], 1e-12);
            b += p[i] * a[i];
        }
        EXPECT_NEAR(b, 1.0, 1e-12);
    }
}

TEST(Interlacing, EquiprobableAndTwoCell) {
    const auto e = jacobi_eigenvalues(sigma(ProbabilityVector::uniform(8)));
    EXPECT_NEAR(e[0], 0.0, 1e-12);
    for (std::size_t i = 1; i < 8; ++i) EXPECT_NEAR(e[i], 0.125, 1e-12);
    EXPECT_TRUE(eigen_interlacing_check(ProbabilityVector::uniform(8)));

    const auto two = jacobi_eigenvalues(sigma(ProbabilityVector({0.3, 0.7})));
    EXPECT_NEAR(two[1], 0.42, 1e-12);
    EXPECT_TRUE(eigen_interlacing_check(ProbabilityVector({0.3, 0.7})));
}

TEST(Interlacing, JacobiRootsSolveSecularEquation) {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 200; ++t) {
        const auto p = random_p(rng, 8);
        EXPECT_TRUE(eigen_interlacing_check(p));
        const auto lambda = jacobi_eigenvalues(sigma(p));
        for (std::size_t i = 1; i < 8; ++i) {
            // Roots are simple for distinct p; the secular function vanishes there.
            const double f = secular(p, lambda[i]);
            const double h = 1e-7;
            const double slope = (secular(p, lambda[i] + h) - secular(p, lambda[i] - h)) / (2 * h);
            EXPECT_LT(std::abs(f / slope), 1e-10);
        }
    }
}
