#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace lhchi {

enum class Family { normal, student_t, cauchy, gamma };

/// normal(mean, sd), student_t(nu), cauchy (= t(1)), gamma(shape, scale).
struct DistributionSpec {
    Family family = Family::normal;
    double a = 0.0;  ///< mean / nu / shape
    double b = 1.0;  ///< sd / unused / scale

    [[nodiscard]] static DistributionSpec normal(double mean, double sd);
    [[nodiscard]] static DistributionSpec student_t(double nu);
    [[nodiscard]] static DistributionSpec cauchy();
    [[nodiscard]] static DistributionSpec gamma(double shape, double scale);

    /// Parses `normal:0,1.3`, `t:2`, `cauchy`, `gamma:5,0.2`.
    [[nodiscard]] static DistributionSpec parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;

    /// Throws ValidationError on out-of-range parameters.
    void validate() const;

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// Inverse standard normal CDF (Wichura's AS241, PPND16).
[[nodiscard]] double normal_quantile(double prob);

[[nodiscard]] double quantile(const DistributionSpec& spec, double prob);
[[nodiscard]] double cdf(const DistributionSpec& spec, double x);

/// Upper chi-square critical value chi2(df, 1 - alpha).
[[nodiscard]] double chi_square_critical(double df, double alpha);

/// N(shape * scale, sqrt(shape) * scale) for a gamma spec.
[[nodiscard]] DistributionSpec matched_normal_null(const DistributionSpec& g);

/// Independent stream per (seed, stream id); draws do not depend on any
/// other stream, so replications can run on any thread.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    double standard_normal();
    /// Gamma(shape, 1).
    double standard_gamma(double shape);
    double chi_square(double df);
    double sample(const DistributionSpec& spec);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace lhchi
