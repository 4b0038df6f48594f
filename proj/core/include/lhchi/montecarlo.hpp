#pragma once

#include "lhchi/chisq.hpp"
#include "lhchi/distributions.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lhchi {

/// k cells cut at null quantiles of the cumulative probabilities.
struct BinningScheme {
    DistributionSpec null;
    ProbabilityVector p;
    std::vector<double> edges;  ///< k - 1 strictly increasing cut points

    /// 0-based cell of x; a value equal to an edge falls in the upper cell.
    [[nodiscard]] std::size_t cell(double x) const;
};

[[nodiscard]] BinningScheme bin_edges(const DistributionSpec& null, const ProbabilityVector& p);

struct PowerSimConfig {
    DistributionSpec null;
    DistributionSpec alternative;
    ProbabilityVector p;
    EigenbasisMatrix basis;
    std::size_t n = 200;
    std::size_t reps = 10000;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// Rows: "X2", then "T2".."Tk".
struct PowerSimResult {
    std::vector<std::string> statistics;
    std::vector<std::uint64_t> rejections;
    std::vector<double> rates;
    std::vector<double> standard_errors;
    std::size_t reps = 0;
    double x2_critical = 0.0;
    double z_critical = 0.0;
};

/// Replication r draws from RandomStream(seed, r), so the result depends on
/// (seed, reps) only and never on the thread count.
[[nodiscard]] PowerSimResult simulate_power(const PowerSimConfig& cfg);

} // namespace lhchi
