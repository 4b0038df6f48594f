#include "lhchi/montecarlo.hpp"

#include "lhchi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace lhchi {

std::size_t BinningScheme::cell(double x) const {
    return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
}

BinningScheme bin_edges(const DistributionSpec& null, const ProbabilityVector& p) {
    std::vector<double> edges;
    edges.reserve(p.size() - 1);
    double cumulative = 0.0;
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
        cumulative += p[j];
        if (cumulative >= 1.0) throw ValidationError("cumulative probability reached 1 before the last edge");
        const double edge = quantile(null, cumulative);
        if (!edges.empty() && !(edge > edges.back())) {
            throw ValidationError("bin edges are not strictly increasing");
        }
        edges.push_back(edge);
    }
    return {null, p, std::move(edges)};
}

namespace {

void tally(const PowerSimConfig& cfg, const BinningScheme& bins, double x2_crit, double z_crit,
           std::size_t first, std::size_t last, std::vector<std::uint64_t>& hits) {
    const std::size_t k = cfg.p.size();
    std::vector<std::int64_t> counts(k);
    for (std::size_t r = first; r < last; ++r) {
        RandomStream stream(cfg.seed, r);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t s = 0; s < cfg.n; ++s) ++counts[bins.cell(stream.sample(cfg.alternative))];
        const auto d = decompose(CellCounts(counts), cfg.p, cfg.basis);
        if (d.x2 > x2_crit) ++hits[0];
        for (std::size_t l = 0; l < d.components.size(); ++l) {
            if (std::abs(d.components[l]) > z_crit) ++hits[l + 1];
        }
    }
}

} // namespace

PowerSimResult simulate_power(const PowerSimConfig& cfg) {
    if (cfg.reps == 0) throw ValidationError("reps must be at least 1");
    if (cfg.n == 0) throw ValidationError("sample size must be at least 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    if (cfg.basis.size() != cfg.p.size()) throw ValidationError("basis and probability vector differ in size");
    cfg.null.validate();
    cfg.alternative.validate();

    const std::size_t k = cfg.p.size();
    const auto bins = bin_edges(cfg.null, cfg.p);

    PowerSimResult res;
    res.reps = cfg.reps;
    res.x2_critical = chi_square_critical(static_cast<double>(k - 1), cfg.alpha);
    res.z_critical = normal_quantile(1.0 - cfg.alpha / 2.0);

    const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, cfg.reps);
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(k, 0));
    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            const std::size_t first = cfg.reps * t / workers;
            const std::size_t last = cfg.reps * (t + 1) / workers;
            pool.emplace_back([&, t, first, last] {
                try {
                    tally(cfg, bins, res.x2_critical, res.z_critical, first, last, partial[t]);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    res.rejections.assign(k, 0);
    for (const auto& part : partial) {
        for (std::size_t i = 0; i < k; ++i) res.rejections[i] += part[i];
    }
    res.statistics.push_back("X2");
    for (std::size_t l = 2; l <= k; ++l) res.statistics.push_back("T" + std::to_string(l));
    const auto reps = static_cast<double>(cfg.reps);
    for (auto hits : res.rejections) {
        const double rate = static_cast<double>(hits) / reps;
        res.rates.push_back(rate);
        res.standard_errors.push_back(std::sqrt(rate * (1.0 - rate) / reps));
    }
    return res;
}

} // namespace lhchi
