#include "lhchi/distributions.hpp"

#include "lhchi/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace lhchi {

namespace {

void check_params(const DistributionSpec& s) {
    switch (s.family) {
    case Family::normal:
        if (!std::isfinite(s.a) || !(s.b > 0.0) || !std::isfinite(s.b)) {
            throw ValidationError("normal needs finite mean and sd > 0");
        }
        break;
    case Family::student_t:
        if (!(s.a >= 1.0) || !std::isfinite(s.a)) throw ValidationError("t needs nu >= 1");
        break;
    case Family::cauchy: break;
    case Family::gamma:
        if (!(s.a > 0.0) || !(s.b > 0.0) || !std::isfinite(s.a) || !std::isfinite(s.b)) {
            throw ValidationError("gamma needs shape > 0 and scale > 0");
        }
        break;
    }
}

std::vector<double> parse_numbers(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
            throw ValidationError("bad number '" + std::string(token) + "' in distribution spec");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) throw ValidationError("trailing comma in distribution spec");
    }
    return out;
}

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
    double v = 0.0;
    for (std::size_t i = N; i-- > 0;) v = v * x + c[i];
    return v;
}

} // namespace

DistributionSpec DistributionSpec::normal(double mean, double sd) {
    DistributionSpec s{Family::normal, mean, sd};
    check_params(s);
    return s;
}

DistributionSpec DistributionSpec::student_t(double nu) {
    DistributionSpec s{Family::student_t, nu, 0.0};
    check_params(s);
    return s;
}

DistributionSpec DistributionSpec::cauchy() { return {Family::cauchy, 1.0, 0.0}; }

DistributionSpec DistributionSpec::gamma(double shape, double scale) {
    DistributionSpec s{Family::gamma, shape, scale};
    check_params(s);
    return s;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
    const auto colon = text.find(':');
    const auto name = text.substr(0, colon);
    const auto args = colon == std::string_view::npos ? std::vector<double>{}
                                                      : parse_numbers(text.substr(colon + 1));
    auto arity = [&](std::size_t n) {
        if (args.size() != n) {
            throw ValidationError("distribution '" + std::string(name) + "' takes " + std::to_string(n) +
                                  " parameter(s)");
        }
    };
    if (name == "normal" || name == "N") {
        arity(2);
        return normal(args[0], args[1]);
    }
    if (name == "t") {
        arity(1);
        return student_t(args[0]);
    }
    if (name == "cauchy") {
        arity(0);
        return cauchy();
    }
    if (name == "gamma") {
        arity(2);
        return gamma(args[0], args[1]);
    }
    throw ValidationError("unknown distribution '" + std::string(name) +
                          "' (expected normal, t, cauchy or gamma)");
}

void DistributionSpec::validate() const { check_params(*this); }

std::string DistributionSpec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (family) {
    case Family::normal: os << "normal:" << a << ',' << b; break;
    case Family::student_t: os << "t:" << a; break;
    case Family::cauchy: os << "cauchy"; break;
    case Family::gamma: os << "gamma:" << a << ',' << b; break;
    }
    return os.str();
}

double normal_quantile(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw ValidationError("quantile probability must lie in (0, 1)");

    static constexpr std::array<double, 8> a{
        3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4, 2.5090809287301226727e3};
    static constexpr std::array<double, 8> b{
        1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
        2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
        5.2264952788528545610e3};
    static constexpr std::array<double, 8> c{
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr std::array<double, 8> d{
        1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
        1.05075007164441684324e-9};
    static constexpr std::array<double, 8> e{
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr std::array<double, 8> f{
        1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
        2.04426310338993978564e-15};

    const double q = prob - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = std::sqrt(-std::log(q < 0.0 ? prob : 1.0 - prob));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        v = poly(e, r) / poly(f, r);
    }
    return q < 0.0 ? -v : v;
}

double quantile(const DistributionSpec& spec, double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw ValidationError("quantile probability must lie in (0, 1)");
    check_params(spec);
    switch (spec.family) {
    case Family::normal: return spec.a + spec.b * normal_quantile(prob);
    case Family::student_t: return boost::math::quantile(boost::math::students_t(spec.a), prob);
    case Family::cauchy: return std::tan(std::numbers::pi * (prob - 0.5));
    case Family::gamma:
        return boost::math::quantile(boost::math::gamma_distribution<>(spec.a, spec.b), prob);
    }
    throw ValidationError("unknown distribution family");
}

double cdf(const DistributionSpec& spec, double x) {
    check_params(spec);
    switch (spec.family) {
    case Family::normal: return 0.5 * std::erfc(-(x - spec.a) / (spec.b * std::numbers::sqrt2));
    case Family::student_t: return boost::math::cdf(boost::math::students_t(spec.a), x);
    case Family::cauchy: return 0.5 + std::atan(x) / std::numbers::pi;
    case Family::gamma:
        if (x <= 0.0) return 0.0;
        return boost::math::cdf(boost::math::gamma_distribution<>(spec.a, spec.b), x);
    }
    throw ValidationError("unknown distribution family");
}

double chi_square_critical(double df, double alpha) {
    if (!(df > 0.0)) throw ValidationError("degrees of freedom must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(df), alpha));
}

DistributionSpec matched_normal_null(const DistributionSpec& g) {
    if (g.family != Family::gamma) throw ValidationError("matched normal null needs a gamma spec");
    check_params(g);
    return DistributionSpec::normal(g.a * g.b, std::sqrt(g.a) * g.b);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RandomStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
}

double RandomStream::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double RandomStream::standard_gamma(double shape) {
    if (!(shape > 0.0)) throw ValidationError("gamma shape must be positive");
    if (shape < 1.0) {
        const double g = standard_gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = standard_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RandomStream::chi_square(double df) { return 2.0 * standard_gamma(0.5 * df); }

double RandomStream::sample(const DistributionSpec& spec) {
    switch (spec.family) {
    case Family::normal: return spec.a + spec.b * standard_normal();
    case Family::student_t: {
        const double z = standard_normal();
        return z / std::sqrt(chi_square(spec.a) / spec.a);
    }
    case Family::cauchy: {
        const double z = standard_normal();
        return z / std::sqrt(chi_square(1.0));
    }
    case Family::gamma: return spec.b * standard_gamma(spec.a);
    }
    throw ValidationError("unknown distribution family");
}

} // namespace lhchi
