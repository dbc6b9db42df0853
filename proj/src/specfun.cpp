#include "cxosc/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cxosc/error.hpp"

namespace cxosc {

std::vector<double> normalized_hermite_sequence(int n_max, double x)
{
    if (n_max < 0)
        throw ArgumentError("normalized_hermite_sequence: n_max must be non-negative, got " +
                            std::to_string(n_max));
    if (!std::isfinite(x))
        throw ArgumentError("normalized_hermite_sequence: x must be finite");

    std::vector<double> phi(static_cast<std::size_t>(n_max) + 1);
    phi[0] = std::exp(-0.5 * x * x) / std::sqrt(kSqrtPi);
    if (n_max == 0)
        return phi;
    phi[1] = std::sqrt(2.0) * x * phi[0];
    for (int k = 1; k < n_max; ++k) {
        const double kp1 = k + 1.0;
        phi[k + 1] = std::sqrt(2.0 / kp1) * x * phi[k] - std::sqrt(k / kp1) * phi[k - 1];
    }
    return phi;
}

namespace {

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!
// All terms are positive, so there is no cancellation for |x| <= 3.
double erf_series(double x)
{
    const double two_x2 = 2.0 * x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= two_x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return 2.0 / kSqrtPi * std::exp(-x * x) * sum;
}

// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// modified Lentz evaluation. Used for x > 3.
double erfc_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int j = 1; j < 1000; ++j) {
        const double a = 0.5 * j;
        d = x + a * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return std::exp(-x * x) / (kSqrtPi * f);
}

} // namespace

double erf(double x)
{
    if (std::isnan(x))
        return x;
    const double ax = std::abs(x);
    double value;
    if (ax <= 3.0)
        value = erf_series(ax);
    else if (ax < 6.5)
        value = 1.0 - erfc_continued_fraction(ax);
    else
        value = 1.0;
    return x < 0.0 ? -value : value;
}

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw ArgumentError("log_gamma: argument must be positive, got " + std::to_string(x));
    if (std::isinf(x))
        return x;

    // Shift into the Stirling regime: ln G(x) = ln G(x+k) - ln(x (x+1) ... (x+k-1)).
    double shift = 0.0;
    double product = 1.0;
    while (x < 10.0) {
        product *= x;
        x += 1.0;
        if (product < 1e-250 || product > 1e250) {
            shift += std::log(product);
            product = 1.0;
        }
    }
    shift += std::log(product);

    // Stirling series, B_{2k} / (2k(2k-1) x^{2k-1}).
    static constexpr double coeffs[] = {
        1.0 / 12.0,        -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv;
    for (double coeff : coeffs) {
        series += coeff * power;
        power *= inv2;
    }
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series - shift;
}

double binomial_pmf(int n, int k, double p)
{
    if (n < 0 || k < 0 || k > n)
        throw ArgumentError("binomial_pmf: require 0 <= k <= n, got n=" + std::to_string(n) +
                            ", k=" + std::to_string(k));
    if (!(p >= 0.0 && p <= 1.0))
        throw ArgumentError("binomial_pmf: p must lie in [0, 1], got " + std::to_string(p));
    if (p == 0.0)
        return k == 0 ? 1.0 : 0.0;
    if (p == 1.0)
        return k == n ? 1.0 : 0.0;
    const double log_choose = log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
    return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

complex poisson_amplitude(int k, complex z)
{
    if (k < 0)
        throw ArgumentError("poisson_amplitude: k must be non-negative, got " + std::to_string(k));
    const double modulus = std::abs(z);
    if (modulus == 0.0)
        return k == 0 ? complex(1.0, 0.0) : complex(0.0, 0.0);
    const double log_magnitude =
        -0.5 * modulus * modulus + k * std::log(modulus) - 0.5 * log_gamma(k + 1.0);
    return std::polar(std::exp(log_magnitude), k * std::arg(z));
}

QuadratureRule::QuadratureRule(double extent, int node_count)
    : extent_(extent)
{
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw ArgumentError("QuadratureRule: extent must be positive and finite");
    if (node_count < 9 || node_count % 2 == 0)
        throw ArgumentError("QuadratureRule: node count must be odd and >= 9, got " +
                            std::to_string(node_count));

    const int half = (node_count - 1) / 2;
    step_ = extent / half;
    nodes_.resize(static_cast<std::size_t>(node_count));
    weights_.resize(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i) {
        nodes_[i] = (i - half) * step_;
        weights_[i] = (i % 2 == 1 ? 4.0 : 2.0) * step_ / 3.0;
    }
    weights_.front() = weights_.back() = step_ / 3.0;
}

QuadratureRule build_rule(double extent, int node_count)
{
    return QuadratureRule(extent, node_count);
}

namespace {

template <class T>
T weighted_sum(const QuadratureRule& rule, std::span<const T> samples)
{
    if (samples.size() != rule.nodes().size())
        throw ArgumentError("integrate: sample count " + std::to_string(samples.size()) +
                            " does not match node count " + std::to_string(rule.size()));
    T sum{};
    const auto& w = rule.weights();
    for (std::size_t i = 0; i < samples.size(); ++i)
        sum += w[i] * samples[i];
    return sum;
}

} // namespace

complex integrate(const QuadratureRule& rule, std::span<const complex> samples)
{
    return weighted_sum(rule, samples);
}

double integrate(const QuadratureRule& rule, std::span<const double> samples)
{
    return weighted_sum(rule, samples);
}

std::vector<double> cumulative_integral(const QuadratureRule& rule, std::span<const double> samples)
{
    const int m = rule.size();
    if (static_cast<int>(samples.size()) != m)
        throw ArgumentError("cumulative_integral: sample count " + std::to_string(samples.size()) +
                            " does not match node count " + std::to_string(m));
    const double h = rule.step();
    const auto f = [&](int i) { return samples[static_cast<std::size_t>(i)]; };

    // Integral over [x_i, x_{i+1}] from the cubic through four neighbouring nodes.
    const auto interval = [&](int i) {
        if (i == 0)
            return h / 24.0 * (9.0 * f(0) + 19.0 * f(1) - 5.0 * f(2) + f(3));
        if (i == m - 2)
            return h / 24.0 * (f(m - 4) - 5.0 * f(m - 3) + 19.0 * f(m - 2) + 9.0 * f(m - 1));
        return h / 24.0 * (-f(i - 1) + 13.0 * f(i) + 13.0 * f(i + 1) - f(i + 2));
    };

    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    const int c = rule.center();
    for (int i = c; i < m - 1; ++i)
        out[i + 1] = out[i] + interval(i);
    for (int i = c; i > 0; --i)
        out[i - 1] = out[i] - interval(i - 1);
    return out;
}

} // namespace cxosc
