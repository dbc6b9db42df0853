#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cxosc {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;

/// Normalized oscillator wave-functions phi_0(x) .. phi_{n_max}(x)
/// (physicists' Hermite convention), via the three-term recurrence
///   phi_{k+1} = sqrt(2/(k+1)) x phi_k - sqrt(k/(k+1)) phi_{k-1}.
/// No intermediate overflow for n_max <= 200, |x| <= 30.
std::vector<double> normalized_hermite_sequence(int n_max, double x);

/// Error function, absolute error <= 1e-13 on the whole real line.
/// Exactly odd: erf(-x) == -erf(x).
double erf(double x);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// C(n,k) p^k (1-p)^(n-k), evaluated in log space.
double binomial_pmf(int n, int k, double p);

/// e^{-|z|^2/2} z^k / sqrt(k!), magnitude in log space, phase k arg(z).
complex poisson_amplitude(int k, complex z);

/// Composite Simpson rule on a uniform symmetric window [-extent, extent].
class QuadratureRule {
public:
    QuadratureRule(double extent, int node_count);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double extent() const { return extent_; }
    double step() const { return step_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    /// Index of the node at x = 0.
    int center() const { return (size() - 1) / 2; }

private:
    double extent_;
    double step_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// node_count must be odd and >= 9.
QuadratureRule build_rule(double extent, int node_count);

complex integrate(const QuadratureRule& rule, std::span<const complex> samples);
double integrate(const QuadratureRule& rule, std::span<const double> samples);

/// F(x_i) = int_0^{x_i} f(y) dy on the rule's nodes, F(0) = 0.
/// Piecewise-cubic interpolation per interval (fourth order).
std::vector<double> cumulative_integral(const QuadratureRule& rule, std::span<const double> samples);

} // namespace cxosc
