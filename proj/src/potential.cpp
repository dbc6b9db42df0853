#include <algorithm>
#include "cxosc/potential.hpp"

#include <cmath>
#include <sstream>

#include "cxosc/error.hpp"

namespace cxosc {

namespace {

std::string describe(const PotentialParams& p)
{
    std::ostringstream os;
    os.precision(17);
    os << "(a=" << p.a << ", b=" << p.b << ", c=" << p.c << ", lambda=" << p.lambda << ")";
    return os.str();
}

// Pointwise ingredients shared by alpha, beta and V.
struct Local {
    double erf_x;
    double gauss;  // e^{-x^2}
    double g;      // a erf^2 + b erf + c
    double g_prime;
};

Local local_terms(const PotentialParams& p, double x)
{
    Local t{};
    t.erf_x = erf(x);
    t.gauss = std::exp(-x * x);
    t.g = (p.a * t.erf_x + p.b) * t.erf_x + p.c;
    t.g_prime = (2.0 * p.a * t.erf_x + p.b) * (2.0 / kSqrtPi) * t.gauss;
    return t;
}

} // namespace

PotentialParams validate(const PotentialParams& params)
{
    const auto& [a, b, c, lambda] = params;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(lambda))
        throw ParameterDomainError("potential parameters must be finite " + describe(params));
    if (a < 0.0)
        throw ParameterDomainError("a >= 0 violated " + describe(params));
    if (b < 0.0)
        throw ParameterDomainError("b >= 0 violated " + describe(params));
    if (a > 0.0) {
        if (!(c > b * b / (4.0 * a)))
            throw ParameterDomainError("c > b^2/(4a) violated " + describe(params));
    } else if (b > 0.0) {
        if (!(c > b))
            throw ParameterDomainError("c > b violated (a = 0) " + describe(params));
    } else if (!(c > 0.0)) {
        throw ParameterDomainError("c > 0 violated (a = b = 0) " + describe(params));
    }
    return params;
}

bool is_oscillator_limit(const PotentialParams& params)
{
    return params.a == 0.0 && params.b == 0.0 && params.lambda == 0.0;
}

double consistent_lambda(const PotentialParams& params)
{
    return std::sqrt(std::max(0.0, (4.0 * params.a * params.c - params.b * params.b) / kPi));
}

double lambda_constraint_gap(const PotentialParams& params)
{
    return params.lambda * params.lambda -
           (4.0 * params.a * params.c - params.b * params.b) / kPi;
}

double alpha(const PotentialParams& params, double x)
{
    const Local t = local_terms(params, x);
    return std::exp(0.5 * x * x) * std::sqrt(t.g);
}

double inverse_alpha(const PotentialParams& params, double x)
{
    const Local t = local_terms(params, x);
    return std::exp(-0.5 * x * x) / std::sqrt(t.g);
}

double inverse_alpha_squared(const PotentialParams& params, double x)
{
    const Local t = local_terms(params, x);
    return t.gauss / t.g;
}

double alpha_log_derivative(const PotentialParams& params, double x)
{
    const Local t = local_terms(params, x);
    return x + t.g_prime / (2.0 * t.g);
}

namespace {

// numerator B = (b + 2a erf - i sqrt(pi) lambda) / sqrt(pi) of the bracket B/alpha^2
complex bracket_numerator(const PotentialParams& p, const Local& t)
{
    return complex((p.b + 2.0 * p.a * t.erf_x) / kSqrtPi, -p.lambda);
}

// d/dx [B / alpha^2] = e^{-x^2}/g [B' - B (2x + g'/g)], B' = (4a/pi) e^{-x^2}
complex bracket_derivative(const PotentialParams& p, double x, const Local& t)
{
    const complex numer = bracket_numerator(p, t);
    const double numer_prime = 4.0 * p.a / kPi * t.gauss;
    return t.gauss / t.g * (numer_prime - numer * (2.0 * x + t.g_prime / t.g));
}

} // namespace

complex superpotential(const PotentialParams& params, double x)
{
    const Local t = local_terms(params, x);
    return x + bracket_numerator(params, t) * (t.gauss / t.g);
}

complex superpotential_derivative(const PotentialParams& params, double x)
{
    const Local t = local_terms(params, x);
    return 1.0 + bracket_derivative(params, x, t);
}

complex potential_value(const PotentialParams& params, double x)
{
    const Local t = local_terms(params, x);
    return x * x - 2.0 - 2.0 * bracket_derivative(params, x, t);
}

} // namespace cxosc
