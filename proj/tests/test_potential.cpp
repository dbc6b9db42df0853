#include <doctest.h>

#include <cmath>

#include "cxosc/error.hpp"
#include "cxosc/potential.hpp"

using namespace cxosc;

namespace {

const PotentialParams kReference{kPi / 4.0, kSqrtPi / 2.0, 1.0, 1.0};

// The bracket in V = x^2 - 2 - 2 d/dx[...].
complex bracket(const PotentialParams& p, double x)
{
    const complex u = (p.b + 2.0 * p.a * std::erf(x) - complex(0.0, kSqrtPi * p.lambda)) / kSqrtPi;
    const double s = std::erf(x);
    return u / (std::exp(x * x) * (p.a * s * s + p.b * s + p.c));
}

} // namespace

TEST_CASE("parameter validation")
{
    CHECK_NOTHROW(validate(kReference));
    CHECK_NOTHROW(validate(PotentialParams{0.0, 0.0, 1.0, 0.0}));
    CHECK_THROWS_AS(validate(PotentialParams{1.0, 2.0, 1.0, 0.0}), ParameterDomainError);
    CHECK_THROWS_AS(validate(PotentialParams{-1.0, 0.0, 1.0, 0.0}), ParameterDomainError);
    CHECK_THROWS_AS(validate(PotentialParams{0.0, 1.0, 1.0, 0.0}), ParameterDomainError);
    CHECK_THROWS_AS(validate(PotentialParams{0.0, 0.0, 0.0, 0.0}), ParameterDomainError);
    CHECK_THROWS_AS(validate(PotentialParams{0.0, 0.0, NAN, 0.0}), ParameterDomainError);
    try {
        validate(PotentialParams{1.0, 2.0, 1.0, 0.0});
    } catch (const ParameterDomainError& e) {
        CHECK(std::string(e.what()).find("b^2/(4a)") != std::string::npos);
    }
}

TEST_CASE("potential agrees with finite differences of its bracket")
{
    for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
        PotentialParams p = kReference;
        p.lambda = lambda;
        for (double x : {-3.0, -1.1, 0.0, 0.37, 2.2}) {
            const double h = 1e-5;
            const complex fd = (bracket(p, x + h) - bracket(p, x - h)) / (2.0 * h);
            const complex expected = x * x - 2.0 - 2.0 * fd;
            CHECK(std::abs(potential_value(p, x) - expected) < 1e-6);
        }
    }
}

TEST_CASE("alpha and its log derivative")
{
    for (double x : {-2.0, -0.5, 0.0, 1.3}) {
        const double s = std::erf(x);
        const double g = kReference.a * s * s + kReference.b * s + kReference.c;
        CHECK(alpha(kReference, x) == doctest::Approx(std::exp(0.5 * x * x) * std::sqrt(g)));
        CHECK(inverse_alpha_squared(kReference, x) == doctest::Approx(std::exp(-x * x) / g));
        const double h = 1e-5;
        const double fd = (std::log(alpha(kReference, x + h)) - std::log(alpha(kReference, x - h))) / (2 * h);
        CHECK(alpha_log_derivative(kReference, x) == doctest::Approx(fd).epsilon(1e-8));
    }
    CHECK(std::isfinite(inverse_alpha(kReference, 40.0)));
}

TEST_CASE("superpotential derivative and the relation V = x^2 - 2 beta'")
{
    for (double x : {-2.0, 0.0, 0.8}) {
        const double h = 1e-5;
        const complex fd = (superpotential(kReference, x + h) - superpotential(kReference, x - h)) / (2 * h);
        CHECK(std::abs(superpotential_derivative(kReference, x) - fd) < 1e-8);
        CHECK(std::abs(potential_value(kReference, x) - (x * x - 2.0 * superpotential_derivative(kReference, x))) < 1e-12);
    }
}

TEST_CASE("lambda = 0 gives a real potential; the oscillator limit gives x^2 - 2")
{
    PotentialParams real = kReference;
    real.lambda = 0.0;
    const PotentialParams osc{0.0, 0.0, 1.0, 0.0};
    CHECK(is_oscillator_limit(osc));
    CHECK_FALSE(is_oscillator_limit(kReference));
    for (int i = -400; i <= 400; ++i) {
        const double x = 0.025 * i;
        CHECK(std::abs(potential_value(real, x).imag()) <= 1e-14);
        CHECK(potential_value(osc, x) == complex(x * x - 2.0, 0.0));
    }
    CHECK(std::abs(potential_value(kReference, 0.3).imag()) > 1e-3);
}

TEST_CASE("the solvable lambda satisfies the Ermakov-Pinney equation")
{
    PotentialParams p = kReference;
    p.lambda = consistent_lambda(kReference);
    CHECK(p.lambda == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
    CHECK(std::abs(lambda_constraint_gap(p)) < 1e-15);
    CHECK(lambda_constraint_gap(kReference) == doctest::Approx(0.25));
    // beta^2 + beta' = x^2 + 1 exactly there, and misses it by (lambda0^2 - lambda^2)/alpha^4 elsewhere.
    for (double x : {-1.5, 0.0, 0.9}) {
        const complex b = superpotential(p, x);
        CHECK(std::abs(b * b + superpotential_derivative(p, x) - (x * x + 1.0)) < 1e-12);
        const complex b1 = superpotential(kReference, x);
        const double ia2 = inverse_alpha_squared(kReference, x);
        CHECK(std::abs(b1 * b1 + superpotential_derivative(kReference, x) - (x * x + 1.0) +
                       0.25 * ia2 * ia2) < 1e-12);
    }
}
