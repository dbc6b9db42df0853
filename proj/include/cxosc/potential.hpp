#pragma once

#include "cxosc/specfun.hpp"

namespace cxosc {

/// The real quadruple (a, b, c, lambda) selecting one member of the
/// complex oscillator family
///   V(x) = x^2 - 2 - 2 d/dx[(b + 2a erf(x) - i sqrt(pi) lambda) / (sqrt(pi) alpha^2(x))],
///   alpha(x) = e^{x^2/2} sqrt(a erf^2(x) + b erf(x) + c).
struct PotentialParams {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double lambda = 0.0;
};

/// Returns params unchanged iff a, b >= 0 and g(s) = a s^2 + b s + c stays
/// positive for s in (-1, 1); throws ParameterDomainError otherwise.
PotentialParams validate(const PotentialParams& params);

/// True when the family collapses to the shifted oscillator x^2 - 2.
bool is_oscillator_limit(const PotentialParams& params);

/// psi_n are eigenfunctions of V (and bi-orthonormal) only when alpha solves
/// alpha'' = (x^2 + 1) alpha + lambda^2 / alpha^3, i.e. lambda^2 = (4ac - b^2)/pi.
/// Returns that magnitude of lambda (0 when 4ac <= b^2).
double consistent_lambda(const PotentialParams& params);
/// lambda^2 - (4ac - b^2)/pi; zero for a self-consistent parameter set.
double lambda_constraint_gap(const PotentialParams& params);

double alpha(const PotentialParams& params, double x);
/// 1/alpha(x), finite where alpha itself overflows.
double inverse_alpha(const PotentialParams& params, double x);
/// 1/alpha^2(x) = e^{-x^2} / g(erf(x)).
double inverse_alpha_squared(const PotentialParams& params, double x);

/// alpha'/alpha = x + g'/(2g).
double alpha_log_derivative(const PotentialParams& params, double x);

/// beta = alpha'/alpha - i lambda / alpha^2, so that psi_0'/psi_0 = -beta
/// and V = x^2 - 2 beta'.
complex superpotential(const PotentialParams& params, double x);
complex superpotential_derivative(const PotentialParams& params, double x);

complex potential_value(const PotentialParams& params, double x);

} // namespace cxosc
