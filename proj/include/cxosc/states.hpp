#pragma once

#include <vector>

#include "cxosc/eigenstates.hpp"

namespace cxosc {

/// Fourier coefficients c_k of psi_{k+offset} and their duals.
struct CoefficientVector {
    int offset = 0;
    std::vector<complex> coefficients;
    std::vector<complex> dual_coefficients;

    /// Duals default to the coefficients themselves.
    static CoefficientVector with_equal_duals(int offset, std::vector<complex> coefficients);

    int count() const { return static_cast<int>(coefficients.size()); }
    /// Index of the highest eigenstate touched.
    int max_index() const { return offset + count() - 1; }
    /// sum_k conj(dual_k) c_k.
    complex binorm() const;
};

struct BinomialSpec {
    int n = 0;
    double p = 0.0;
    int r = 0;
};

struct PoissonSpec {
    complex z{};
    int r = 0;
    /// Highest k kept; see poisson_truncation.
    int truncation = 0;
};

inline constexpr double kPoissonTailMass = 1e-12;

/// Smallest K with sum_{k > K} |c_k|^2 < tail.
int poisson_truncation(complex z, double tail = kPoissonTailMass);
PoissonSpec make_poisson_spec(complex z, int r);

/// c_k = +sqrt(C(n,k) p^k (1-p)^{n-k}), offset r.
CoefficientVector binomial_coefficients(const BinomialSpec& spec);
/// Poisson amplitudes up to the truncation, rescaled to unit bi-norm.
CoefficientVector poisson_coefficients(const PoissonSpec& spec);
/// The eigenstate psi_r alone.
CoefficientVector single_state_coefficients(int r);

/// sum_k conj(dual_k) c_k E_{k+offset}, with E_m = 2m - 1.
double energy_expectation(const CoefficientVector& coeffs);
/// The same sum weighted by 2k - 1, i.e. ignoring the offset. For binomial
/// packets this is 2np - 1 independently of r.
double energy_expectation_offset_free(const CoefficientVector& coeffs);

/// c_k(t) = c_k e^{-2ikt}; duals evolve identically. The global phase
/// e^{-i(2r-1)t} is dropped.
CoefficientVector evolve(const CoefficientVector& coeffs, double t);

struct Superposition {
    WaveField state;  // phi = sum c_k psi_{k+r}
    WaveField dual;   // phi_bar = sum dual_k conj(psi_{k+r})
};

Superposition synthesize(const CoefficientVector& coeffs, const BasisSet& basis);

/// c_k = int conj(psi_bar_k) phi dx over the whole basis (offset 0); duals
/// taken equal to the coefficients.
CoefficientVector fourier_analyze(const WaveField& field, const BasisSet& basis);
/// As above, with dual_k = int conj(psi_k) phi_bar dx.
CoefficientVector fourier_analyze(const WaveField& field, const WaveField& dual_field,
                                  const BasisSet& basis);

struct DensityCurrentFrame {
    double time = 0.0;
    GridPtr grid;
    std::vector<complex> rho_b;      // conj(phi_bar) phi
    std::vector<complex> current_b;  // i (phi conj(phi_bar)' - conj(phi_bar) phi')
    std::vector<double> rho;         // |phi|^2
    std::vector<double> current;     // i (phi conj(phi)' - conj(phi) phi')
};

DensityCurrentFrame density_current_frame(const CoefficientVector& coeffs, const BasisSet& basis,
                                          double t);

inline constexpr double kDefaultTimeStep = 1e-4;

struct ContinuityResiduals {
    /// dJ_B/dx + d rho_B/dt.
    std::vector<complex> biorthogonal;
    /// dJ/dx + d rho/dt - 2 Im(V) rho.
    std::vector<double> conventional;
    /// dJ/dx + d rho/dt - 2 Im(V), the source term without the density factor.
    std::vector<double> conventional_unweighted;
    std::vector<complex> flux_divergence_b;
    std::vector<double> flux_divergence;
};

/// Time derivatives by central difference over [t - dt, t + dt]; spatial
/// derivatives of the currents by fourth-order central differences.
ContinuityResiduals continuity_residuals(const CoefficientVector& coeffs, const BasisSet& basis,
                                         double t, double dt = kDefaultTimeStep);

/// Fourth-order central difference of samples with spacing h.
template <class T>
std::vector<T> differentiate(const std::vector<T>& samples, double h);

} // namespace cxosc
