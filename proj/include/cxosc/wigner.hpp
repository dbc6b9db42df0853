#pragma once

#include <string>
#include <vector>

#include "cxosc/states.hpp"

namespace cxosc {

/// Rectangular (x, p) lattice, symmetric about the origin.
struct PhaseSpaceGrid {
    double x_extent = 0.0;
    double p_extent = 0.0;
    int x_count = 0;
    int p_count = 0;

    double x_step() const { return 2.0 * x_extent / (x_count - 1); }
    double p_step() const { return 2.0 * p_extent / (p_count - 1); }
    double x(int i) const { return (i - (x_count - 1) / 2) * x_step(); }
    double p(int j) const { return (j - (p_count - 1) / 2) * p_step(); }
    std::vector<double> x_nodes() const;
    std::vector<double> p_nodes() const;
};

inline constexpr int kDefaultPhaseSpaceCount = 201;

/// Throws ArgumentError unless extents are positive and counts odd and >= 32.
void validate(const PhaseSpaceGrid& grid);

/// Window sqrt(2 E) + 3 in both directions, E = 2 max_index + 1, widened so
/// every x node falls on the spatial grid of the given step.
PhaseSpaceGrid default_phase_grid(int max_index, double spatial_step = kDefaultGridStep,
                                  int count = kDefaultPhaseSpaceCount);

struct WignerField {
    PhaseSpaceGrid grid;
    /// x-major: values[i * p_count + j] = W(x_i, p_j).
    std::vector<double> values;
    std::string source;
    /// Largest |Im W| discarded by the quadrature path (0 for closed form).
    double imaginary_residue = 0.0;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.p_count + j]; }
};

/// sum_k c_k phi_{k+r} on the grid: the oscillator-limit state built from
/// Fock wave-functions.
WaveField oscillator_superposition(const CoefficientVector& coeffs, const GridPtr& grid);

/// W(x,p) = (1/pi) int conj(phi(x+y)) phi(x-y) e^{2ipy} dy, Simpson in y on
/// the field's own grid. Every x node must coincide with a field node.
/// Rows are split across `workers` threads; output does not depend on it.
WignerField wigner_by_quadrature(const WaveField& field, const PhaseSpaceGrid& grid,
                                 int workers = 1);

/// sum_{m,n} conj(c_m) c_n W[|n><m|] from the Laguerre form of the Fock
/// cross-Wigner functions. Coefficients refer to phi_{k+offset}.
WignerField wigner_by_closed_form(const CoefficientVector& coeffs, const PhaseSpaceGrid& grid,
                                  int workers = 1);

struct ClassicalityReport {
    double min_value = 0.0;
    double min_x = 0.0;
    double min_p = 0.0;
    double negative_volume = 0.0;
};

ClassicalityReport classicality_report(const WignerField& w);

struct Marginals {
    std::vector<double> position;  // int W dp at each x_i
    std::vector<double> momentum;  // int W dx at each p_j
};

Marginals marginals(const WignerField& w);

/// Sum of marginal * step over the lattice.
double marginal_mass(const std::vector<double>& marginal, double step);
/// Variance of a sampled density on equally spaced nodes.
double marginal_variance(const std::vector<double>& marginal, const std::vector<double>& nodes);

/// |<PACS_r(z)|phi>|^2 against the normalized r-photon-added coherent state
/// (a^dagger)^r |z> / sqrt(r! L_r(-|z|^2)), with r = coeffs.offset.
double photon_added_fidelity(complex z, const CoefficientVector& coeffs);

} // namespace cxosc
