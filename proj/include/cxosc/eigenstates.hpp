#pragma once

#include <memory>
#include <vector>

#include "cxosc/potential.hpp"
#include "cxosc/specfun.hpp"

namespace cxosc {

inline constexpr double kDefaultGridStep = 0.01;
/// Highest eigenstate index a basis may carry.
inline constexpr int kMaxBasisIndex = 60;

/// Uniform grid x_i = (i - M) h, symmetric about 0 with 2M+1 nodes.
class SpatialGrid {
public:
    /// extent is rounded up to a whole number of steps.
    SpatialGrid(double extent, double step);

    /// Window sqrt(2 E) + 8 with E = 2 max_index + 1, clamped to [10, 40].
    static SpatialGrid for_max_index(int max_index, double step = kDefaultGridStep);
    static double default_extent(int max_index);

    const QuadratureRule& rule() const { return rule_; }
    const std::vector<double>& nodes() const { return rule_.nodes(); }
    double extent() const { return rule_.extent(); }
    double step() const { return rule_.step(); }
    int size() const { return rule_.size(); }
    int center() const { return rule_.center(); }

private:
    QuadratureRule rule_;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

struct WaveField {
    GridPtr grid;
    std::vector<complex> amplitudes;

    WaveField() = default;
    WaveField(GridPtr g, std::vector<complex> values);
    explicit WaveField(GridPtr g);

    int size() const { return static_cast<int>(amplitudes.size()); }
    WaveField conjugate() const;
};

/// int conj(dual) * field dx on the shared grid.
complex biproduct(const WaveField& dual, const WaveField& field);
/// int |field|^2 dx.
double l2_norm_squared(const WaveField& field);

/// Eigenfunctions psi_0..psi_N of the complex oscillator, their duals
/// (pointwise conjugates) and analytic x-derivatives. Immutable.
class BasisSet {
public:
    BasisSet(PotentialParams params, GridPtr grid, std::vector<WaveField> states,
             std::vector<WaveField> derivatives);

    const PotentialParams& params() const { return params_; }
    const GridPtr& grid() const { return grid_; }
    int size() const { return static_cast<int>(states_.size()); }
    const std::vector<WaveField>& states() const { return states_; }
    const std::vector<WaveField>& duals() const { return duals_; }
    const std::vector<WaveField>& derivatives() const { return derivatives_; }
    const std::vector<double>& energies() const { return energies_; }

    /// max_n |int psi_n^2 dx - 1|; the states are never rescaled.
    double normalization_residual() const { return normalization_residual_; }

private:
    PotentialParams params_;
    GridPtr grid_;
    std::vector<WaveField> states_;
    std::vector<WaveField> duals_;
    std::vector<WaveField> derivatives_;
    std::vector<double> energies_;
    double normalization_residual_ = 0.0;
};

/// Energy of psi_n: 2n - 1.
inline double eigen_energy(int n) { return 2.0 * n - 1.0; }

WaveField oscillator_state(int n, const GridPtr& grid);
WaveField ground_state(const PotentialParams& params, const GridPtr& grid);
/// psi_{n+1}.
WaveField excited_state(const PotentialParams& params, int n, const GridPtr& grid);
/// psi_0 .. psi_N.
BasisSet build_basis(const PotentialParams& params, int max_index, const GridPtr& grid);

struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<complex> data;

    ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
    complex& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    complex operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// G(m, n) = int psi_m psi_n dx (the bi-product, no conjugation).
ComplexMatrix gram_matrix(const BasisSet& basis);
/// max |G - I|.
double identity_deviation(const ComplexMatrix& gram);

} // namespace cxosc
