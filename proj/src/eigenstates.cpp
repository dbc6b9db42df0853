#include "cxosc/eigenstates.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "cxosc/error.hpp"

namespace cxosc {

SpatialGrid::SpatialGrid(double extent, double step)
    : rule_([&] {
          if (!(step > 0.0) || !std::isfinite(step))
              throw ArgumentError("SpatialGrid: step must be positive and finite");
          if (!(extent > 0.0) || !std::isfinite(extent))
              throw ArgumentError("SpatialGrid: extent must be positive and finite");
          const double ratio = extent / step;
          const int half = std::max(4, static_cast<int>(std::ceil(ratio - 1e-9)));
          return QuadratureRule(half * step, 2 * half + 1);
      }())
{
}

double SpatialGrid::default_extent(int max_index)
{
    if (max_index < 0)
        throw ArgumentError("SpatialGrid: max_index must be non-negative");
    const double energy = 2.0 * max_index + 1.0;
    return std::clamp(std::sqrt(2.0 * energy) + 8.0, 10.0, 40.0);
}

SpatialGrid SpatialGrid::for_max_index(int max_index, double step)
{
    return SpatialGrid(default_extent(max_index), step);
}

WaveField::WaveField(GridPtr g, std::vector<complex> values)
    : grid(std::move(g)), amplitudes(std::move(values))
{
    if (!grid)
        throw ArgumentError("WaveField: null grid");
    if (static_cast<int>(amplitudes.size()) != grid->size())
        throw SizeError("WaveField: amplitude count " + std::to_string(amplitudes.size()) +
                        " does not match grid size " + std::to_string(grid->size()));
}

WaveField::WaveField(GridPtr g)
    : grid(std::move(g))
{
    if (!grid)
        throw ArgumentError("WaveField: null grid");
    amplitudes.assign(static_cast<std::size_t>(grid->size()), complex{});
}

WaveField WaveField::conjugate() const
{
    std::vector<complex> values(amplitudes.size());
    std::transform(amplitudes.begin(), amplitudes.end(), values.begin(),
                   [](complex v) { return std::conj(v); });
    return WaveField(grid, std::move(values));
}

namespace {

void require_same_grid(const WaveField& lhs, const WaveField& rhs)
{
    if (lhs.grid != rhs.grid && (lhs.grid->size() != rhs.grid->size() ||
                                 lhs.grid->step() != rhs.grid->step()))
        throw ArgumentError("wave fields live on different grids");
}

void check_resolution(int oscillator_index, const SpatialGrid& grid)
{
    const double turning_point = std::sqrt(2.0 * oscillator_index + 1.0);
    if (turning_point > 0.8 * grid.extent())
        throw ResolutionError("state index " + std::to_string(oscillator_index) +
                              " has turning point " + std::to_string(turning_point) +
                              " beyond 0.8 of the grid extent " + std::to_string(grid.extent()));
}

// psi_{n+1} and its derivative at one node, given phi_0..phi_{n+1} there.
//   psi_{n+1}  = [phi_n' - beta phi_n] / sqrt(2(n+1))
//   psi_{n+1}' = [phi_n'' - beta' phi_n - beta phi_n'] / sqrt(2(n+1))
// with phi_n' = sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1} and
// phi_n'' = (x^2 - 2n - 1) phi_n.
void excited_at_node(double x, std::span<const double> phi, int n, complex beta,
                     complex beta_prime, complex& value, complex& derivative)
{
    const double lower = n > 0 ? std::sqrt(0.5 * n) * phi[n - 1] : 0.0;
    const double phi_prime = lower - std::sqrt(0.5 * (n + 1.0)) * phi[n + 1];
    const double phi_second = (x * x - 2.0 * n - 1.0) * phi[n];
    const double scale = 1.0 / std::sqrt(2.0 * (n + 1.0));
    value = scale * (phi_prime - beta * phi[n]);
    derivative = scale * (phi_second - beta_prime * phi[n] - beta * phi_prime);
}

struct GroundState {
    WaveField value;
    WaveField derivative;
};

GroundState ground_state_with_derivative(const PotentialParams& params, const GridPtr& grid)
{
    validate(params);
    const auto& x = grid->nodes();
    const int m = grid->size();

    std::vector<double> weight(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        weight[i] = inverse_alpha_squared(params, x[i]);
    const std::vector<double> phase = cumulative_integral(grid->rule(), weight);

    std::vector<complex> raw(static_cast<std::size_t>(m));
    std::vector<complex> squared(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        raw[i] = inverse_alpha(params, x[i]) * std::polar(1.0, params.lambda * phase[i]);
        squared[i] = raw[i] * raw[i];
    }
    const complex binorm = integrate(grid->rule(), squared);
    if (std::abs(binorm) < 1e-12)
        throw NormalizationError("ground state bi-norm integral vanishes; psi_0 cannot be "
                                 "bi-normalized for these parameters");
    const complex kappa = 1.0 / std::sqrt(binorm);

    GroundState out{WaveField(grid), WaveField(grid)};
    for (int i = 0; i < m; ++i) {
        out.value.amplitudes[i] = kappa * raw[i];
        out.derivative.amplitudes[i] = -superpotential(params, x[i]) * out.value.amplitudes[i];
    }
    return out;
}

} // namespace

complex biproduct(const WaveField& dual, const WaveField& field)
{
    require_same_grid(dual, field);
    std::vector<complex> product(field.amplitudes.size());
    for (std::size_t i = 0; i < product.size(); ++i)
        product[i] = std::conj(dual.amplitudes[i]) * field.amplitudes[i];
    return integrate(field.grid->rule(), product);
}

double l2_norm_squared(const WaveField& field)
{
    std::vector<double> density(field.amplitudes.size());
    for (std::size_t i = 0; i < density.size(); ++i)
        density[i] = std::norm(field.amplitudes[i]);
    return integrate(field.grid->rule(), density);
}

BasisSet::BasisSet(PotentialParams params, GridPtr grid, std::vector<WaveField> states,
                   std::vector<WaveField> derivatives)
    : params_(params), grid_(std::move(grid)), states_(std::move(states)),
      derivatives_(std::move(derivatives))
{
    if (states_.size() != derivatives_.size())
        throw SizeError("BasisSet: states and derivatives differ in count");
    duals_.reserve(states_.size());
    energies_.reserve(states_.size());
    for (std::size_t n = 0; n < states_.size(); ++n) {
        duals_.push_back(states_[n].conjugate());
        energies_.push_back(eigen_energy(static_cast<int>(n)));
        normalization_residual_ = std::max(
            normalization_residual_, std::abs(biproduct(duals_[n], states_[n]) - 1.0));
    }
}

WaveField oscillator_state(int n, const GridPtr& grid)
{
    if (n < 0)
        throw ArgumentError("oscillator_state: n must be non-negative");
    check_resolution(n, *grid);
    WaveField out(grid);
    const auto& x = grid->nodes();
    for (int i = 0; i < grid->size(); ++i)
        out.amplitudes[i] = normalized_hermite_sequence(n, x[i])[n];
    return out;
}

WaveField ground_state(const PotentialParams& params, const GridPtr& grid)
{
    return ground_state_with_derivative(params, grid).value;
}

WaveField excited_state(const PotentialParams& params, int n, const GridPtr& grid)
{
    validate(params);
    if (n < 0)
        throw ArgumentError("excited_state: n must be non-negative");
    check_resolution(n + 1, *grid);
    WaveField out(grid);
    const auto& x = grid->nodes();
    complex derivative;
    for (int i = 0; i < grid->size(); ++i) {
        const auto phi = normalized_hermite_sequence(n + 1, x[i]);
        excited_at_node(x[i], phi, n, superpotential(params, x[i]),
                        superpotential_derivative(params, x[i]), out.amplitudes[i], derivative);
    }
    return out;
}

BasisSet build_basis(const PotentialParams& params, int max_index, const GridPtr& grid)
{
    validate(params);
    if (max_index < 0)
        throw ArgumentError("build_basis: max index must be non-negative");
    if (max_index > kMaxBasisIndex)
        throw ResolutionError("build_basis: max index " + std::to_string(max_index) +
                              " exceeds the supported ceiling " + std::to_string(kMaxBasisIndex));
    check_resolution(max_index, *grid);

    GroundState ground = ground_state_with_derivative(params, grid);
    std::vector<WaveField> states;
    std::vector<WaveField> derivatives;
    states.push_back(std::move(ground.value));
    derivatives.push_back(std::move(ground.derivative));
    for (int n = 1; n <= max_index; ++n) {
        states.emplace_back(grid);
        derivatives.emplace_back(grid);
    }

    const auto& x = grid->nodes();
    for (int i = 0; i < grid->size(); ++i) {
        const auto phi = normalized_hermite_sequence(max_index, x[i]);
        const complex beta = superpotential(params, x[i]);
        const complex beta_prime = superpotential_derivative(params, x[i]);
        for (int n = 0; n < max_index; ++n)
            excited_at_node(x[i], phi, n, beta, beta_prime, states[n + 1].amplitudes[i],
                            derivatives[n + 1].amplitudes[i]);
    }
    return BasisSet(params, grid, std::move(states), std::move(derivatives));
}

ComplexMatrix gram_matrix(const BasisSet& basis)
{
    const int n = basis.size();
    ComplexMatrix gram(n, n);
    for (int row = 0; row < n; ++row) {
        for (int col = row; col < n; ++col) {
            gram(row, col) = biproduct(basis.duals()[row], basis.states()[col]);
            gram(col, row) = gram(row, col);
        }
    }
    return gram;
}

double identity_deviation(const ComplexMatrix& gram)
{
    double worst = 0.0;
    for (int i = 0; i < gram.rows; ++i)
        for (int j = 0; j < gram.cols; ++j)
            worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

} // namespace cxosc
