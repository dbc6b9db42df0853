#include "cxosc/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "cxosc/error.hpp"

namespace cxosc {

std::vector<double> PhaseSpaceGrid::x_nodes() const
{
    std::vector<double> out(static_cast<std::size_t>(x_count));
    for (int i = 0; i < x_count; ++i)
        out[i] = x(i);
    return out;
}

std::vector<double> PhaseSpaceGrid::p_nodes() const
{
    std::vector<double> out(static_cast<std::size_t>(p_count));
    for (int j = 0; j < p_count; ++j)
        out[j] = p(j);
    return out;
}

void validate(const PhaseSpaceGrid& grid)
{
    if (!(grid.x_extent > 0.0) || !(grid.p_extent > 0.0) || !std::isfinite(grid.x_extent) ||
        !std::isfinite(grid.p_extent))
        throw ArgumentError("PhaseSpaceGrid: extents must be positive and finite");
    if (grid.x_count < 32 || grid.p_count < 32 || grid.x_count % 2 == 0 || grid.p_count % 2 == 0)
        throw ArgumentError("PhaseSpaceGrid: counts must be odd and >= 32");
}

PhaseSpaceGrid default_phase_grid(int max_index, double spatial_step, int count)
{
    if (max_index < 0)
        throw ArgumentError("default_phase_grid: max index must be non-negative");
    const double energy = 2.0 * max_index + 1.0;
    const double raw = std::sqrt(2.0 * energy) + 3.0;
    // x_step = extent / half must be a whole number of spatial steps.
    const int half = (count - 1) / 2;
    const double quantum = half * spatial_step;
    const double extent = std::ceil(raw / quantum - 1e-9) * quantum;
    PhaseSpaceGrid grid{extent, extent, count, count};
    validate(grid);
    return grid;
}

WaveField oscillator_superposition(const CoefficientVector& coeffs, const GridPtr& grid)
{
    if (coeffs.count() == 0)
        throw SizeError("oscillator_superposition: empty coefficient vector");
    const int top = coeffs.max_index();
    // Resolution is checked on the highest Fock state.
    (void)oscillator_state(top, grid);
    WaveField out(grid);
    const auto& x = grid->nodes();
    for (int i = 0; i < grid->size(); ++i) {
        const auto phi = normalized_hermite_sequence(top, x[i]);
        complex sum{};
        for (int k = 0; k < coeffs.count(); ++k)
            sum += coeffs.coefficients[k] * phi[k + coeffs.offset];
        out.amplitudes[i] = sum;
    }
    return out;
}

namespace {

// Rows i = worker, worker + workers, ... go to each thread. Each row is
// computed identically regardless of the split.
template <class RowFn>
void for_each_row(int rows, int workers, RowFn&& row)
{
    workers = std::clamp(workers, 1, std::max(1, rows));
    if (workers == 1) {
        for (int i = 0; i < rows; ++i)
            row(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < rows; i += workers)
                row(i);
        });
    for (auto& t : pool)
        t.join();
}

} // namespace

WignerField wigner_by_quadrature(const WaveField& field, const PhaseSpaceGrid& grid, int workers)
{
    validate(grid);
    const SpatialGrid& space = *field.grid;
    const double norm = l2_norm_squared(field);
    if (std::abs(norm - 1.0) > 1e-6)
        throw NormalizationError("wigner_by_quadrature: field norm " + std::to_string(norm) +
                                 " differs from 1 by more than 1e-6");

    const double h = space.step();
    const int size = space.size();
    const int center = space.center();

    // Locate each phase-space x node on the spatial grid.
    std::vector<int> node_index(static_cast<std::size_t>(grid.x_count));
    for (int i = 0; i < grid.x_count; ++i) {
        const double ratio = grid.x(i) / h;
        const double nearest = std::round(ratio);
        if (std::abs(ratio - nearest) > 1e-6)
            throw ArgumentError("wigner_by_quadrature: phase-space node x=" +
                                std::to_string(grid.x(i)) + " is not a spatial grid node");
        const int idx = center + static_cast<int>(nearest);
        if (idx < 0 || idx >= size)
            throw ArgumentError("wigner_by_quadrature: phase-space window exceeds the field grid");
        node_index[i] = idx;
    }

    // Support of the field; the integrand vanishes outside it.
    const auto& amp = field.amplitudes;
    double peak = 0.0;
    for (const auto& v : amp)
        peak = std::max(peak, std::abs(v));
    int lo = 0;
    int hi = size - 1;
    while (lo < hi && std::abs(amp[lo]) <= 1e-20 * peak)
        ++lo;
    while (hi > lo && std::abs(amp[hi]) <= 1e-20 * peak)
        --hi;

    const int max_lag = std::max(0, (hi - lo) / 2 + 1);
    // phase[j][s] = e^{2 i p_j s h}
    std::vector<complex> phase(static_cast<std::size_t>(grid.p_count) * (max_lag + 1));
    for (int j = 0; j < grid.p_count; ++j)
        for (int s = 0; s <= max_lag; ++s)
            phase[static_cast<std::size_t>(j) * (max_lag + 1) + s] =
                std::polar(1.0, 2.0 * grid.p(j) * s * h);

    WignerField out{grid, std::vector<double>(static_cast<std::size_t>(grid.x_count) * grid.p_count),
                    "quadrature", 0.0};
    std::vector<double> row_residue(static_cast<std::size_t>(grid.x_count), 0.0);

    for_each_row(grid.x_count, workers, [&](int i) {
        const int m = node_index[i];
        const int lag = std::min({m - lo, hi - m, size - 1 - m, m, max_lag});
        double* row = &out.values[static_cast<std::size_t>(i) * grid.p_count];
        if (lag < 0) {
            std::fill(row, row + grid.p_count, 0.0);
            return;
        }
        // Simpson weights over 2*lag intervals; a single node gets no weight.
        std::vector<complex> integrand(static_cast<std::size_t>(2 * lag + 1));
        for (int s = -lag; s <= lag; ++s) {
            double w = 0.0;
            if (lag > 0) {
                const int pos = s + lag;
                w = (pos == 0 || pos == 2 * lag) ? 1.0 : (pos % 2 == 1 ? 4.0 : 2.0);
                w *= h / 3.0;
            }
            integrand[s + lag] = w * std::conj(amp[m + s]) * amp[m - s];
        }
        for (int j = 0; j < grid.p_count; ++j) {
            const complex* e = &phase[static_cast<std::size_t>(j) * (max_lag + 1)];
            complex sum = integrand[lag];
            for (int s = 1; s <= lag; ++s)
                sum += integrand[lag + s] * e[s] + integrand[lag - s] * std::conj(e[s]);
            sum /= kPi;
            row[j] = sum.real();
            row_residue[i] = std::max(row_residue[i], std::abs(sum.imag()));
        }
    });

    out.imaginary_residue = *std::max_element(row_residue.begin(), row_residue.end());
    if (out.imaginary_residue > 1e-8)
        throw ConsistencyError("wigner_by_quadrature: imaginary residue " +
                               std::to_string(out.imaginary_residue) + " exceeds 1e-8");
    return out;
}

WignerField wigner_by_closed_form(const CoefficientVector& coeffs, const PhaseSpaceGrid& grid,
                                  int workers)
{
    validate(grid);
    if (coeffs.count() == 0)
        throw SizeError("wigner_by_closed_form: empty coefficient vector");
    const int r = coeffs.offset;
    const int count = coeffs.count();
    const int top = coeffs.max_index();

    std::vector<double> half_log_factorial(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k)
        half_log_factorial[k] = 0.5 * log_gamma(k + 1.0);

    WignerField out{grid, std::vector<double>(static_cast<std::size_t>(grid.x_count) * grid.p_count),
                    "closed_form", 0.0};

    for_each_row(grid.x_count, workers, [&](int i) {
        std::vector<double> laguerre(static_cast<std::size_t>(top) + 1);
        const double x = grid.x(i);
        for (int j = 0; j < grid.p_count; ++j) {
            const double p = grid.p(j);
            const double u = x * x + p * p;
            const double s = 2.0 * u;
            const double log_radius = 0.5 * std::log(s);  // ln |sqrt2 (x - ip)|
            const double theta = std::atan2(p, x);

            double total = 0.0;
            // Term W[|n><m|] with n = m + d:
            //   (-1)^m / pi sqrt(m!/n!) (sqrt2 (x - ip))^d e^{-u} L_m^{(d)}(2u)
            for (int d = 0; d < count; ++d) {
                if (d > 0 && u == 0.0)
                    break;
                const int m_top = top - d;
                laguerre[0] = 1.0;
                if (m_top >= 1)
                    laguerre[1] = 1.0 + d - s;
                for (int k = 1; k < m_top; ++k)
                    laguerre[k + 1] = ((2.0 * k + 1.0 + d - s) * laguerre[k] -
                                       (k + d) * laguerre[k - 1]) / (k + 1.0);

                const complex rotation = d > 0 ? std::polar(1.0, -d * theta) : complex(1.0, 0.0);
                double partial = 0.0;
                for (int a = 0; a + d < count; ++a) {
                    const int m = a + r;
                    const int n = m + d;
                    const complex weight =
                        std::conj(coeffs.coefficients[a]) * coeffs.coefficients[a + d];
                    if (weight == complex{} || laguerre[m] == 0.0)
                        continue;
                    const double log_magnitude = half_log_factorial[m] - half_log_factorial[n] +
                                                 (d > 0 ? d * log_radius : 0.0) - u +
                                                 std::log(std::abs(laguerre[m]));
                    double value = std::exp(log_magnitude);
                    if ((m % 2 == 1) != (laguerre[m] < 0.0))
                        value = -value;
                    const double contribution = (weight * rotation).real() * value;
                    partial += d > 0 ? 2.0 * contribution : contribution;
                }
                total += partial;
            }
            out.values[static_cast<std::size_t>(i) * grid.p_count + j] = total / kPi;
        }
    });
    return out;
}

ClassicalityReport classicality_report(const WignerField& w)
{
    ClassicalityReport report;
    report.min_value = std::numeric_limits<double>::infinity();
    const double cell = w.grid.x_step() * w.grid.p_step();
    for (int i = 0; i < w.grid.x_count; ++i) {
        for (int j = 0; j < w.grid.p_count; ++j) {
            const double v = w.at(i, j);
            if (v < report.min_value) {
                report.min_value = v;
                report.min_x = w.grid.x(i);
                report.min_p = w.grid.p(j);
            }
            if (v < 0.0)
                report.negative_volume -= v * cell;
        }
    }
    return report;
}

Marginals marginals(const WignerField& w)
{
    Marginals out{std::vector<double>(static_cast<std::size_t>(w.grid.x_count), 0.0),
                  std::vector<double>(static_cast<std::size_t>(w.grid.p_count), 0.0)};
    const double dx = w.grid.x_step();
    const double dp = w.grid.p_step();
    for (int i = 0; i < w.grid.x_count; ++i) {
        for (int j = 0; j < w.grid.p_count; ++j) {
            out.position[i] += w.at(i, j) * dp;
            out.momentum[j] += w.at(i, j) * dx;
        }
    }
    return out;
}

double marginal_mass(const std::vector<double>& marginal, double step)
{
    double sum = 0.0;
    for (double v : marginal)
        sum += v;
    return sum * step;
}

double marginal_variance(const std::vector<double>& marginal, const std::vector<double>& nodes)
{
    if (marginal.size() != nodes.size() || nodes.size() < 2)
        throw SizeError("marginal_variance: marginal and nodes differ in size");
    double mass = 0.0;
    double first = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        mass += marginal[i];
        first += marginal[i] * nodes[i];
        second += marginal[i] * nodes[i] * nodes[i];
    }
    const double mean = first / mass;
    return second / mass - mean * mean;
}

double photon_added_fidelity(complex z, const CoefficientVector& coeffs)
{
    const int r = coeffs.offset;
    // r! L_r(-|z|^2) = <z| a^r (a^dagger)^r |z>
    const double s = -std::norm(z);
    double l_prev = 1.0;
    double l_curr = 1.0 - s;
    double laguerre = r == 0 ? 1.0 : l_curr;
    for (int k = 1; k < r; ++k) {
        const double next = ((2.0 * k + 1.0 - s) * l_curr - k * l_prev) / (k + 1.0);
        l_prev = l_curr;
        l_curr = next;
        laguerre = l_curr;
    }
    const double log_norm = log_gamma(r + 1.0) + std::log(laguerre);

    complex overlap{};
    for (int k = 0; k < coeffs.count(); ++k) {
        const complex pacs = poisson_amplitude(k, z) *
                             std::exp(0.5 * (log_gamma(k + r + 1.0) - log_gamma(k + 1.0)));
        overlap += std::conj(pacs) * coeffs.coefficients[k];
    }
    return std::norm(overlap) * std::exp(-log_norm);
}

} // namespace cxosc
