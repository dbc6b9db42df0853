#include "cxosc/states.hpp"

#include <cmath>
#include <string>

#include "cxosc/error.hpp"

namespace cxosc {

CoefficientVector CoefficientVector::with_equal_duals(int offset, std::vector<complex> coefficients)
{
    if (offset < 0)
        throw ArgumentError("CoefficientVector: offset must be non-negative");
    CoefficientVector out;
    out.offset = offset;
    out.dual_coefficients = coefficients;
    out.coefficients = std::move(coefficients);
    return out;
}

complex CoefficientVector::binorm() const
{
    if (dual_coefficients.size() != coefficients.size())
        throw SizeError("CoefficientVector: dual count differs from coefficient count");
    complex sum{};
    for (std::size_t k = 0; k < coefficients.size(); ++k)
        sum += std::conj(dual_coefficients[k]) * coefficients[k];
    return sum;
}

int poisson_truncation(complex z, double tail)
{
    if (!(tail > 0.0))
        throw ArgumentError("poisson_truncation: tail mass must be positive");
    const double mean = std::norm(z);
    std::vector<double> mass;
    for (int k = 0;; ++k) {
        const double pk = std::norm(poisson_amplitude(k, z));
        mass.push_back(pk);
        if ((k > mean && pk < 1e-40 * tail) || k > 100000)
            break;
    }
    // Suffix sums from the far tail inwards.
    std::vector<double> beyond(mass.size() + 1, 0.0);
    for (std::size_t k = mass.size(); k-- > 0;)
        beyond[k] = beyond[k + 1] + mass[k];
    for (std::size_t k = 0; k < mass.size(); ++k)
        if (beyond[k + 1] < tail)
            return static_cast<int>(k);
    return static_cast<int>(mass.size()) - 1;
}

PoissonSpec make_poisson_spec(complex z, int r)
{
    if (r < 0)
        throw ArgumentError("PoissonSpec: r must be non-negative");
    return PoissonSpec{z, r, poisson_truncation(z)};
}

CoefficientVector binomial_coefficients(const BinomialSpec& spec)
{
    if (spec.n < 0 || spec.r < 0)
        throw ArgumentError("BinomialSpec: n and r must be non-negative");
    if (!(spec.p >= 0.0 && spec.p <= 1.0))
        throw ArgumentError("BinomialSpec: p must lie in [0, 1]");
    std::vector<complex> c(static_cast<std::size_t>(spec.n) + 1);
    for (int k = 0; k <= spec.n; ++k)
        c[k] = std::sqrt(binomial_pmf(spec.n, k, spec.p));
    return CoefficientVector::with_equal_duals(spec.r, std::move(c));
}

CoefficientVector poisson_coefficients(const PoissonSpec& spec)
{
    if (spec.r < 0 || spec.truncation < 0)
        throw ArgumentError("PoissonSpec: r and truncation must be non-negative");
    std::vector<complex> c(static_cast<std::size_t>(spec.truncation) + 1);
    double mass = 0.0;
    for (int k = 0; k <= spec.truncation; ++k) {
        c[k] = poisson_amplitude(k, spec.z);
        mass += std::norm(c[k]);
    }
    const double scale = 1.0 / std::sqrt(mass);
    for (auto& ck : c)
        ck *= scale;
    return CoefficientVector::with_equal_duals(spec.r, std::move(c));
}

CoefficientVector single_state_coefficients(int r)
{
    return CoefficientVector::with_equal_duals(r, {complex(1.0, 0.0)});
}

double energy_expectation(const CoefficientVector& coeffs)
{
    complex sum{};
    for (int k = 0; k < coeffs.count(); ++k)
        sum += std::conj(coeffs.dual_coefficients[k]) * coeffs.coefficients[k] *
               eigen_energy(k + coeffs.offset);
    return sum.real();
}

double energy_expectation_offset_free(const CoefficientVector& coeffs)
{
    complex sum{};
    for (int k = 0; k < coeffs.count(); ++k)
        sum += std::conj(coeffs.dual_coefficients[k]) * coeffs.coefficients[k] * eigen_energy(k);
    return sum.real();
}

CoefficientVector evolve(const CoefficientVector& coeffs, double t)
{
    CoefficientVector out = coeffs;
    for (int k = 0; k < coeffs.count(); ++k) {
        const complex phase = std::polar(1.0, -2.0 * k * t);
        out.coefficients[k] = coeffs.coefficients[k] * phase;
        out.dual_coefficients[k] = coeffs.dual_coefficients[k] * phase;
    }
    return out;
}

namespace {

void require_fits(const CoefficientVector& coeffs, const BasisSet& basis)
{
    if (coeffs.dual_coefficients.size() != coeffs.coefficients.size())
        throw SizeError("CoefficientVector: dual count differs from coefficient count");
    if (coeffs.offset < 0 || coeffs.max_index() >= basis.size())
        throw SizeError("basis of size " + std::to_string(basis.size()) +
                        " cannot hold eigenstate index " + std::to_string(coeffs.max_index()));
}

// sum_k weight_k * fields[k + offset]
std::vector<complex> combine(const std::vector<complex>& weights, int offset,
                             const std::vector<WaveField>& fields)
{
    std::vector<complex> out(fields.front().amplitudes.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const complex w = weights[k];
        if (w == complex{})
            continue;
        const auto& values = fields[k + static_cast<std::size_t>(offset)].amplitudes;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += w * values[i];
    }
    return out;
}

std::vector<complex> conjugated(const std::vector<complex>& values)
{
    std::vector<complex> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = std::conj(values[i]);
    return out;
}

} // namespace

Superposition synthesize(const CoefficientVector& coeffs, const BasisSet& basis)
{
    require_fits(coeffs, basis);
    return Superposition{
        WaveField(basis.grid(), combine(coeffs.coefficients, coeffs.offset, basis.states())),
        WaveField(basis.grid(), combine(coeffs.dual_coefficients, coeffs.offset, basis.duals())),
    };
}

CoefficientVector fourier_analyze(const WaveField& field, const BasisSet& basis)
{
    std::vector<complex> c(static_cast<std::size_t>(basis.size()));
    for (int k = 0; k < basis.size(); ++k)
        c[k] = biproduct(basis.duals()[k], field);
    return CoefficientVector::with_equal_duals(0, std::move(c));
}

CoefficientVector fourier_analyze(const WaveField& field, const WaveField& dual_field,
                                  const BasisSet& basis)
{
    CoefficientVector out = fourier_analyze(field, basis);
    for (int k = 0; k < basis.size(); ++k)
        out.dual_coefficients[k] = biproduct(basis.states()[k], dual_field);
    return out;
}

DensityCurrentFrame density_current_frame(const CoefficientVector& coeffs, const BasisSet& basis,
                                          double t)
{
    require_fits(coeffs, basis);
    const CoefficientVector evolved = evolve(coeffs, t);

    // conj(phi_bar) = sum conj(dual_k) psi_{k+r}; derivatives use the analytic psi'.
    const auto dual_conj_weights = conjugated(evolved.dual_coefficients);
    const auto phi = combine(evolved.coefficients, evolved.offset, basis.states());
    const auto dphi = combine(evolved.coefficients, evolved.offset, basis.derivatives());
    const auto bar = combine(dual_conj_weights, evolved.offset, basis.states());
    const auto dbar = combine(dual_conj_weights, evolved.offset, basis.derivatives());

    const std::size_t m = phi.size();
    DensityCurrentFrame frame;
    frame.time = t;
    frame.grid = basis.grid();
    frame.rho_b.resize(m);
    frame.current_b.resize(m);
    frame.rho.resize(m);
    frame.current.resize(m);
    const complex i_unit(0.0, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        frame.rho_b[i] = bar[i] * phi[i];
        frame.current_b[i] = i_unit * (phi[i] * dbar[i] - bar[i] * dphi[i]);
        frame.rho[i] = std::norm(phi[i]);
        // i (phi conj(phi)' - conj(phi) phi') = 2 Im(conj(phi) phi')
        frame.current[i] = 2.0 * std::imag(std::conj(phi[i]) * dphi[i]);
    }
    return frame;
}

template <class T>
std::vector<T> differentiate(const std::vector<T>& f, double h)
{
    const std::size_t m = f.size();
    std::vector<T> out(m, T{});
    if (m < 5)
        throw SizeError("differentiate: need at least five samples");
    for (std::size_t i = 2; i + 2 < m; ++i)
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    // one-sided five-point stencils keep fourth order at the ends
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    out[m - 1] = (25.0 * f[m - 1] - 48.0 * f[m - 2] + 36.0 * f[m - 3] - 16.0 * f[m - 4] +
                  3.0 * f[m - 5]) / (12.0 * h);
    out[m - 2] = (3.0 * f[m - 1] + 10.0 * f[m - 2] - 18.0 * f[m - 3] + 6.0 * f[m - 4] -
                  f[m - 5]) / (12.0 * h);
    return out;
}

template std::vector<double> differentiate(const std::vector<double>&, double);
template std::vector<complex> differentiate(const std::vector<complex>&, double);

ContinuityResiduals continuity_residuals(const CoefficientVector& coeffs, const BasisSet& basis,
                                         double t, double dt)
{
    if (!(dt > 0.0))
        throw ArgumentError("continuity_residuals: dt must be positive");
    const DensityCurrentFrame now = density_current_frame(coeffs, basis, t);
    const DensityCurrentFrame later = density_current_frame(coeffs, basis, t + dt);
    const DensityCurrentFrame earlier = density_current_frame(coeffs, basis, t - dt);
    const double h = basis.grid()->step();
    const auto& x = basis.grid()->nodes();

    ContinuityResiduals out;
    out.flux_divergence_b = differentiate(now.current_b, h);
    out.flux_divergence = differentiate(now.current, h);
    const std::size_t m = now.rho.size();
    out.biorthogonal.resize(m);
    out.conventional.resize(m);
    out.conventional_unweighted.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const complex drho_b = (later.rho_b[i] - earlier.rho_b[i]) / (2.0 * dt);
        const double drho = (later.rho[i] - earlier.rho[i]) / (2.0 * dt);
        const double source = 2.0 * potential_value(basis.params(), x[i]).imag();
        out.biorthogonal[i] = out.flux_divergence_b[i] + drho_b;
        out.conventional[i] = out.flux_divergence[i] + drho - source * now.rho[i];
        out.conventional_unweighted[i] = out.flux_divergence[i] + drho - source;
    }
    return out;
}

} // namespace cxosc
