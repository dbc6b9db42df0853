#include "cxosc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <sstream>

#include "cxosc/error.hpp"
#include "cxosc/states.hpp"
#include "cxosc/wigner.hpp"

namespace cxosc {

namespace {

constexpr double kGramTolerance = 1e-6;
constexpr double kCoefficientBinormTolerance = 1e-12;
constexpr double kQuadratureBinormTolerance = 1e-6;
constexpr double kContinuityTolerance = 1e-2;
constexpr double kLimitOverlapTolerance = 1e-8;
constexpr double kLimitPotentialTolerance = 1e-12;
constexpr double kWignerTolerance = 1e-6;

std::string label(const char* what, double value)
{
    std::ostringstream os;
    os << what << value;
    return os.str();
}

GridPtr make_grid(const VerifyOptions& options, int max_index)
{
    const double extent =
        options.grid_extent > 0.0 ? options.grid_extent : SpatialGrid::default_extent(max_index);
    return std::make_shared<const SpatialGrid>(extent, options.grid_step);
}

void add(std::vector<CheckResult>& out, const std::string& suite, std::string name,
         double measured, double tolerance)
{
    out.push_back(CheckResult{suite, std::move(name), measured, tolerance,
                              std::isfinite(measured) && measured < tolerance});
}

double max_abs(const std::vector<complex>& v)
{
    double m = 0.0;
    for (const auto& z : v)
        m = std::max(m, std::abs(z));
    return m;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double z : v)
        m = std::max(m, std::abs(z));
    return m;
}

PotentialParams with_lambda(PotentialParams p, double lambda)
{
    p.lambda = lambda;
    return p;
}

const BinomialSpec kReferencePacket{30, 0.1, 2};

void gram_suite(const VerifyOptions& options, std::vector<CheckResult>& out)
{
    constexpr int max_index = 12;
    const GridPtr grid = make_grid(options, max_index);
    for (double lambda : options.lambdas) {
        const BasisSet basis = build_basis(with_lambda(options.params, lambda), max_index, grid);
        add(out, "gram", label("max|G-I| N=12 lambda=", lambda),
            identity_deviation(gram_matrix(basis)), kGramTolerance);
    }
}

void binorm_checks(const VerifyOptions& options, const std::string& suite, double lambda,
                   std::vector<CheckResult>& out)
{
    const CoefficientVector coeffs = binomial_coefficients(kReferencePacket);
    const GridPtr grid = make_grid(options, coeffs.max_index());
    const BasisSet basis = build_basis(with_lambda(options.params, lambda), coeffs.max_index(), grid);
    const std::string tag = label(" lambda=", lambda);
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const CoefficientVector evolved = evolve(coeffs, t);
        add(out, suite, label("coefficient |binorm-1| t=", t) + tag,
            std::abs(evolved.binorm() - 1.0), kCoefficientBinormTolerance);
        const Superposition s = synthesize(evolved, basis);
        add(out, suite, label("quadrature |binorm-1| t=", t) + tag,
            std::abs(biproduct(s.dual, s.state) - 1.0), kQuadratureBinormTolerance);
    }
}

void continuity_checks(const VerifyOptions& options, const std::string& suite, double lambda,
                       std::vector<CheckResult>& out)
{
    const CoefficientVector coeffs = binomial_coefficients(kReferencePacket);
    const GridPtr grid = make_grid(options, coeffs.max_index());
    const BasisSet basis = build_basis(with_lambda(options.params, lambda), coeffs.max_index(), grid);
    const ContinuityResiduals res = continuity_residuals(coeffs, basis, 0.4);
    const std::string tag = label(" lambda=", lambda);
    add(out, suite, "max|dJ_B/dx + drho_B/dt| / max|dJ_B/dx| t=0.4" + tag,
        max_abs(res.biorthogonal) / max_abs(res.flux_divergence_b), kContinuityTolerance);
    add(out, suite, "max|dJ/dx + drho/dt - 2 Im(V) rho| / max|dJ/dx| t=0.4" + tag,
        max_abs(res.conventional) / max_abs(res.flux_divergence), kContinuityTolerance);
}

void binorm_suite(const VerifyOptions& options, std::vector<CheckResult>& out)
{
    binorm_checks(options, "binorm", options.params.lambda, out);
}

void continuity_suite(const VerifyOptions& options, std::vector<CheckResult>& out)
{
    continuity_checks(options, "continuity", options.params.lambda, out);
}

// The same properties at the one lambda for which alpha obeys the
// Ermakov-Pinney equation and the psi_n are exact eigenfunctions.
void consistent_suite(const VerifyOptions& options, std::vector<CheckResult>& out)
{
    constexpr int max_index = 12;
    const double lambda = consistent_lambda(options.params);
    const GridPtr grid = make_grid(options, max_index);
    const BasisSet basis = build_basis(with_lambda(options.params, lambda), max_index, grid);
    add(out, "consistent", label("max|G-I| N=12 lambda=", lambda),
        identity_deviation(gram_matrix(basis)), kGramTolerance);
    binorm_checks(options, "consistent", lambda, out);
    continuity_checks(options, "consistent", lambda, out);
}

// Deterministic uniform doubles in [-1, 1).
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return 2.0 * static_cast<double>(engine_() >> 11) * 0x1.0p-53 - 1.0; }

private:
    std::mt19937_64 engine_;
};

void wigner_suite(const VerifyOptions& options, std::vector<CheckResult>& out)
{
    constexpr int vectors = 20;
    constexpr int terms = 5;
    constexpr int max_offset = 3;
    UniformStream stream(20240611);
    double worst = 0.0;
    for (int v = 0; v < vectors; ++v) {
        const int r = static_cast<int>((stream.next() + 1.0) * 0.5 * (max_offset + 1));
        std::vector<complex> c(terms);
        double norm = 0.0;
        for (auto& ck : c) {
            const double re = stream.next();
            ck = complex(re, stream.next());
            norm += std::norm(ck);
        }
        for (auto& ck : c)
            ck /= std::sqrt(norm);
        const CoefficientVector coeffs = CoefficientVector::with_equal_duals(r, std::move(c));
        const GridPtr grid = make_grid(options, coeffs.max_index());
        const PhaseSpaceGrid phase = default_phase_grid(coeffs.max_index(), grid->step());
        const WignerField quad =
            wigner_by_quadrature(oscillator_superposition(coeffs, grid), phase, options.workers);
        const WignerField closed = wigner_by_closed_form(coeffs, phase, options.workers);
        for (std::size_t i = 0; i < quad.values.size(); ++i)
            worst = std::max(worst, std::abs(quad.values[i] - closed.values[i]));
    }
    add(out, "wigner", "max|W_quadrature - W_closed_form| over 20 seeded vectors", worst,
        kWignerTolerance);

    for (int n : {0, 1}) {
        const CoefficientVector fock = single_state_coefficients(n);
        const GridPtr grid = make_grid(options, n);
        const PhaseSpaceGrid phase = default_phase_grid(n, grid->step());
        const int origin = (phase.x_count - 1) / 2;
        const double expected = (n == 0 ? 1.0 : -1.0) / kPi;
        const WignerField quad = wigner_by_quadrature(oscillator_superposition(fock, grid), phase);
        const WignerField closed = wigner_by_closed_form(fock, phase);
        add(out, "wigner", label("quadrature |W(0,0) - (-1)^n/pi| n=", n),
            std::abs(quad.at(origin, origin) - expected), kWignerTolerance);
        add(out, "wigner", label("closed form |W(0,0) - (-1)^n/pi| n=", n),
            std::abs(closed.at(origin, origin) - expected), kWignerTolerance);
    }
}

void limit_suite(const VerifyOptions& options, std::vector<CheckResult>& out)
{
    constexpr int max_index = 11;
    const PotentialParams oscillator{0.0, 0.0, 1.0, 0.0};
    const GridPtr grid = make_grid(options, max_index);
    const BasisSet basis = build_basis(oscillator, max_index, grid);
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
        const WaveField phi = oscillator_state(n + 1, grid);
        const double overlap = std::abs(biproduct(phi.conjugate(), basis.states()[n + 1]));
        worst = std::max(worst, std::abs(overlap - 1.0));
    }
    add(out, "limit", "max_n ||int phi_{n+1} psi_{n+1} dx| - 1|, n <= 10", worst,
        kLimitOverlapTolerance);

    double potential_gap = 0.0;
    for (double x : grid->nodes())
        potential_gap = std::max(potential_gap, std::abs(potential_value(oscillator, x) - (x * x - 2.0)));
    add(out, "limit", "max|V - (x^2 - 2)| on grid", potential_gap, kLimitPotentialTolerance);
}

} // namespace

std::vector<std::string> known_suites()
{
    return {"gram", "binorm", "continuity", "wigner", "limit", "consistent"};
}

std::vector<CheckResult> run_verification(const VerifyOptions& options)
{
    const auto known = known_suites();
    for (const auto& s : options.suites)
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw ArgumentError("unknown verification suite '" + s + "'");
    if (!(options.grid_step > 0.0))
        throw ArgumentError("verification grid step must be positive");
    validate(options.params);

    std::vector<CheckResult> out;
    for (const auto& s : options.suites) {
        if (s == "gram")
            gram_suite(options, out);
        else if (s == "binorm")
            binorm_suite(options, out);
        else if (s == "continuity")
            continuity_suite(options, out);
        else if (s == "wigner")
            wigner_suite(options, out);
        else if (s == "limit")
            limit_suite(options, out);
        else if (s == "consistent")
            consistent_suite(options, out);
    }
    return out;
}

} // namespace cxosc
