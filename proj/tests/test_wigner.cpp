#include <doctest.h>

#include <cmath>
#include <memory>

#include "cxosc/error.hpp"
#include "cxosc/states.hpp"
#include "cxosc/wigner.hpp"

using namespace cxosc;

namespace {

GridPtr grid_for(int max_index)
{
    return std::make_shared<const SpatialGrid>(SpatialGrid::for_max_index(max_index));
}

struct Computed {
    WignerField quad;
    WignerField closed;
};

Computed both(const CoefficientVector& c, int workers = 1)
{
    const GridPtr grid = grid_for(c.max_index());
    const PhaseSpaceGrid phase = default_phase_grid(c.max_index(), grid->step());
    return {wigner_by_quadrature(oscillator_superposition(c, grid), phase, workers),
            wigner_by_closed_form(c, phase, workers)};
}

double max_gap(const WignerField& a, const WignerField& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

} // namespace

TEST_CASE("phase-space grid defaults")
{
    const PhaseSpaceGrid g = default_phase_grid(30);
    CHECK(g.x_count == 201);
    CHECK(g.x(100) == 0.0);
    // x nodes land on the spatial grid
    const double ratio = g.x_step() / kDefaultGridStep;
    CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
    CHECK(g.x_extent >= std::sqrt(2.0 * 61.0) + 3.0);
    CHECK_THROWS_AS(validate(PhaseSpaceGrid{5.0, 5.0, 200, 201}), ArgumentError);
    CHECK_THROWS_AS(validate(PhaseSpaceGrid{5.0, 5.0, 21, 21}), ArgumentError);
}

TEST_CASE("Fock states at the origin")
{
    for (int n : {0, 1, 2, 5}) {
        const auto [quad, closed] = both(single_state_coefficients(n));
        const int o = (quad.grid.x_count - 1) / 2;
        const double expected = (n % 2 == 0 ? 1.0 : -1.0) / kPi;
        CHECK(quad.at(o, o) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(closed.at(o, o) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("coherent state Wigner function is a displaced Gaussian")
{
    const complex z(0.8, -0.5);
    const auto c = poisson_coefficients(make_poisson_spec(z, 0));
    const auto [quad, closed] = both(c);
    // |z> has <x> = sqrt(2) Re z and <p> = sqrt(2) Im z in these units.
    const double x0 = std::sqrt(2.0) * z.real();
    const double p0 = std::sqrt(2.0) * z.imag();
    double worst = 0.0;
    for (int i = 0; i < closed.grid.x_count; i += 7)
        for (int j = 0; j < closed.grid.p_count; j += 7) {
            const double dx = closed.grid.x(i) - x0;
            const double dp = closed.grid.p(j) - p0;
            worst = std::max(worst, std::abs(closed.at(i, j) - std::exp(-dx * dx - dp * dp) / kPi));
        }
    // the Poisson series is cut at tail mass 1e-12
    CHECK(worst < 1e-6);
    CHECK(max_gap(quad, closed) < 1e-8);
}

TEST_CASE("quadrature and closed form agree for complex superpositions")
{
    std::vector<complex> v{{0.3, 0.1}, {-0.2, 0.5}, {0.4, -0.3}, {0.1, 0.2}, {-0.35, 0.0}};
    double norm = 0.0;
    for (auto& x : v)
        norm += std::norm(x);
    for (auto& x : v)
        x /= std::sqrt(norm);
    for (int r : {0, 3}) {
        const auto [quad, closed] = both(CoefficientVector::with_equal_duals(r, v));
        CHECK(max_gap(quad, closed) < 1e-6);
        CHECK(quad.imaginary_residue < 1e-10);
    }
}

TEST_CASE("marginals, masses and classicality of n = 30 binomial states")
{
    struct Case {
        double p;
        int r;
    };
    for (const Case cs : {Case{0.1, 0}, Case{0.1, 1}, Case{0.5, 0}, Case{0.5, 3}}) {
        const auto c = binomial_coefficients({30, cs.p, cs.r});
        const GridPtr grid = grid_for(c.max_index());
        const PhaseSpaceGrid phase = default_phase_grid(c.max_index(), grid->step());
        const WaveField field = oscillator_superposition(c, grid);
        const WignerField w = wigner_by_quadrature(field, phase);
        const Marginals m = marginals(w);
        CHECK(marginal_mass(m.position, phase.x_step()) == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(marginal_mass(m.momentum, phase.p_step()) == doctest::Approx(1.0).epsilon(1e-3));
        double worst = 0.0;
        const int stride = static_cast<int>(std::lround(phase.x_step() / grid->step()));
        for (int i = 0; i < phase.x_count; ++i) {
            const int node = grid->center() + (i - (phase.x_count - 1) / 2) * stride;
            worst = std::max(worst, std::abs(m.position[i] - std::norm(field.amplitudes[node])));
        }
        CHECK(worst < 1e-4);

        const ClassicalityReport rep = classicality_report(w);
        if (cs.p == 0.1 && cs.r == 0)
            CHECK(rep.min_value >= -1e-3);
        else if (cs.p == 0.1)
            CHECK(rep.min_value < -0.01);
        else
            CHECK(rep.negative_volume < 0.01);
    }
}

TEST_CASE("results do not depend on the worker count")
{
    const auto c = binomial_coefficients({10, 0.3, 1});
    const auto one = both(c, 1);
    const auto many = both(c, 3);
    CHECK(one.quad.values == many.quad.values);
    CHECK(one.closed.values == many.closed.values);
}

TEST_CASE("input checks")
{
    const GridPtr grid = grid_for(3);
    WaveField f = oscillator_state(2, grid);
    for (auto& v : f.amplitudes)
        v *= 2.0;
    CHECK_THROWS_AS(wigner_by_quadrature(f, default_phase_grid(3)), NormalizationError);
    const PhaseSpaceGrid off_grid{5.003, 5.0, 101, 101};
    CHECK_THROWS_AS(wigner_by_quadrature(oscillator_state(2, grid), off_grid), ArgumentError);
}

TEST_CASE("photon-added fidelity")
{
    const complex z(1.0, 0.0);
    CHECK(photon_added_fidelity(z, poisson_coefficients(make_poisson_spec(z, 0))) ==
          doctest::Approx(1.0).epsilon(1e-10));
    const double f = photon_added_fidelity(z, poisson_coefficients(make_poisson_spec(z, 2)));
    CHECK(f > 0.0);
    CHECK(f < 1.0);
}
