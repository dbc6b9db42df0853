#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "cxosc/cxosc.h"

namespace {

const cxosc_params kReference{0.78539816339744831, 0.88622692545275801, 1.0, 1.0};

} // namespace

TEST_CASE("status codes and last error")
{
    const cxosc_params bad{1.0, 2.0, 1.0, 0.0};
    CHECK(cxosc_validate_params(&bad) == CXOSC_ERR_PARAMETER_DOMAIN);
    CHECK(std::string(cxosc_last_error()).find("b^2/(4a)") != std::string::npos);
    CHECK(cxosc_validate_params(&kReference) == CXOSC_OK);
    CHECK(cxosc_validate_params(nullptr) == CXOSC_ERR_ARGUMENT);
    CHECK(std::string(cxosc_version()).size() > 0);

    cxosc_grid* grid = nullptr;
    CHECK(cxosc_grid_create(-1.0, 0.1, &grid) == CXOSC_ERR_ARGUMENT);
    CHECK(grid == nullptr);
    CHECK(cxosc_grid_create_default(12, 0.01, &grid) == CXOSC_OK);
    cxosc_basis* basis = nullptr;
    CHECK(cxosc_basis_build(&kReference, 61, grid, &basis) == CXOSC_ERR_RESOLUTION);
    CHECK(basis == nullptr);
    cxosc_grid_destroy(grid);
    cxosc_grid_destroy(nullptr);
}

TEST_CASE("basis through the C interface")
{
    cxosc_params p = kReference;
    double gap = 1.0;
    REQUIRE(cxosc_consistent_lambda(&p, &p.lambda, nullptr) == CXOSC_OK);
    REQUIRE(cxosc_consistent_lambda(&p, nullptr, &gap) == CXOSC_OK);
    CHECK(std::abs(gap) < 1e-15);

    cxosc_grid* grid = nullptr;
    REQUIRE(cxosc_grid_create_default(12, 0.01, &grid) == CXOSC_OK);
    cxosc_basis* basis = nullptr;
    REQUIRE(cxosc_basis_build(&p, 12, grid, &basis) == CXOSC_OK);
    CHECK(cxosc_basis_size(basis) == 13);
    CHECK(cxosc_basis_energy(basis, 0) == -1.0);
    double deviation = 1.0;
    REQUIRE(cxosc_basis_gram_deviation(basis, &deviation) == CXOSC_OK);
    CHECK(deviation < 1e-6);

    const size_t m = cxosc_grid_size(grid);
    std::vector<double> re(m), im(m);
    CHECK(cxosc_basis_state(basis, 3, re.data(), im.data(), m - 1) == CXOSC_ERR_SIZE);
    CHECK(cxosc_basis_state(basis, 3, re.data(), im.data(), m) == CXOSC_OK);
    CHECK(cxosc_basis_state(basis, 13, re.data(), im.data(), m) == CXOSC_ERR_ARGUMENT);

    cxosc_coeffs* c = nullptr;
    REQUIRE(cxosc_coeffs_binomial(10, 0.3, 1, &c) == CXOSC_OK);
    std::vector<double> dre(m), dim(m);
    REQUIRE(cxosc_coeffs_synthesize(c, basis, re.data(), im.data(), dre.data(), dim.data(), m) == CXOSC_OK);
    cxosc_coeffs* back = nullptr;
    REQUIRE(cxosc_coeffs_analyze(basis, re.data(), im.data(), m, &back) == CXOSC_OK);
    CHECK(cxosc_coeffs_count(back) == 13);
    std::vector<double> cre(13), cim(13);
    REQUIRE(cxosc_coeffs_get(back, cre.data(), cim.data(), 13) == CXOSC_OK);
    CHECK(std::abs(cre[0]) < 1e-7);
    CHECK(cre[1] > 0.0);

    cxosc_continuity_summary s{};
    REQUIRE(cxosc_continuity(c, basis, 0.4, 1e-4, &s) == CXOSC_OK);
    CHECK(s.max_residual_b < 1e-2 * s.max_flux_divergence_b);

    cxosc_frame* frame = nullptr;
    REQUIRE(cxosc_frame_compute(c, basis, 0.4, &frame) == CXOSC_OK);
    double bre = 0.0, bim = 0.0;
    REQUIRE(cxosc_frame_binorm(frame, &bre, &bim) == CXOSC_OK);
    CHECK(bre == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(cxosc_frame_column_values(frame, static_cast<cxosc_frame_column>(9), re.data(), m) ==
          CXOSC_ERR_ARGUMENT);

    cxosc_frame_destroy(frame);
    cxosc_coeffs_destroy(back);
    cxosc_coeffs_destroy(c);
    cxosc_basis_destroy(basis);
    cxosc_grid_destroy(grid);
}

TEST_CASE("Wigner through the C interface")
{
    cxosc_coeffs* c = nullptr;
    REQUIRE(cxosc_coeffs_single(1, &c) == CXOSC_OK);
    cxosc_grid* grid = nullptr;
    REQUIRE(cxosc_grid_create_default(1, 0.01, &grid) == CXOSC_OK);
    cxosc_phase_grid phase{};
    REQUIRE(cxosc_phase_grid_default(1, 0.01, &phase) == CXOSC_OK);
    cxosc_wigner* quad = nullptr;
    cxosc_wigner* closed = nullptr;
    REQUIRE(cxosc_wigner_quadrature(c, grid, &phase, 2, &quad) == CXOSC_OK);
    REQUIRE(cxosc_wigner_closed_form(c, &phase, 2, &closed) == CXOSC_OK);
    double gap = 1.0;
    REQUIRE(cxosc_wigner_max_difference(quad, closed, &gap) == CXOSC_OK);
    CHECK(gap < 1e-6);
    cxosc_classicality rep{};
    REQUIRE(cxosc_wigner_classicality(closed, &rep) == CXOSC_OK);
    CHECK(rep.min_value == doctest::Approx(-1.0 / M_PI).epsilon(1e-12));
    CHECK(rep.min_x == 0.0);

    cxosc_phase_grid bad = phase;
    bad.x_count = 100;
    cxosc_wigner* w = nullptr;
    CHECK(cxosc_wigner_closed_form(c, &bad, 1, &w) == CXOSC_ERR_ARGUMENT);

    cxosc_wigner_destroy(quad);
    cxosc_wigner_destroy(closed);
    cxosc_grid_destroy(grid);
    cxosc_coeffs_destroy(c);
}

TEST_CASE("verify report")
{
    cxosc_verify_options opt{};
    opt.params = kReference;
    opt.suites = "limit,wigner";
    char* report = nullptr;
    int passed = 0;
    REQUIRE(cxosc_verify(&opt, &report, &passed) == CXOSC_OK);
    const auto doc = nlohmann::json::parse(report);
    cxosc_string_free(report);
    CHECK(passed == 1);
    CHECK(doc["passed"] == true);
    CHECK(doc["checks"].size() == 7);

    opt.suites = "nope";
    CHECK(cxosc_verify(&opt, &report, &passed) == CXOSC_ERR_ARGUMENT);
    CHECK(report == nullptr);
}
