// Acceptance run: one PASS/FAIL line per criterion.
//
// Criteria 1 and 3 (quadrature part) ask for bi-orthonormality at lambda values where
// the psi_n are not eigenfunctions: the construction needs lambda^2 = (4ac - b^2)/pi.
// They are evaluated as stated, reported as known failures, and followed by the same
// measurement at the solvable lambda. Any other failure makes the run fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include <json.hpp>

#include "cxosc/cxosc.h"

namespace fs = std::filesystem;

namespace {

const cxosc_params kReference{0.78539816339744831, 0.88622692545275801, 1.0, 1.0};
const std::set<int> kKnownUnattainable{1, 3};

struct Outcome {
    bool passed = false;
    std::string detail;
};

void need(int status, const char* what)
{
    if (status != CXOSC_OK)
        throw std::runtime_error(std::string(what) + ": " + cxosc_last_error());
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Handles {
    cxosc_grid* grid = nullptr;
    cxosc_basis* basis = nullptr;
    cxosc_coeffs* coeffs = nullptr;
    ~Handles()
    {
        cxosc_coeffs_destroy(coeffs);
        cxosc_basis_destroy(basis);
        cxosc_grid_destroy(grid);
    }
};

double gram_deviation(double lambda)
{
    cxosc_params p = kReference;
    p.lambda = lambda;
    Handles h;
    need(cxosc_grid_create_default(12, 0.01, &h.grid), "grid");
    need(cxosc_basis_build(&p, 12, h.grid, &h.basis), "basis");
    double dev = 0.0;
    need(cxosc_basis_gram_deviation(h.basis, &dev), "gram");
    return dev;
}

double consistent_lambda()
{
    double lambda = 0.0;
    need(cxosc_consistent_lambda(&kReference, &lambda, nullptr), "consistent lambda");
    return lambda;
}

Outcome criterion1()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string detail;
    for (double lambda : {0.5, 1.0, 2.0}) {
        const double d = gram_deviation(lambda);
        worst = std::max(worst, d);
        detail += fmt("lambda=%g", lambda) + fmt(": %.3g  ", d);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail += fmt("time %.2fs", seconds);
    return {worst < 1e-6 && seconds < 10.0, detail};
}

std::string criterion1_note()
{
    const double lambda = consistent_lambda();
    return fmt("at solvable lambda=%.6f", lambda) + fmt(": max|G-I| = %.3g", gram_deviation(lambda));
}

Outcome criterion2()
{
    bool ok = true;
    std::string detail;
    for (double p : {0.1, 0.5}) {
        cxosc_coeffs* c = nullptr;
        need(cxosc_coeffs_binomial(30, p, 0, &c), "binomial");
        double e = 0.0, e0 = 0.0;
        need(cxosc_coeffs_energy(c, &e, &e0), "energy");
        cxosc_coeffs_destroy(c);
        const double expected = p == 0.1 ? 5.0 : 29.0;
        ok = ok && std::abs(e - expected) < 1e-12;
        detail += fmt("p=%g", p) + fmt(": <H>=%.15g  ", e);
    }
    Handles h;
    need(cxosc_grid_create_default(12, 0.01, &h.grid), "grid");
    need(cxosc_basis_build(&kReference, 12, h.grid, &h.basis), "basis");
    for (int n = 0; n <= 12; ++n)
        ok = ok && cxosc_basis_energy(h.basis, n) == 2.0 * n - 1.0;
    detail += fmt("E_0=%g", cxosc_basis_energy(h.basis, 0));
    return {ok, detail};
}

// Worst |bi-norm - 1| in coefficient space and by quadrature of rho_B.
std::pair<double, double> binorm_errors(double lambda)
{
    cxosc_params p = kReference;
    p.lambda = lambda;
    Handles h;
    need(cxosc_coeffs_binomial(30, 0.1, 2, &h.coeffs), "binomial");
    const int top = cxosc_coeffs_offset(h.coeffs) + cxosc_coeffs_count(h.coeffs) - 1;
    need(cxosc_grid_create_default(top, 0.01, &h.grid), "grid");
    need(cxosc_basis_build(&p, top, h.grid, &h.basis), "basis");
    double coeff_err = 0.0, quad_err = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        cxosc_coeffs* e = nullptr;
        need(cxosc_coeffs_evolve(h.coeffs, t, &e), "evolve");
        double re = 0.0, im = 0.0;
        need(cxosc_coeffs_binorm(e, &re, &im), "binorm");
        coeff_err = std::max(coeff_err, std::hypot(re - 1.0, im));
        cxosc_coeffs_destroy(e);
        cxosc_frame* f = nullptr;
        need(cxosc_frame_compute(h.coeffs, h.basis, t, &f), "frame");
        need(cxosc_frame_binorm(f, &re, &im), "frame binorm");
        quad_err = std::max(quad_err, std::hypot(re - 1.0, im));
        cxosc_frame_destroy(f);
    }
    return {coeff_err, quad_err};
}

Outcome criterion3()
{
    const auto [c, q] = binorm_errors(1.0);
    return {c < 1e-12 && q < 1e-6, fmt("lambda=1: coefficient %.3g", c) + fmt(", quadrature %.3g", q)};
}

std::string criterion3_note()
{
    const double lambda = consistent_lambda();
    const auto [c, q] = binorm_errors(lambda);
    return fmt("at solvable lambda=%.6f", lambda) + fmt(": coefficient %.3g", c) +
           fmt(", quadrature %.3g", q);
}

Outcome criterion4()
{
    Handles h;
    need(cxosc_coeffs_binomial(30, 0.1, 2, &h.coeffs), "binomial");
    const int top = cxosc_coeffs_offset(h.coeffs) + cxosc_coeffs_count(h.coeffs) - 1;
    need(cxosc_grid_create_default(top, 0.01, &h.grid), "grid");
    need(cxosc_basis_build(&kReference, top, h.grid, &h.basis), "basis");
    cxosc_continuity_summary s{};
    need(cxosc_continuity(h.coeffs, h.basis, 0.4, 1e-4, &s), "continuity");
    const double rb = s.max_residual_b / s.max_flux_divergence_b;
    const double r = s.max_residual / s.max_flux_divergence;
    return {rb < 1e-2 && r < 1e-2,
            fmt("bi-orthogonal %.3g", rb) + fmt(", conventional (2 Im V rho) %.3g", r) +
                fmt(", literal 2 Im V %.3g", s.max_residual_unweighted / s.max_flux_divergence)};
}

nlohmann::json verify_suites(const char* suites)
{
    cxosc_verify_options opt{};
    opt.params = kReference;
    opt.suites = suites;
    opt.workers = 1;
    char* report = nullptr;
    int passed = 0;
    need(cxosc_verify(&opt, &report, &passed), "verify");
    auto doc = nlohmann::json::parse(report);
    cxosc_string_free(report);
    return doc;
}

Outcome from_suite(const char* suite)
{
    const auto doc = verify_suites(suite);
    std::string detail;
    for (const auto& c : doc["checks"])
        detail += fmt("%.3g ", c["measured"].get<double>());
    return {doc["passed"].get<bool>(), "measured: " + detail};
}

Outcome criteria78(bool classicality)
{
    struct Case {
        double p;
        int r;
    };
    const Case cases[] = {{0.1, 0}, {0.1, 1}, {0.5, 0}, {0.5, 1}, {0.5, 2}, {0.5, 3}};
    bool ok = true;
    std::string detail;
    double worst_marginal = 0.0, worst_mass = 0.0;
    for (const Case cs : cases) {
        Handles h;
        need(cxosc_coeffs_binomial(30, cs.p, cs.r, &h.coeffs), "binomial");
        const int top = cxosc_coeffs_offset(h.coeffs) + cxosc_coeffs_count(h.coeffs) - 1;
        need(cxosc_grid_create_default(top, 0.01, &h.grid), "grid");
        cxosc_phase_grid phase{};
        need(cxosc_phase_grid_default(top, 0.01, &phase), "phase grid");
        cxosc_wigner* w = nullptr;
        need(cxosc_wigner_quadrature(h.coeffs, h.grid, &phase, 0, &w), "wigner");
        if (classicality) {
            cxosc_classicality rep{};
            need(cxosc_wigner_classicality(w, &rep), "classicality");
            bool pass;
            if (cs.p == 0.1 && cs.r == 0) {
                pass = rep.min_value >= -1e-3;
                detail += fmt("(0.1,0) minW=%.2g ", rep.min_value);
            } else if (cs.p == 0.1) {
                pass = rep.min_value < -0.01;
                detail += fmt("(0.1,1) minW=%.3g ", rep.min_value);
            } else {
                pass = rep.negative_volume < 0.01;
                detail += "(0.5," + std::to_string(cs.r) + ") " + fmt("negvol=%.2g ", rep.negative_volume);
            }
            ok = ok && pass;
        } else {
            const std::size_t nx = phase.x_count, np = phase.p_count, m = cxosc_grid_size(h.grid);
            std::vector<double> pos(nx), mom(np), re(m), im(m);
            need(cxosc_wigner_marginals(w, pos.data(), nx, mom.data(), np), "marginals");
            need(cxosc_coeffs_oscillator_field(h.coeffs, h.grid, re.data(), im.data(), m), "field");
            const double dx = 2.0 * phase.x_extent / (phase.x_count - 1);
            const double dp = 2.0 * phase.p_extent / (phase.p_count - 1);
            const long stride = std::lround(dx / 0.01);
            const long center = static_cast<long>((m - 1) / 2);
            double xm = 0.0, pm = 0.0;
            for (std::size_t i = 0; i < nx; ++i) {
                const long node = center + (static_cast<long>(i) - (phase.x_count - 1) / 2) * stride;
                worst_marginal = std::max(worst_marginal,
                                          std::abs(pos[i] - (re[node] * re[node] + im[node] * im[node])));
                xm += pos[i] * dx;
            }
            for (double v : mom)
                pm += v * dp;
            worst_mass = std::max({worst_mass, std::abs(xm - 1.0), std::abs(pm - 1.0)});
        }
        cxosc_wigner_destroy(w);
    }
    if (!classicality) {
        ok = worst_marginal < 1e-4 && worst_mass < 1e-3;
        detail = fmt("max marginal error %.3g", worst_marginal) + fmt(", max |mass-1| %.3g", worst_mass);
    }
    return {ok, detail};
}

Outcome criterion9()
{
    cxosc_coeffs* b = nullptr;
    cxosc_coeffs* p = nullptr;
    need(cxosc_coeffs_binomial(400, 0.0025, 0, &b), "binomial");
    need(cxosc_coeffs_poisson(1.0, 0.0, 0, &p), "poisson");
    const int nb = cxosc_coeffs_count(b), np = cxosc_coeffs_count(p);
    std::vector<double> bre(nb), bim(nb), pre(np), pim(np);
    need(cxosc_coeffs_get(b, bre.data(), bim.data(), nb), "get");
    need(cxosc_coeffs_get(p, pre.data(), pim.data(), np), "get");
    double gap = 0.0;
    for (int k = 0; k < nb; ++k) {
        const double pk = k < np ? pre[k] * pre[k] + pim[k] * pim[k] : 0.0;
        gap = std::max(gap, std::abs(bre[k] * bre[k] + bim[k] * bim[k] - pk));
    }
    cxosc_coeffs_destroy(b);
    cxosc_coeffs_destroy(p);
    return {gap < 2e-3, fmt("max_k gap %.3g", gap)};
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(CXOSC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool identical(const fs::path& a, const fs::path& b)
{
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        ++n;
        if (slurp(e.path()) != slurp(b / e.path().filename()))
            return false;
    }
    return n > 0 &&
           n == static_cast<std::size_t>(std::distance(fs::directory_iterator(b), fs::directory_iterator{}));
}

Outcome criterion10()
{
    const fs::path root = fs::path(CXOSC_TEST_SCRATCH) / "acceptance";
    fs::remove_all(root);
    bool ok = true;
    const std::string frames = "frames --p 0.1,0.5 --r 0,1 --times 0,pi/4,pi/2,1.3 ";
    const std::string wigner = "wigner --p 0.1,0.5 --r 0,1 ";
    for (const auto& [name, args] : {std::pair{"frames", frames}, std::pair{"wigner", wigner}}) {
        const fs::path a = root / (std::string(name) + "_1a");
        const fs::path b = root / (std::string(name) + "_1b");
        const fs::path c = root / (std::string(name) + "_4");
        ok = ok && run_cli(args + "--workers 1 --out " + a.string()) == 0;
        ok = ok && run_cli(args + "--workers 1 --out " + b.string()) == 0;
        ok = ok && run_cli(args + "--workers 4 --out " + c.string()) == 0;
        ok = ok && identical(a, b) && identical(a, c);
    }
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli("verify");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // verify exits 1 because of the gram suite (criterion 1); timing is what counts here
    ok = ok && (code == 0 || code == 1) && seconds < 60.0;
    return {ok, "frames/wigner byte-identical (2 runs, 1 vs 4 workers): " +
                    std::string(ok ? "yes" : "no") + fmt(", full verify %.1fs", seconds)};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
        std::function<std::string()> note;
    };
    const std::vector<Criterion> criteria{
        {1, "bi-orthonormality, a=pi/4 b=sqrt(pi)/2 c=1, lambda in {0.5,1,2}", criterion1, criterion1_note},
        {2, "energies 5 and 29, E_n = 2n-1", criterion2, nullptr},
        {3, "bi-norm invariance (coefficients and quadrature)", criterion3, criterion3_note},
        {4, "continuity residuals at t=0.4, lambda=1", criterion4, nullptr},
        {5, "oscillator-limit recovery", [] { return from_suite("limit"); }, nullptr},
        {6, "Wigner dual-path agreement and W(0,0)", [] { return from_suite("wigner"); }, nullptr},
        {7, "Wigner marginals and mass", [] { return criteria78(false); }, nullptr},
        {8, "classicality pattern of n=30 binomial states", [] { return criteria78(true); }, nullptr},
        {9, "binomial -> Poisson limit", criterion9, nullptr},
        {10, "determinism and verify runtime", criterion10, nullptr},
    };

    int unexpected = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const bool known = !o.passed && kKnownUnattainable.count(c.id);
        std::printf("criterion %2d: %s%s -- %s -- %s\n", c.id, o.passed ? "PASS" : "FAIL",
                    known ? " (known: lambda off the solvable set)" : "", c.title, o.detail.c_str());
        if (known && c.note)
            std::printf("              note: %s\n", c.note().c_str());
        if (!o.passed && !known)
            ++unexpected;
        std::fflush(stdout);
    }
    return unexpected == 0 ? 0 : 1;
}
