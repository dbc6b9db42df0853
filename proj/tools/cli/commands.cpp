#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include "expression.hpp"
#include "handles.hpp"
#include "output.hpp"

namespace cxosc_cli {

namespace fs = std::filesystem;

int exit_code_for(int status)
{
    switch (status) {
    case CXOSC_OK: return kExitOk;
    case CXOSC_ERR_ARGUMENT:
    case CXOSC_ERR_PARAMETER_DOMAIN:
    case CXOSC_ERR_NORMALIZATION: return kExitParameterDomain;
    case CXOSC_ERR_RESOLUTION:
    case CXOSC_ERR_SIZE: return kExitResolution;
    case CXOSC_ERR_UNSUPPORTED: return kExitUnsupported;
    default: return kExitVerificationFailed;
    }
}

void check(int status, const char* what)
{
    if (status != CXOSC_OK)
        throw CliError(exit_code_for(status), std::string(what) + ": " + cxosc_last_error());
}

namespace {

std::string compact(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%g", value);
    return buffer;
}

Json params_json(const RunConfig& config)
{
    double consistent = 0.0;
    double gap = 0.0;
    check(cxosc_consistent_lambda(&config.params, &consistent, &gap), "potential parameters");
    return Json{{"a", config.params.a},
                {"b", config.params.b},
                {"c", config.params.c},
                {"lambda", config.params.lambda},
                {"lambda_defaulted", !config.lambda_given && !config.consistent_lambda},
                {"consistent_lambda", consistent},
                {"lambda_constraint_gap", gap}};
}

// The psi_n are exact eigenfunctions only on lambda^2 = (4ac - b^2)/pi.
void warn_if_inconsistent(const RunConfig& config)
{
    double consistent = 0.0;
    double gap = 0.0;
    check(cxosc_consistent_lambda(&config.params, &consistent, &gap), "potential parameters");
    if (std::abs(gap) > 1e-12)
        std::cerr << "warning: lambda=" << config.params.lambda
                  << " is off the solvable set (lambda^2 = (4ac - b^2)/pi gives " << consistent
                  << "); psi_n are not bi-orthonormal eigenfunctions\n";
}

Json grid_json(const cxosc_grid* grid)
{
    return Json{{"extent", cxosc_grid_extent(grid)},
                {"step", cxosc_grid_step(grid)},
                {"nodes", cxosc_grid_size(grid)}};
}

std::vector<double> grid_nodes(const cxosc_grid* grid)
{
    std::vector<double> x(cxosc_grid_size(grid));
    check(cxosc_grid_nodes(grid, x.data(), x.size()), "grid nodes");
    return x;
}

Grid make_grid(const RunConfig& config, int max_index)
{
    cxosc_grid* raw = nullptr;
    if (config.grid_extent > 0.0)
        check(cxosc_grid_create(config.grid_extent, config.grid_step, &raw), "grid");
    else
        check(cxosc_grid_create_default(max_index, config.grid_step, &raw), "grid");
    return Grid(raw);
}

void validate_format(const RunConfig& config)
{
    if (config.format != "csv" && config.format != "json")
        throw CliError(kExitParameterDomain, "--format must be csv or json");
}

fs::path prepare_output(const RunConfig& config)
{
    const fs::path dir(config.out);
    fs::create_directories(dir);
    return dir;
}

// One superposition requested on the command line.
struct Cell {
    std::string stem;
    Json spec;
    Coeffs coeffs;
    bool poisson = false;
    double z_re = 0.0;
    double z_im = 0.0;
};

std::vector<Cell> make_cells(const RunConfig& config)
{
    std::vector<Cell> cells;
    if (config.r.empty())
        throw CliError(kExitParameterDomain, "--r needs at least one value");
    for (int r : config.r) {
        if (config.state == "binomial") {
            for (double p : config.p) {
                cxosc_coeffs* raw = nullptr;
                check(cxosc_coeffs_binomial(config.n, p, r, &raw), "binomial coefficients");
                Cell cell{"binomial_n" + std::to_string(config.n) + "_p" + compact(p) + "_r" +
                              std::to_string(r),
                          Json{{"state", "binomial"}, {"n", config.n}, {"p", p}, {"r", r}},
                          Coeffs(raw)};
                cells.push_back(std::move(cell));
            }
        } else if (config.state == "poisson") {
            for (double z_re : config.z_re) {
                cxosc_coeffs* raw = nullptr;
                check(cxosc_coeffs_poisson(z_re, config.z_im, r, &raw), "Poisson coefficients");
                Cell cell{"poisson_zre" + compact(z_re) + "_zim" + compact(config.z_im) + "_r" +
                              std::to_string(r),
                          Json{{"state", "poisson"},
                               {"z_re", z_re},
                               {"z_im", config.z_im},
                               {"r", r},
                               {"truncation", 0}},
                          Coeffs(raw), true, z_re, config.z_im};
                cell.spec["truncation"] = cxosc_coeffs_count(cell.coeffs.get()) - 1;
                cells.push_back(std::move(cell));
            }
        } else if (config.state == "eigenstate") {
            cxosc_coeffs* raw = nullptr;
            check(cxosc_coeffs_single(r, &raw), "eigenstate coefficients");
            cells.push_back(Cell{"eigenstate_r" + std::to_string(r),
                                 Json{{"state", "eigenstate"}, {"r", r}}, Coeffs(raw)});
        } else {
            throw CliError(kExitParameterDomain,
                           "--state must be binomial, poisson or eigenstate, got " + config.state);
        }
    }
    if (cells.empty())
        throw CliError(kExitParameterDomain, "no state cells selected");
    return cells;
}

int max_index_of(const cxosc_coeffs* coeffs)
{
    return cxosc_coeffs_offset(coeffs) + cxosc_coeffs_count(coeffs) - 1;
}

std::vector<double> column(const cxosc_frame* frame, cxosc_frame_column which, std::size_t size)
{
    std::vector<double> out(size);
    check(cxosc_frame_column_values(frame, which, out.data(), out.size()), "frame column");
    return out;
}

// Runs job(i) for i in [0, count) on up to `workers` threads; job results
// must not depend on the thread that runs them.
template <class Job>
void run_parallel(int count, int workers, Job&& job)
{
    workers = std::clamp(workers, 1, std::max(1, count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    const auto guarded = [&](int i) {
        try {
            job(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            guarded(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int i = w; i < count; i += workers)
                    guarded(i);
            });
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

int cmd_potential(const RunConfig& config)
{
    validate_format(config);
    check(cxosc_validate_params(&config.params), "potential parameters");
    const Grid grid = make_grid(config, 0);
    const auto x = grid_nodes(grid.get());
    std::vector<double> re(x.size()), im(x.size());
    check(cxosc_potential_values(&config.params, x.data(), x.size(), re.data(), im.data()),
          "potential");

    const fs::path dir = prepare_output(config);
    const std::string file =
        write_table(dir, "potential", Table{{"x", "re_v", "im_v"}, {x, re, im}}, config.format);
    Json meta;
    meta["command"] = "potential";
    meta["params"] = params_json(config);
    meta["grid"] = grid_json(grid.get());
    meta["spec"] = Json::object();
    meta["derived"] = Json{{"max_abs_im_v", [&] {
                               double m = 0.0;
                               for (double v : im)
                                   m = std::max(m, std::abs(v));
                               return m;
                           }()}};
    meta["files"] = Json::array({file});
    write_json(dir / "potential.meta.json", meta);
    return kExitOk;
}

int cmd_frames(const RunConfig& config)
{
    validate_format(config);
    check(cxosc_validate_params(&config.params), "potential parameters");
    std::vector<double> times;
    for (const auto& t : config.times) {
        try {
            times.push_back(parse_time(t));
        } catch (const std::exception& e) {
            throw CliError(kExitParameterDomain, std::string("--times: ") + e.what());
        }
    }
    if (!(config.dt > 0.0))
        throw CliError(kExitParameterDomain, "--dt must be positive");
    warn_if_inconsistent(config);

    std::vector<Cell> cells = make_cells(config);

    struct Prepared {
        Grid grid;
        Basis basis;
    };
    std::vector<Prepared> prepared;
    for (const auto& cell : cells) {
        const int top = max_index_of(cell.coeffs.get());
        Grid grid = make_grid(config, top);
        cxosc_basis* raw = nullptr;
        check(cxosc_basis_build(&config.params, top, grid.get(), &raw), "basis");
        prepared.push_back(Prepared{std::move(grid), Basis(raw)});
    }

    const fs::path dir = prepare_output(config);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        const cxosc_grid* grid = prepared[c].grid.get();
        const cxosc_basis* basis = prepared[c].basis.get();
        const auto x = grid_nodes(grid);

        struct FrameResult {
            Table table;
            double binorm_re = 0.0;
            double binorm_im = 0.0;
            cxosc_continuity_summary continuity{};
        };
        std::vector<FrameResult> results(times.size());
        run_parallel(static_cast<int>(times.size()), config.workers, [&](int i) {
            cxosc_frame* raw = nullptr;
            check(cxosc_frame_compute(cell.coeffs.get(), basis, times[i], &raw), "frame");
            const Frame frame(raw);
            FrameResult& out = results[i];
            out.table.names = {"x", "re_rho_b", "im_rho_b", "re_j_b", "im_j_b", "rho", "j"};
            out.table.columns = {x,
                                 column(frame.get(), CXOSC_COLUMN_RHO_B_RE, x.size()),
                                 column(frame.get(), CXOSC_COLUMN_RHO_B_IM, x.size()),
                                 column(frame.get(), CXOSC_COLUMN_CURRENT_B_RE, x.size()),
                                 column(frame.get(), CXOSC_COLUMN_CURRENT_B_IM, x.size()),
                                 column(frame.get(), CXOSC_COLUMN_RHO, x.size()),
                                 column(frame.get(), CXOSC_COLUMN_CURRENT, x.size())};
            check(cxosc_frame_binorm(frame.get(), &out.binorm_re, &out.binorm_im), "bi-norm");
            check(cxosc_continuity(cell.coeffs.get(), basis, times[i], config.dt, &out.continuity),
                  "continuity");
        });

        double energy = 0.0;
        double energy_offset_free = 0.0;
        double coeff_binorm_re = 0.0;
        double coeff_binorm_im = 0.0;
        check(cxosc_coeffs_energy(cell.coeffs.get(), &energy, &energy_offset_free), "energy");
        check(cxosc_coeffs_binorm(cell.coeffs.get(), &coeff_binorm_re, &coeff_binorm_im),
              "bi-norm");

        Json frames = Json::array();
        Json files = Json::array();
        for (std::size_t i = 0; i < times.size(); ++i) {
            const std::string file = write_table(dir, cell.stem + "_t" + std::to_string(i),
                                                 results[i].table, config.format);
            files.push_back(file);
            const auto& cont = results[i].continuity;
            frames.push_back(Json{
                {"time", times[i]},
                {"time_label", config.times[i]},
                {"file", file},
                {"binorm", results[i].binorm_re},
                {"integral_im_rho_b", results[i].binorm_im},
                {"residuals",
                 Json{{"max_biorthogonal", cont.max_residual_b},
                      {"max_flux_divergence_b", cont.max_flux_divergence_b},
                      {"relative_biorthogonal",
                       cont.max_flux_divergence_b > 0.0
                           ? cont.max_residual_b / cont.max_flux_divergence_b
                           : 0.0},
                      {"max_conventional", cont.max_residual},
                      {"max_conventional_unweighted", cont.max_residual_unweighted},
                      {"max_flux_divergence", cont.max_flux_divergence}}}});
        }

        Json meta;
        meta["command"] = "frames";
        meta["params"] = params_json(config);
        meta["grid"] = grid_json(grid);
        meta["spec"] = cell.spec;
        meta["derived"] = Json{{"energy", energy},
                               {"energy_offset_free", energy_offset_free},
                               {"binorm", coeff_binorm_re},
                               {"binorm_imag", coeff_binorm_im},
                               {"basis_normalization_residual",
                                cxosc_basis_normalization_residual(basis)},
                               {"dt", config.dt},
                               {"frames", std::move(frames)}};
        meta["files"] = std::move(files);
        write_json(dir / (cell.stem + ".meta.json"), meta);
    }
    return kExitOk;
}

int cmd_wigner(const RunConfig& config)
{
    validate_format(config);
    if (config.params.lambda != 0.0 || config.params.a != 0.0 || config.params.b != 0.0)
        throw CliError(kExitUnsupported,
                       "Wigner distributions are computed only in the oscillator limit "
                       "(a = b = lambda = 0); got a=" + compact(config.params.a) +
                           ", b=" + compact(config.params.b) +
                           ", lambda=" + compact(config.params.lambda));
    check(cxosc_validate_params(&config.params), "potential parameters");

    std::vector<Cell> cells = make_cells(config);
    const fs::path dir = prepare_output(config);

    for (const Cell& cell : cells) {
        const int top = max_index_of(cell.coeffs.get());
        const Grid grid = make_grid(config, top);
        cxosc_phase_grid phase{};
        check(cxosc_phase_grid_default(top, cxosc_grid_step(grid.get()), &phase), "phase grid");
        if (config.phase_count != phase.x_count) {
            // Keep x nodes on the spatial grid: extent is a multiple of half * step.
            const int half = (config.phase_count - 1) / 2;
            if (config.phase_count < 33 || config.phase_count % 2 == 0)
                throw CliError(kExitParameterDomain, "--phase-count must be odd and >= 33");
            const double quantum = half * cxosc_grid_step(grid.get());
            const double extent = std::ceil(phase.x_extent / quantum - 1e-9) * quantum;
            phase = cxosc_phase_grid{extent, extent, config.phase_count, config.phase_count};
        }

        cxosc_wigner* raw = nullptr;
        check(cxosc_wigner_quadrature(cell.coeffs.get(), grid.get(), &phase, config.workers, &raw),
              "Wigner quadrature");
        const Wigner quad(raw);
        check(cxosc_wigner_closed_form(cell.coeffs.get(), &phase, config.workers, &raw),
              "Wigner closed form");
        const Wigner closed(raw);

        double dual_gap = 0.0;
        check(cxosc_wigner_max_difference(quad.get(), closed.get(), &dual_gap), "dual path");
        cxosc_classicality report{};
        check(cxosc_wigner_classicality(quad.get(), &report), "classicality");

        const std::size_t nx = static_cast<std::size_t>(phase.x_count);
        const std::size_t np = static_cast<std::size_t>(phase.p_count);
        std::vector<double> values(nx * np);
        check(cxosc_wigner_values(quad.get(), values.data(), values.size()), "Wigner values");
        std::vector<double> pos(nx), mom(np);
        check(cxosc_wigner_marginals(quad.get(), pos.data(), nx, mom.data(), np), "marginals");

        const double dx = 2.0 * phase.x_extent / (phase.x_count - 1);
        const double dp = 2.0 * phase.p_extent / (phase.p_count - 1);
        std::vector<double> xs(nx), ps(np);
        for (std::size_t i = 0; i < nx; ++i)
            xs[i] = (static_cast<int>(i) - (phase.x_count - 1) / 2) * dx;
        for (std::size_t j = 0; j < np; ++j)
            ps[j] = (static_cast<int>(j) - (phase.p_count - 1) / 2) * dp;

        // |phi|^2 at the phase-space x nodes.
        const std::size_t m = cxosc_grid_size(grid.get());
        std::vector<double> re(m), im(m);
        check(cxosc_coeffs_oscillator_field(cell.coeffs.get(), grid.get(), re.data(), im.data(), m),
              "oscillator field");
        const double h = cxosc_grid_step(grid.get());
        const long center = static_cast<long>((m - 1) / 2);
        double marginal_gap = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            const long idx = center + std::lround(xs[i] / h);
            const double density = re[idx] * re[idx] + im[idx] * im[idx];
            marginal_gap = std::max(marginal_gap, std::abs(pos[i] - density));
        }
        const auto moments = [](const std::vector<double>& f, const std::vector<double>& nodes,
                                double step) {
            double mass = 0.0, first = 0.0, second = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                mass += f[i];
                first += f[i] * nodes[i];
                second += f[i] * nodes[i] * nodes[i];
            }
            const double mean = first / mass;
            return std::pair{mass * step, second / mass - mean * mean};
        };
        const auto [x_mass, x_var] = moments(pos, xs, dx);
        const auto [p_mass, p_var] = moments(mom, ps, dp);

        Table table{{"x", "p", "w"}, {{}, {}, {}}};
        table.columns[0].reserve(nx * np);
        table.columns[1].reserve(nx * np);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < np; ++j) {
                table.columns[0].push_back(xs[i]);
                table.columns[1].push_back(ps[j]);
            }
        table.columns[2] = values;
        const std::string file = write_table(dir, cell.stem + "_wigner", table, config.format);

        Json derived{{"classicality",
                      Json{{"min_value", report.min_value},
                           {"min_location", Json::array({report.min_x, report.min_p})},
                           {"negative_volume", report.negative_volume}}},
                     {"dual_path_max_difference", dual_gap},
                     {"imaginary_residue", cxosc_wigner_imaginary_residue(quad.get())},
                     {"position_marginal_max_error", marginal_gap},
                     {"position_marginal_mass", x_mass},
                     {"momentum_marginal_mass", p_mass},
                     {"position_variance", x_var},
                     {"momentum_variance", p_var}};
        double energy = 0.0, energy_offset_free = 0.0;
        check(cxosc_coeffs_energy(cell.coeffs.get(), &energy, &energy_offset_free), "energy");
        derived["energy"] = energy;
        derived["energy_offset_free"] = energy_offset_free;
        if (cell.poisson) {
            double fidelity = 0.0;
            check(cxosc_photon_added_fidelity(cell.z_re, cell.z_im, cell.coeffs.get(), &fidelity),
                  "photon-added fidelity");
            derived["photon_added_fidelity"] = fidelity;
        }

        Json meta;
        meta["command"] = "wigner";
        meta["params"] = params_json(config);
        meta["grid"] = grid_json(grid.get());
        meta["phase_grid"] = Json{{"x_extent", phase.x_extent},
                                  {"p_extent", phase.p_extent},
                                  {"x_count", phase.x_count},
                                  {"p_count", phase.p_count}};
        meta["spec"] = cell.spec;
        meta["derived"] = std::move(derived);
        meta["files"] = Json::array({file});
        write_json(dir / (cell.stem + "_wigner.meta.json"), meta);
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& config)
{
    cxosc_verify_options options{};
    options.params = config.params;
    options.lambdas = config.verify_lambdas.data();
    options.lambda_count = config.verify_lambdas.size();
    options.grid_step = config.grid_step;
    options.grid_extent = config.grid_extent;
    options.suites = config.suites.c_str();
    options.workers = config.workers;

    char* report = nullptr;
    int passed = 0;
    check(cxosc_verify(&options, &report, &passed), "verify");
    const std::string text = report;
    cxosc_string_free(report);

    std::cout << text << '\n';
    if (config.out_given) {
        const fs::path dir = prepare_output(config);
        write_json(dir / "verify.json", Json::parse(text));
    }
    return passed ? kExitOk : kExitVerificationFailed;
}

} // namespace cxosc_cli
