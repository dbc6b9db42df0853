#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "expression.hpp"
#include "handles.hpp"

int main(int argc, char** argv)
{
    using namespace cxosc_cli;

    RunConfig config;
    config.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    CLI::App app{"Bi-orthogonal complex-oscillator toolkit"};
    app.set_config("--config", "", "key = value file; command-line flags override it");
    app.require_subcommand(1);

    auto* a = app.add_option("--a", config.params.a, "quadratic coefficient a >= 0");
    auto* b = app.add_option("--b", config.params.b, "linear coefficient b >= 0");
    app.add_option("--c", config.params.c, "constant coefficient c");
    auto* lambda = app.add_option("--lambda", config.params.lambda, "non-Hermiticity lambda");
    app.add_flag("--consistent-lambda", config.consistent_lambda,
                 "use lambda = sqrt((4ac - b^2)/pi), where the basis is exact");
    app.add_option("--grid-extent", config.grid_extent, "half-width of the spatial grid (0: auto)");
    app.add_option("--grid-step", config.grid_step, "spatial grid step");
    app.add_option("--state", config.state, "binomial | poisson | eigenstate");
    app.add_option("--n", config.n, "binomial n");
    app.add_option("--p", config.p, "binomial p values")->delimiter(',');
    app.add_option("--r", config.r, "index offsets")->delimiter(',');
    app.add_option("--z-re", config.z_re, "real parts of z")->delimiter(',');
    app.add_option("--z-im", config.z_im, "imaginary part of z");
    app.add_option("--times", config.times, "times, e.g. 0,pi/4,pi/2")->delimiter(',');
    app.add_option("--dt", config.dt, "time step for the continuity check");
    app.add_option("--phase-count", config.phase_count, "phase-space nodes per axis (odd)");
    app.add_option("--suites", config.suites, "verification suites, comma separated");
    app.add_option("--verify-lambdas", config.verify_lambdas, "lambdas for the Gram suite")
        ->delimiter(',');
    auto* out = app.add_option("--out", config.out, "output directory");
    app.add_option("--format", config.format, "csv | json");
    app.add_option("--workers", config.workers, "worker threads")->check(CLI::PositiveNumber);

    auto* potential = app.add_subcommand("potential", "tabulate V(x)");
    auto* frames = app.add_subcommand("frames", "densities and currents at given times");
    auto* wigner = app.add_subcommand("wigner", "Wigner distributions (oscillator limit)");
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    for (auto* sub : {potential, frames, wigner, verify})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParameterDomain;
    }

    config.a_given = a->count() > 0;
    config.b_given = b->count() > 0;
    config.lambda_given = lambda->count() > 0;
    config.out_given = out->count() > 0;

    if (*wigner) {
        // The Wigner command lives in the oscillator limit unless told otherwise.
        if (!config.a_given)
            config.params.a = 0.0;
        if (!config.b_given)
            config.params.b = 0.0;
        if (!config.lambda_given)
            config.params.lambda = 0.0;
    }

    try {
        if (config.consistent_lambda) {
            double lambda_value = 0.0;
            check(cxosc_consistent_lambda(&config.params, &lambda_value, nullptr), "--consistent-lambda");
            config.params.lambda = lambda_value;
        }
        if (*potential)
            return cmd_potential(config);
        if (*frames)
            return cmd_frames(config);
        if (*wigner)
            return cmd_wigner(config);
        return cmd_verify(config);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
}
