#pragma once

#include <string>
#include <vector>

#include "cxosc/cxosc.h"

namespace cxosc_cli {

struct RunConfig {
    cxosc_params params{0.78539816339744831, 0.88622692545275801, 1.0, 1.0};
    bool a_given = false;
    bool b_given = false;
    bool lambda_given = false;
    bool consistent_lambda = false;  // replace lambda by sqrt((4ac - b^2)/pi)

    double grid_extent = 0.0;  // <= 0: chosen from the highest state index
    double grid_step = 0.01;

    std::string state = "binomial";  // binomial | poisson | eigenstate
    int n = 30;
    std::vector<double> p{0.1};
    std::vector<int> r{0};
    std::vector<double> z_re{1.0};
    double z_im = 0.0;

    std::vector<std::string> times{"0"};
    double dt = 1e-4;
    int phase_count = 201;

    std::string suites = "gram,binorm,continuity,wigner,limit,consistent";
    std::vector<double> verify_lambdas{0.5, 1.0, 2.0};
    bool out_given = false;

    std::string out = "out";
    std::string format = "csv";
    int workers = 1;
};

int cmd_potential(const RunConfig& config);
int cmd_frames(const RunConfig& config);
int cmd_wigner(const RunConfig& config);
int cmd_verify(const RunConfig& config);

} // namespace cxosc_cli
