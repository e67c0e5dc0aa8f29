#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rhtunnel/fields.hpp"
#include "rhtunnel/geometry.hpp"
#include "rhtunnel/loading.hpp"
#include "rhtunnel/solver.hpp"

namespace rhtunnel::app {

/// Everything a run or sweep needs. Defaults reproduce the reference benchmark case.
struct RunConfig {
    double R = 5.0;
    double h_over_R = 2.0;
    double gamma = 20.0;
    double k0 = 0.8;
    double E = 20000.0;  ///< kPa
    double nu = 0.3;
    PlaneCondition plane = PlaneCondition::Strain;
    int N = 50;
    double x0_over_h = 100.0;
    double epsilon = 1e-16;
    int max_reps = 500;
    bool lanczos = true;

    // Grid extents in multiples of h.
    double grid_x_min_over_h = 0.0;
    double grid_x_max_over_h = 4.0;
    double grid_y_min_over_h = -4.0;
    double grid_y_max_over_h = 0.0;
    int grid_nx = 201;
    int grid_ny = 201;

    int boundary_samples = 720;
    int residual_samples = 2000;
    double gibbs_band_deg = 5.0;

    std::string output = "out";
    int workers = 1;

    std::vector<double> sweep_h_over_R{1.1, 2.0, 3.0};
    std::vector<double> sweep_k0{0.8, 1.0, 1.2};
    std::vector<double> sweep_x0_over_h{1.0, 10.0, 100.0};

    TunnelGeometry geometry() const;
    Material material() const;
    SolverConfig solver() const;
    GridSpec grid() const;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown or repeated keys are rejected and
/// every error names its line.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError naming the first out-of-range field.
void validate(const RunConfig& cfg);

/// Fully resolved config in the same syntax, with doubles printed exactly.
std::string format_config(const RunConfig& cfg);

}  // namespace rhtunnel::app
