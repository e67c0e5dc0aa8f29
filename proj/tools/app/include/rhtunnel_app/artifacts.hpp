#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rhtunnel/errors.hpp"
#include "rhtunnel/verification.hpp"
#include "rhtunnel_app/config.hpp"

namespace rhtunnel::app {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kSolverFailure = 1, kIoFailure = 2 };

/// An input/output problem while writing or locating artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

const char* software_version();

/// In-memory artifacts of one case, file name to contents.
struct ArtifactSet {
    std::vector<std::pair<std::string, std::string>> files;
    SolutionCoefficients solution;
    NormalizationScales scales;
    std::vector<BoundarySample> surface;
    std::vector<BoundarySample> tunnel;
    std::vector<GridPoint> grid;
    ResidualReport residuals;
    double solve_seconds = 0.0;
    double fields_seconds = 0.0;

    const std::string& file(const std::string& name) const;
};

/// Solves one case and renders every artifact without touching the disk.
ArtifactSet build_case(const RunConfig& cfg);

/// Writes the files into dir; on failure removes whatever was written and throws IoError.
void write_artifacts(const ArtifactSet& set, const std::filesystem::path& dir);

/// build_case followed by write_artifacts into cfg.output.
ArtifactSet run_case(const RunConfig& cfg);

struct SweepCase {
    double h_over_R = 0.0;
    double k0 = 0.0;
    double x0_over_h = 0.0;
    std::string directory;
    bool ok = false;
    std::string error;
    int reps = 0;
    std::array<double, 3> cond{};
    double smax_norm_max = 0.0;
    double smin_norm_min = 0.0;
    double u_norm_absmax = 0.0;
    double v_norm_min = 0.0;
    double v_norm_max = 0.0;
};

/// Cartesian product of the sweep lists, each case written to its own subdirectory of
/// cfg.output, plus summary.csv. Failed cases are logged to `log` and the sweep continues.
std::vector<SweepCase> run_sweep(const RunConfig& cfg, std::ostream& log);

/// Residuals (filtered and raw), degeneration identities and the x0/h study as a text report.
/// Returns false if any case failed to solve.
bool run_verification(const RunConfig& cfg, std::ostream& out);

/// Writes plot.gp into dir referencing whichever CSVs exist there; returns its path.
std::filesystem::path emit_plot_script(const std::filesystem::path& dir);

}  // namespace rhtunnel::app
