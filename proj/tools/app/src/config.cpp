#include "rhtunnel_app/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rhtunnel/errors.hpp"

namespace rhtunnel::app {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
        throw ConfigError("'" + v + "' is not a finite number");
    return x;
}

int parse_int(const std::string& v) {
    int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("'" + v + "' is not an integer");
    return x;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    throw ConfigError("'" + v + "' is not a boolean");
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item)));
    if (out.empty()) throw ConfigError("list is empty");
    return out;
}

std::string exact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string exact_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + exact(v[i]);
    return s;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"R", [](RunConfig& c, const std::string& v) { c.R = parse_double(v); }},
        {"h_over_R", [](RunConfig& c, const std::string& v) { c.h_over_R = parse_double(v); }},
        {"gamma", [](RunConfig& c, const std::string& v) { c.gamma = parse_double(v); }},
        {"k0", [](RunConfig& c, const std::string& v) { c.k0 = parse_double(v); }},
        {"E", [](RunConfig& c, const std::string& v) { c.E = parse_double(v); }},
        {"nu", [](RunConfig& c, const std::string& v) { c.nu = parse_double(v); }},
        {"plane",
         [](RunConfig& c, const std::string& v) {
             if (v == "strain") c.plane = PlaneCondition::Strain;
             else if (v == "stress") c.plane = PlaneCondition::Stress;
             else throw ConfigError("plane must be 'strain' or 'stress', got '" + v + "'");
         }},
        {"N", [](RunConfig& c, const std::string& v) { c.N = parse_int(v); }},
        {"x0_over_h", [](RunConfig& c, const std::string& v) { c.x0_over_h = parse_double(v); }},
        {"epsilon", [](RunConfig& c, const std::string& v) { c.epsilon = parse_double(v); }},
        {"max_reps", [](RunConfig& c, const std::string& v) { c.max_reps = parse_int(v); }},
        {"lanczos", [](RunConfig& c, const std::string& v) { c.lanczos = parse_bool(v); }},
        {"grid_x_min_over_h", [](RunConfig& c, const std::string& v) { c.grid_x_min_over_h = parse_double(v); }},
        {"grid_x_max_over_h", [](RunConfig& c, const std::string& v) { c.grid_x_max_over_h = parse_double(v); }},
        {"grid_y_min_over_h", [](RunConfig& c, const std::string& v) { c.grid_y_min_over_h = parse_double(v); }},
        {"grid_y_max_over_h", [](RunConfig& c, const std::string& v) { c.grid_y_max_over_h = parse_double(v); }},
        {"grid_nx", [](RunConfig& c, const std::string& v) { c.grid_nx = parse_int(v); }},
        {"grid_ny", [](RunConfig& c, const std::string& v) { c.grid_ny = parse_int(v); }},
        {"boundary_samples", [](RunConfig& c, const std::string& v) { c.boundary_samples = parse_int(v); }},
        {"residual_samples", [](RunConfig& c, const std::string& v) { c.residual_samples = parse_int(v); }},
        {"gibbs_band_deg", [](RunConfig& c, const std::string& v) { c.gibbs_band_deg = parse_double(v); }},
        {"output", [](RunConfig& c, const std::string& v) { c.output = v; }},
        {"workers", [](RunConfig& c, const std::string& v) { c.workers = parse_int(v); }},
        {"sweep_h_over_R", [](RunConfig& c, const std::string& v) { c.sweep_h_over_R = parse_list(v); }},
        {"sweep_k0", [](RunConfig& c, const std::string& v) { c.sweep_k0 = parse_list(v); }},
        {"sweep_x0_over_h", [](RunConfig& c, const std::string& v) { c.sweep_x0_over_h = parse_list(v); }},
    };
    return table;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

std::string show(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

}  // namespace

TunnelGeometry RunConfig::geometry() const {
    const double h = h_over_R * R;
    return {R, h, x0_over_h * h};
}

Material RunConfig::material() const { return make_material(gamma, k0, E, nu, plane); }

SolverConfig RunConfig::solver() const { return {N, epsilon, max_reps, lanczos}; }

GridSpec RunConfig::grid() const {
    const double h = h_over_R * R;
    return {grid_x_min_over_h * h, grid_x_max_over_h * h, grid_y_min_over_h * h, grid_y_max_over_h * h,
            grid_nx, grid_ny};
}

void validate(const RunConfig& c) {
    require(c.R > 0.0, "R = " + show(c.R) + " out of range (must be > 0)");
    require(c.h_over_R > 1.0, "h_over_R = " + show(c.h_over_R) + " out of range (must be > 1)");
    require(c.gamma >= 0.0, "gamma = " + show(c.gamma) + " out of range (must be >= 0)");
    require(c.k0 >= 0.0, "k0 = " + show(c.k0) + " out of range (must be >= 0)");
    require(c.E > 0.0, "E = " + show(c.E) + " out of range (must be > 0)");
    require(c.nu > 0.0 && c.nu < 0.5, "nu = " + show(c.nu) + " out of range (0, 0.5)");
    require(c.N >= 4, "N = " + std::to_string(c.N) + " out of range (must be >= 4)");
    require(c.x0_over_h > 0.0, "x0_over_h = " + show(c.x0_over_h) + " out of range (must be > 0)");
    require(c.epsilon > 0.0, "epsilon = " + show(c.epsilon) + " out of range (must be > 0)");
    require(c.max_reps >= 1, "max_reps = " + std::to_string(c.max_reps) + " out of range (must be >= 1)");
    require(c.grid_x_max_over_h >= c.grid_x_min_over_h, "grid_x_max_over_h must not be below grid_x_min_over_h");
    require(c.grid_y_max_over_h >= c.grid_y_min_over_h, "grid_y_max_over_h must not be below grid_y_min_over_h");
    require(c.grid_nx >= 1 && c.grid_ny >= 1, "grid_nx and grid_ny must be >= 1");
    require(c.boundary_samples >= 8, "boundary_samples out of range (must be >= 8)");
    require(c.residual_samples >= 8, "residual_samples out of range (must be >= 8)");
    require(c.gibbs_band_deg >= 0.0 && c.gibbs_band_deg < 90.0, "gibbs_band_deg out of range [0, 90)");
    require(!c.output.empty(), "output must not be empty");
    require(c.workers >= 1, "workers out of range (must be >= 1)");
    for (double v : c.sweep_h_over_R) require(v > 1.0, "sweep_h_over_R entry " + show(v) + " out of range (must be > 1)");
    for (double v : c.sweep_k0) require(v >= 0.0, "sweep_k0 entry " + show(v) + " out of range (must be >= 0)");
    for (double v : c.sweep_x0_over_h) require(v > 0.0, "sweep_x0_over_h entry " + show(v) + " out of range (must be > 0)");
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string body = trim(line);
        if (body.empty()) continue;

        const std::string where = "line " + std::to_string(line_no) + ": ";
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ConfigError(where + "missing key");
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(where + "key '" + key + "' repeated");
        try {
            it->second(cfg, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + key + ": " + e.what());
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string format_config(const RunConfig& c) {
    std::ostringstream o;
    o << "R = " << exact(c.R) << '\n'
      << "h_over_R = " << exact(c.h_over_R) << '\n'
      << "gamma = " << exact(c.gamma) << '\n'
      << "k0 = " << exact(c.k0) << '\n'
      << "E = " << exact(c.E) << '\n'
      << "nu = " << exact(c.nu) << '\n'
      << "plane = " << (c.plane == PlaneCondition::Strain ? "strain" : "stress") << '\n'
      << "N = " << c.N << '\n'
      << "x0_over_h = " << exact(c.x0_over_h) << '\n'
      << "epsilon = " << exact(c.epsilon) << '\n'
      << "max_reps = " << c.max_reps << '\n'
      << "lanczos = " << (c.lanczos ? "true" : "false") << '\n'
      << "grid_x_min_over_h = " << exact(c.grid_x_min_over_h) << '\n'
      << "grid_x_max_over_h = " << exact(c.grid_x_max_over_h) << '\n'
      << "grid_y_min_over_h = " << exact(c.grid_y_min_over_h) << '\n'
      << "grid_y_max_over_h = " << exact(c.grid_y_max_over_h) << '\n'
      << "grid_nx = " << c.grid_nx << '\n'
      << "grid_ny = " << c.grid_ny << '\n'
      << "boundary_samples = " << c.boundary_samples << '\n'
      << "residual_samples = " << c.residual_samples << '\n'
      << "gibbs_band_deg = " << exact(c.gibbs_band_deg) << '\n'
      << "output = " << c.output << '\n'
      << "workers = " << c.workers << '\n'
      << "sweep_h_over_R = " << exact_list(c.sweep_h_over_R) << '\n'
      << "sweep_k0 = " << exact_list(c.sweep_k0) << '\n'
      << "sweep_x0_over_h = " << exact_list(c.sweep_x0_over_h) << '\n';
    return o.str();
}

}  // namespace rhtunnel::app
