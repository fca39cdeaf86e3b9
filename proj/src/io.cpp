#include "pcwave/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pcwave {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open for writing: " + path);
    for (size_t c = 0; c < header.size(); ++c) f << (c ? "," : "") << header[c];
    f << "\n";
    const size_t rows = columns.empty() ? 0 : columns[0].size();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c) f << (c ? "," : "") << fmt17(columns[c][r]);
        f << "\n";
    }
}

uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot hash missing file: " + path);
    uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (f.read(buf, sizeof(buf)) || f.gcount() > 0) {
        for (std::streamsize i = 0; i < f.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!f) break;
    }
    return h;
}

void write_svg_polyline(const std::string& path, const std::vector<double>& x,
                        const std::vector<double>& y, const std::string& title) {
    const int w = 640, h = 400, m = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double v : x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open for writing: " + path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    f << "<rect width='100%' height='100%' fill='white'/>\n";
    f << "<text x='10' y='16' font-size='12'>" << title << "</text>\n";
    f << "<line x1='" << m << "' y1='" << h - m << "' x2='" << w - m << "' y2='" << h - m
      << "' stroke='black'/>\n";
    f << "<line x1='" << m << "' y1='" << m << "' x2='" << m << "' y2='" << h - m
      << "' stroke='black'/>\n";
    f << "<polyline fill='none' stroke='steelblue' stroke-width='1' points='";
    const size_t stride = std::max<size_t>(1, x.size() / 2000);
    for (size_t i = 0; i < x.size(); i += stride) {
        const double px = m + (x[i] - xmin) / (xmax - xmin) * (w - 2 * m);
        const double py = h - m - (y[i] - ymin) / (ymax - ymin) * (h - 2 * m);
        f << fmt17(px) << "," << fmt17(py) << " ";
    }
    f << "'/>\n</svg>\n";
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::group_delay: return "group_delay";
        case Preset::rabi: return "rabi";
        default: return "custom";
    }
}

std::string model_name(Model m) {
    switch (m) {
        case Model::macro: return "macro";
        case Model::micro: return "micro";
        default: return "both";
    }
}

std::string geometry_name(Geometry g) {
    return g == Geometry::forward ? "forward" : "backward";
}

namespace {

nlohmann::json config_json(const ScenarioConfig& cfg) {
    nlohmann::json j;
    j["preset"] = preset_name(cfg.preset);
    j["model"] = model_name(cfg.model);
    j["geometry"] = geometry_name(cfg.geometry);
    j["sigma_mode"] = cfg.sigma_mode == SigmaMode::full ? "full" : "ground";
    j["nln"] = cfg.nln;
    if (cfg.has_atoms) {
        j["drive"]["omega_p_mhz"] = std::abs(cfg.drive.omega_p) / (kTwoPi * 1e6);
        j["drive"]["omega_c_mhz"] = std::abs(cfg.drive.omega_c) / (kTwoPi * 1e6);
        j["drive"]["delta_p_mhz"] = cfg.drive.delta_p / (kTwoPi * 1e6);
        j["ensemble"]["od"] = cfg.ensemble.od;
        j["ensemble"]["length_cm"] = cfg.ensemble.length * 100.0;
        j["ensemble"]["delta_k_rad_per_m"] = cfg.ensemble.delta_k;
    }
    if (cfg.has_coupling) {
        j["coupling"]["alpha1_per_m"] = {cfg.alpha1.real(), cfg.alpha1.imag()};
        j["coupling"]["alpha2_per_m"] = {cfg.alpha2.real(), cfg.alpha2.imag()};
        j["coupling"]["kappa_per_m"] = {cfg.kappa.real(), cfg.kappa.imag()};
        j["coupling"]["delta_k_rad_per_m"] = cfg.delta_k;
        j["coupling"]["theta_rad"] = cfg.theta;
        j["coupling"]["length_cm"] = cfg.length * 100.0;
    }
    return j;
}

}  // namespace

void write_manifest(const ScenarioConfig& cfg, const FrequencyGrid& grid,
                    const std::vector<std::string>& files) {
    nlohmann::json j;
    j["config"] = config_json(cfg);
    j["grid"]["n_points"] = grid.n_points;
    j["grid"]["span_mhz"] = grid.span / (kTwoPi * 1e6);
    j["files"] = nlohmann::json::array();
    for (const auto& name : files) {
        const std::string full = cfg.out_dir + "/" + name;
        char hash[20];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(full)));
        j["files"].push_back({{"name", name},
                              {"fnv1a64", hash},
                              {"bytes", std::filesystem::file_size(full)}});
    }
    std::ofstream f(cfg.out_dir + "/manifest.json", std::ios::binary);
    f << j.dump(2) << "\n";
}

void write_report_json(const std::string& path, const ValidationReport& report,
                       const ValidationOptions& opt) {
    nlohmann::json j;
    j["overall_pass"] = report.all_pass();
    j["environment"]["grid_points"] = opt.n_points;
    j["environment"]["sigma_mode"] = opt.sigma_mode == SigmaMode::full ? "full" : "ground";
    j["checks"] = nlohmann::json::array();
    for (const auto& r : report.records) {
        j["checks"].push_back({{"name", r.name},
                               {"max_abs_deviation", r.max_abs_deviation},
                               {"tolerance", r.tolerance},
                               {"pass", r.pass},
                               {"note", r.note}});
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("bad numeric value for " + key + ": " + v);
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("bad boolean for " + key + ": " + v);
}

}  // namespace

void apply_config_line(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    const double mhz = kTwoPi * 1e6;
    if (key == "preset") {
        if (value == "group_delay") {
            const auto keep = cfg;
            cfg = ScenarioConfig::group_delay();
            cfg.out_dir = keep.out_dir;
        } else if (value == "rabi") {
            const auto keep = cfg;
            cfg = ScenarioConfig::rabi();
            cfg.out_dir = keep.out_dir;
        } else if (value == "custom") {
            cfg.preset = Preset::custom;
        } else {
            throw config_error("unknown preset: " + value);
        }
    } else if (key == "model") {
        if (value == "macro") cfg.model = Model::macro;
        else if (value == "micro") cfg.model = Model::micro;
        else if (value == "both") cfg.model = Model::both;
        else throw config_error("unknown model: " + value);
    } else if (key == "geometry") {
        if (value == "forward") cfg.geometry = Geometry::forward;
        else if (value == "backward") cfg.geometry = Geometry::backward;
        else throw config_error("unknown geometry: " + value);
    } else if (key == "sigma_mode") {
        if (value == "ground") cfg.sigma_mode = SigmaMode::ground;
        else if (value == "full") cfg.sigma_mode = SigmaMode::full;
        else throw config_error("unknown sigma_mode: " + value);
    } else if (key == "nln") {
        cfg.nln = to_bool(value, key);
    } else if (key == "plot") {
        cfg.plot = to_bool(value, key);
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "grid.points") {
        cfg.grid.n_points = static_cast<int>(to_double(value, key));
    } else if (key == "grid.span_mhz") {
        cfg.grid.span = to_double(value, key) * mhz;
    } else if (key == "grid.biphoton_span_mhz") {
        cfg.grid.biphoton_span = to_double(value, key) * mhz;
    } else if (key == "drive.omega_p_mhz") {
        cfg.has_atoms = true;
        cfg.drive.omega_p = to_double(value, key) * mhz;
    } else if (key == "drive.omega_c_mhz") {
        cfg.has_atoms = true;
        cfg.drive.omega_c = to_double(value, key) * mhz;
    } else if (key == "drive.delta_p_mhz") {
        cfg.has_atoms = true;
        cfg.drive.delta_p = to_double(value, key) * mhz;
    } else if (key == "ensemble.od") {
        cfg.has_atoms = true;
        cfg.ensemble.od = to_double(value, key);
    } else if (key == "ensemble.length_cm") {
        cfg.has_atoms = true;
        cfg.ensemble.length = to_double(value, key) / 100.0;
    } else if (key == "ensemble.delta_k_rad_per_m") {
        cfg.has_atoms = true;
        cfg.ensemble.delta_k = to_double(value, key);
    } else if (key == "coupling.alpha1_re_per_m") {
        cfg.has_coupling = true;
        cfg.alpha1 = {to_double(value, key), cfg.alpha1.imag()};
    } else if (key == "coupling.alpha1_im_per_m") {
        cfg.has_coupling = true;
        cfg.alpha1 = {cfg.alpha1.real(), to_double(value, key)};
    } else if (key == "coupling.alpha2_re_per_m") {
        cfg.has_coupling = true;
        cfg.alpha2 = {to_double(value, key), cfg.alpha2.imag()};
    } else if (key == "coupling.alpha2_im_per_m") {
        cfg.has_coupling = true;
        cfg.alpha2 = {cfg.alpha2.real(), to_double(value, key)};
    } else if (key == "coupling.kappa_re_per_m") {
        cfg.has_coupling = true;
        cfg.kappa = {to_double(value, key), cfg.kappa.imag()};
    } else if (key == "coupling.kappa_im_per_m") {
        cfg.has_coupling = true;
        cfg.kappa = {cfg.kappa.real(), to_double(value, key)};
    } else if (key == "coupling.delta_k_rad_per_m") {
        cfg.has_coupling = true;
        cfg.delta_k = to_double(value, key);
    } else if (key == "coupling.theta_rad") {
        cfg.has_coupling = true;
        cfg.theta = to_double(value, key);
    } else if (key == "coupling.length_cm") {
        cfg.has_coupling = true;
        cfg.length = to_double(value, key) / 100.0;
    } else {
        throw config_error("unknown config key: " + key);
    }
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config: " + path);
    ScenarioConfig cfg;
    cfg.levels = AtomicLevels::rb85();
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace pcwave
