#include <CLI11.hpp>

#include <cstdio>

#include "pcwave/io.hpp"
#include "pcwave/scenario.hpp"

namespace {

using namespace pcwave;

constexpr double kTwoPi = 6.28318530717958647692;

struct CommonArgs {
    std::string preset = "group_delay";
    std::string config_path;
    std::string model = "macro";
    std::string geometry = "backward";
    std::string sigma = "ground";
    std::string out = "out";
    bool nln = false;
    bool plot = false;
    int grid_points = 0;
    double span_mhz = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--preset", a.preset, "group_delay | rabi | custom");
    cmd->add_option("--config", a.config_path, "scenario file (key = value)");
    cmd->add_option("--model", a.model, "macro | micro | both");
    cmd->add_option("--geometry", a.geometry, "forward | backward");
    cmd->add_option("--sigma-mode", a.sigma, "ground | full");
    cmd->add_option("--grid-points", a.grid_points, "frequency samples (power of two)");
    cmd->add_option("--span-mhz", a.span_mhz, "half span of the grid, MHz");
    cmd->add_option("--out", a.out, "output directory");
    cmd->add_flag("--nln", a.nln, "also emit no-Langevin-noise results");
    cmd->add_flag("--plot", a.plot, "emit SVG polyline plots");
}

ScenarioConfig build_config(const CommonArgs& a) {
    ScenarioConfig cfg;
    if (!a.config_path.empty()) {
        cfg = parse_config_file(a.config_path);
    } else {
        if (a.preset == "group_delay") cfg = ScenarioConfig::group_delay();
        else if (a.preset == "rabi") cfg = ScenarioConfig::rabi();
        else if (a.preset == "custom")
            throw config_error("custom preset requires --config with coupling.* keys");
        else throw config_error("unknown preset: " + a.preset);
    }
    apply_config_line(cfg, "model", a.model);
    apply_config_line(cfg, "geometry", a.geometry);
    apply_config_line(cfg, "sigma_mode", a.sigma);
    if (a.grid_points > 0) cfg.grid.n_points = a.grid_points;
    if (a.span_mhz > 0.0) cfg.grid.span = a.span_mhz * kTwoPi * 1e6;
    cfg.out_dir = a.out;
    if (a.nln) cfg.nln = true;
    if (a.plot) cfg.plot = true;
    return cfg;
}

int run_oracle(const std::string& which) {
    // Reuse the acceptance implementations; "all" is the full suite, the
    // focused variants filter its records.
    ValidationOptions opt;
    opt.verbose = (which == "all");
    ValidationReport rep = validate_all(opt);
    if (which != "all") {
        ValidationReport filtered;
        for (auto& r : rep.records) {
            const bool keep =
                (which == "abcd" && r.name.find("analytic_abcd") != std::string::npos) ||
                (which == "sinc" && r.name.find("smallgain") != std::string::npos) ||
                (which == "rabi" && r.name.find("rabi") != std::string::npos) ||
                (which == "mat2" && r.name.find("mat2") != std::string::npos);
            if (keep) filtered.records.push_back(std::move(r));
        }
        if (filtered.records.empty()) throw pcwave::config_error("unknown oracle: " + which);
        rep = std::move(filtered);
        for (const auto& r : rep.records)
            std::printf("%-52s %11.3e  tol %8.1e  %s\n", r.name.c_str(), r.max_abs_deviation,
                        r.tolerance, r.pass ? "PASS" : "FAIL");
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled phase-conjugated mode Langevin engine"};
    app.require_subcommand(1);

    CommonArgs sa, ba, va;
    auto* spectra = app.add_subcommand("spectra", "frequency-domain correlation spectra");
    add_common(spectra, sa);
    auto* biphoton = app.add_subcommand("biphoton", "time-domain pair correlations");
    add_common(biphoton, ba);
    auto* validate = app.add_subcommand("validate", "run the full acceptance suite");
    add_common(validate, va);
    std::string which = "all";
    auto* oracle = app.add_subcommand("oracle", "analytic oracle cross-checks");
    oracle->add_option("--which", which, "abcd | sinc | rabi | mat2 | all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectra->parsed()) {
            const auto files = run_spectra(build_config(sa));
            std::printf("wrote %zu files to %s\n", files.size(), sa.out.c_str());
            return 0;
        }
        if (biphoton->parsed()) {
            const auto files = run_biphoton(build_config(ba));
            std::printf("wrote %zu files to %s\n", files.size(), ba.out.c_str());
            return 0;
        }
        if (validate->parsed()) {
            ValidationOptions opt;
            opt.out_dir = va.out;
            opt.verbose = true;
            if (va.grid_points > 0) opt.n_points = va.grid_points;
            opt.sigma_mode = (va.sigma == "full") ? SigmaMode::full : SigmaMode::ground;
            const ValidationReport rep = validate_all(opt);
            std::printf("%s\n", rep.all_pass() ? "ALL CHECKS PASSED" : "VALIDATION FAILED");
            return rep.all_pass() ? 0 : 1;
        }
        if (oracle->parsed()) return run_oracle(which);
    } catch (const pcwave::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const pcwave::numeric_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
