#include "pcwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "pcwave/io.hpp"

namespace pcwave {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

DriveParams preset_drive(double omega_c_mhz) {
    DriveParams d;
    d.omega_p = kTwoPi * 1.2e6;
    d.omega_c = kTwoPi * omega_c_mhz * 1e6;
    d.delta_p = kTwoPi * 500e6;
    return d;
}

}  // namespace

ScenarioConfig ScenarioConfig::group_delay() {
    ScenarioConfig c;
    c.preset = Preset::group_delay;
    c.model = Model::both;
    c.geometry = Geometry::backward;
    c.has_atoms = true;
    c.levels = AtomicLevels::rb85();
    c.drive = preset_drive(12.0);
    c.ensemble = {80.0, 0.02, 127.0};
    c.grid.biphoton_span = kTwoPi * 192e6;
    return c;
}

ScenarioConfig ScenarioConfig::rabi() {
    ScenarioConfig c;
    c.preset = Preset::rabi;
    c.model = Model::both;
    c.geometry = Geometry::backward;
    c.has_atoms = true;
    c.levels = AtomicLevels::rb85();
    c.drive = preset_drive(24.0);
    c.ensemble = {0.1, 0.002, 127.0};
    // Truncating the coupling spectrum's 1/varpi^2 tails leaks acausal ringing
    // into psi(tau < 0); the wide span keeps it below 1e-3 of the peak.
    c.grid.biphoton_span = kTwoPi * 3200e6;
    return c;
}

void ScenarioConfig::validate() const {
    if (!has_atoms && !has_coupling)
        throw config_error("scenario: neither atomic nor coupling parameters given");
    if (has_atoms) {
        levels.validate();
        ensemble.validate();
    }
    if (has_coupling && !(length > 0.0))
        throw config_error("scenario: coupling length must be > 0");
    if ((model == Model::micro || model == Model::both) && !has_atoms)
        throw config_error("scenario: micro model requires atomic parameters");
    if (grid.n_points <= 0 || (grid.n_points & (grid.n_points - 1)))
        throw config_error("scenario: grid points must be a power of two");
}

CouplingSpec ScenarioConfig::coupling_spec() const {
    if (has_atoms) return micro_coupling_spec(levels, drive, ensemble, geometry);
    return CouplingSpec::constants(alpha1, alpha2, delta_k, kappa, theta, geometry, length);
}

double ScenarioConfig::auto_span() const {
    if (has_atoms) {
        const double oc = std::abs(drive.omega_c);
        const double eit_half_width =
            oc * oc / (levels.gamma3 * std::sqrt(1.0 + ensemble.od));
        return 8.0 * std::max(oc, eit_half_width);
    }
    // Custom constant coefficients are flat in varpi; any span represents them.
    return kTwoPi * 100e6;
}

FrequencyGrid ScenarioConfig::spectra_grid() const {
    FrequencyGrid g;
    g.n_points = grid.n_points;
    g.span = (grid.span > 0.0) ? grid.span : auto_span();
    g.validate();
    return g;
}

FrequencyGrid ScenarioConfig::biphoton_grid() const {
    FrequencyGrid g;
    g.n_points = grid.n_points;
    if (grid.biphoton_span > 0.0)
        g.span = grid.biphoton_span;
    else
        g.span = (grid.span > 0.0) ? grid.span : auto_span();
    g.validate();
    return g;
}

ScenarioEngine::ScenarioEngine(const ScenarioConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    spec_ = cfg_.coupling_spec();
    if (cfg_.micro_available()) {
        const SteadyState st = (cfg_.sigma_mode == SigmaMode::full)
                                   ? steady_state(cfg_.levels, cfg_.drive)
                                   : SteadyState::ground();
        diffusion_ = diffusion_tensor(st, cfg_.levels);
    }
}

ForcingCovariance ScenarioEngine::forcing(Model which, double varpi) const {
    if (which == Model::micro) {
        if (!cfg_.micro_available())
            throw config_error("scenario: micro model requires atomic parameters");
        return micro_forcing_covariance(varpi, cfg_.levels, cfg_.drive, cfg_.ensemble,
                                        diffusion_, cfg_.geometry);
    }
    return forcing_covariance_macro(noise_matrices(spec_, varpi));
}

MomentSample ScenarioEngine::sample(Model which, double varpi, NoiseMode mode) const {
    const ForcingCovariance cov =
        (mode == NoiseMode::nln) ? ForcingCovariance::zero() : forcing(which, varpi);
    return propagate_moments(spec_, cov, varpi, mode);
}

SecondMomentSpectra ScenarioEngine::spectra(Model which, NoiseMode mode,
                                            const FrequencyGrid& grid) const {
    SecondMomentSpectra out;
    out.varpi.resize(grid.n_points);
    out.samples.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        out.varpi[i] = grid.varpi_at(i);
        out.samples[i] = sample(which, out.varpi[i], mode);
    }
    return out;
}

namespace {

struct WaveSet {
    std::vector<cplx> psi21, psi12, phi;
};

WaveSet waves(const ScenarioEngine& eng, Model which, NoiseMode mode,
              const FrequencyGrid& grid) {
    std::vector<cplx> s21(grid.n_points), s12(grid.n_points), sphi(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const MomentSample m = eng.sample(which, grid.varpi_at(i), mode);
        s21[i] = m.a2_a1();
        s12[i] = m.a1_a2();
        sphi[i] = m.a2d_a1();
    }
    WaveSet w;
    w.psi21 = wavefunction_from_spectrum(s21, grid);
    w.psi12 = wavefunction_from_spectrum(s12, grid);
    w.phi = wavefunction_from_spectrum(sphi, grid);
    return w;
}

double rel_change_centered(const std::vector<cplx>& coarse, const std::vector<double>& tc,
                           const std::vector<cplx>& fine, const std::vector<double>& tf) {
    // Compare on coincident tau points of the two ascending grids.
    double peak = 0.0;
    for (const auto& v : coarse) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double dev = 0.0;
    size_t j = 0;
    for (size_t i = 0; i < tc.size(); ++i) {
        while (j + 1 < tf.size() && tf[j] < tc[i] - 1e-15 * std::max(1.0, std::abs(tc[i]))) ++j;
        if (j < tf.size() && std::abs(tf[j] - tc[i]) <= 1e-9 * std::max(std::abs(tc[i]), tc.back()))
            dev = std::max(dev, std::abs(coarse[i] - fine[j]));
    }
    return dev / peak;
}

}  // namespace

BiphotonResult compute_biphoton(const ScenarioEngine& eng, Model which, bool with_nln,
                                bool check_convergence) {
    const FrequencyGrid grid = eng.config().biphoton_grid();
    const FrequencyGrid sgrid = eng.config().spectra_grid();

    BiphotonResult out;
    out.grid = grid;
    const auto tau = grid.tau();
    const WaveSet w = waves(eng, which, NoiseMode::full, grid);
    const auto [r1, r2] = rates(eng.spectra(which, NoiseMode::full, sgrid));
    out.full = glauber_g2(w.psi21, w.psi12, w.phi, r1, r2, tau);

    if (check_convergence) {
        // Doubling the point count (same span) must leave psi unchanged to
        // 1e-3. Span adequacy is a preset property: truncating the coupling
        // spectrum's far wings only reshapes the tau ~ 0 precursor spike,
        // whose height converges as 1/span; the causality bound polices it.
        FrequencyGrid finer = grid;
        finer.n_points *= 2;
        const WaveSet wf = waves(eng, which, NoiseMode::full, finer);
        const double d1 = rel_change_centered(w.psi21, tau, wf.psi21, finer.tau());
        if (d1 > 1e-3)
            throw grid_unresolved_error("biphoton: doubling n_points changes psi by " +
                                        std::to_string(d1));
    }

    if (with_nln) {
        const WaveSet wn = waves(eng, which, NoiseMode::nln, grid);
        out.nln = glauber_g2(wn.psi21, wn.psi12, wn.phi, r1, r2, tau);
    }
    return out;
}

namespace {

std::vector<Model> requested_models(const ScenarioConfig& cfg) {
    if (cfg.model == Model::both) return {Model::macro, Model::micro};
    return {cfg.model};
}

void write_spectra_files(const ScenarioConfig& cfg, const ScenarioEngine& eng, Model which,
                         NoiseMode mode, const FrequencyGrid& grid,
                         std::vector<std::string>& files) {
    const SecondMomentSpectra sp = eng.spectra(which, mode, grid);
    const std::string tag =
        model_name(which) + (mode == NoiseMode::nln ? std::string("_nln") : std::string());
    std::vector<double> freq(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) freq[i] = sp.varpi[i] / (kTwoPi * 1e6);

    for (int k = 0; k < SecondMomentSpectra::kNumObservables; ++k) {
        const auto series = sp.observable_series(k);
        std::vector<double> re(series.size()), im(series.size());
        for (size_t i = 0; i < series.size(); ++i) {
            re[i] = series[i].real();
            im[i] = series[i].imag();
        }
        const std::string name = tag + "_corr_" + SecondMomentSpectra::observable_name(k) + ".csv";
        write_csv(cfg.out_dir + "/" + name, {"varpi_over_2pi_MHz", "re", "im"}, {freq, re, im});
        files.push_back(name);
        if (cfg.plot) {
            const std::string svg = tag + "_corr_" +
                                    std::string(SecondMomentSpectra::observable_name(k)) + ".svg";
            write_svg_polyline(cfg.out_dir + "/" + svg, freq, re, name);
            files.push_back(svg);
        }
    }
    for (int c = 0; c < 2; ++c) {
        std::vector<double> val(grid.n_points);
        for (int i = 0; i < grid.n_points; ++i)
            val[i] = (c == 0 ? sp.samples[i].comm1 : sp.samples[i].comm2) - 1.0;
        const std::string name = tag + "_comm" + std::to_string(c + 1) + ".csv";
        write_csv(cfg.out_dir + "/" + name, {"varpi_over_2pi_MHz", "value_minus_one"},
                  {freq, val});
        files.push_back(name);
    }
}

}  // namespace

std::vector<std::string> run_spectra(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const ScenarioEngine eng(cfg);
    const FrequencyGrid grid = cfg.spectra_grid();
    std::vector<std::string> files;
    for (Model m : requested_models(cfg)) {
        write_spectra_files(cfg, eng, m, NoiseMode::full, grid, files);
        if (cfg.nln) write_spectra_files(cfg, eng, m, NoiseMode::nln, grid, files);
    }
    write_manifest(cfg, grid, files);
    return files;
}

std::vector<std::string> run_biphoton(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const ScenarioEngine eng(cfg);
    std::vector<std::string> files;
    for (Model m : requested_models(cfg)) {
        const BiphotonResult res = compute_biphoton(eng, m, cfg.nln);
        auto emit = [&](const TemporalObservables& t, const std::string& tag) {
            std::vector<double> tau_us(t.tau.size());
            std::vector<double> g21(t.tau.size()), g12(t.tau.size()), g2(t.tau.size());
            std::vector<double> pre(t.tau.size()), pim(t.tau.size());
            for (size_t i = 0; i < t.tau.size(); ++i) {
                tau_us[i] = t.tau[i] * 1e6;
                g21[i] = t.g2_21[i];
                g12[i] = t.g2_12[i];
                g2[i] = t.g2_func[i];
                pre[i] = t.psi21[i].real();
                pim[i] = t.psi21[i].imag();
            }
            const std::string name = "biphoton_" + tag + ".csv";
            write_csv(cfg.out_dir + "/" + name,
                      {"tau_us", "G2_21", "G2_12", "g2", "psi_re", "psi_im"},
                      {tau_us, g21, g12, g2, pre, pim});
            files.push_back(name);
            if (cfg.plot) {
                const std::string svg = "biphoton_" + tag + ".svg";
                write_svg_polyline(cfg.out_dir + "/" + svg, tau_us, g21, name);
                files.push_back(svg);
            }
        };
        emit(res.full, model_name(m));
        if (res.nln) emit(*res.nln, model_name(m) + "_nln");
    }
    write_manifest(cfg, cfg.biphoton_grid(), files);
    return files;
}

bool ValidationReport::all_pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

}  // namespace pcwave
