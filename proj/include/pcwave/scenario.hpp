#pragma once

#include <optional>
#include <string>

#include "pcwave/atomsfwm.hpp"
#include "pcwave/correlator.hpp"

namespace pcwave {

enum class Preset { group_delay, rabi, custom };
enum class Model { macro, micro, both };

struct GridOptions {
    int n_points{1 << 14};
    double span{0.0};           // rad/s; 0 = auto from the scenario
    double biphoton_span{0.0};  // rad/s; 0 = auto (wide enough for causality)
};

// One scenario: either an atomic preset (macro and micro models available) or
// a custom constant-coefficient coupling (macro only). Units here are SI; the
// config-file layer converts from MHz / cm.
struct ScenarioConfig {
    Preset preset{Preset::custom};
    Model model{Model::macro};
    Geometry geometry{Geometry::backward};
    SigmaMode sigma_mode{SigmaMode::ground};

    bool has_atoms{false};
    AtomicLevels levels{};
    DriveParams drive{};
    EnsembleParams ensemble{};

    bool has_coupling{false};
    cplx alpha1{}, alpha2{}, kappa{};
    double delta_k{0.0}, theta{0.0}, length{0.0};

    GridOptions grid{};
    std::string out_dir{"out"};
    bool nln{false};
    bool plot{false};

    static ScenarioConfig group_delay();
    static ScenarioConfig rabi();

    void validate() const;
    bool micro_available() const { return has_atoms; }
    CouplingSpec coupling_spec() const;
    double auto_span() const;
    FrequencyGrid spectra_grid() const;
    FrequencyGrid biphoton_grid() const;
};

// Per-frequency moment provider for the configured scenario. The diffusion
// tensor and steady state are computed once and shared across samples.
class ScenarioEngine {
public:
    explicit ScenarioEngine(const ScenarioConfig& cfg);

    MomentSample sample(Model which, double varpi, NoiseMode mode) const;
    SecondMomentSpectra spectra(Model which, NoiseMode mode, const FrequencyGrid& grid) const;

    const CouplingSpec& spec() const { return spec_; }
    const ScenarioConfig& config() const { return cfg_; }
    ForcingCovariance forcing(Model which, double varpi) const;

private:
    ScenarioConfig cfg_;
    CouplingSpec spec_;
    DiffusionTensor diffusion_{};
};

struct BiphotonResult {
    FrequencyGrid grid;
    TemporalObservables full;
    std::optional<TemporalObservables> nln;
};

// Assemble rates, wavefunctions and Glauber correlations. When
// check_convergence is set, the wavefunctions are re-computed on a grid with
// doubled points (finer spacing) and doubled span; a relative change above
// 1e-3 throws grid_unresolved_error.
BiphotonResult compute_biphoton(const ScenarioEngine& engine, Model which,
                                bool with_nln, bool check_convergence = true);

// File outputs. Both return the list of files written (relative to out_dir)
// and emit a manifest.json alongside.
std::vector<std::string> run_spectra(const ScenarioConfig& cfg);
std::vector<std::string> run_biphoton(const ScenarioConfig& cfg);

struct CheckRecord {
    std::string name;
    double max_abs_deviation{0.0};
    double tolerance{0.0};
    bool pass{false};
    std::string note;
};

struct ValidationReport {
    std::vector<CheckRecord> records;
    bool all_pass() const;
};

struct ValidationOptions {
    int n_points{1 << 14};
    SigmaMode sigma_mode{SigmaMode::ground};
    std::string out_dir;      // empty = no report file
    bool verbose{false};      // print one line per record to stdout
};

// Full acceptance suite over the two presets; writes report.json when
// out_dir is set.
ValidationReport validate_all(const ValidationOptions& opt);

}  // namespace pcwave
