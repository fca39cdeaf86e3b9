#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcwave/io.hpp"
#include "pcwave/scenario.hpp"

using namespace pcwave;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("pcwave_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

ScenarioConfig small_custom() {
    ScenarioConfig cfg;
    cfg.preset = Preset::custom;
    cfg.has_coupling = true;
    cfg.kappa = 1.0;
    cfg.length = 1.0;
    cfg.geometry = Geometry::forward;
    cfg.model = Model::macro;
    cfg.grid.n_points = 1 << 6;
    return cfg;
}

}  // namespace

TEST_CASE("config file parsing round trip") {
    const fs::path dir = temp_dir("cfg");
    const fs::path file = dir / "scenario.cfg";
    {
        std::ofstream f(file);
        f << "# comment line\n";
        f << "preset = rabi\n";
        f << "model = both\n";
        f << "geometry = forward\n";
        f << "grid.points = 4096\n";
        f << "grid.span_mhz = 250\n";
        f << "drive.omega_c_mhz = 20\n";
        f << "nln = true\n";
    }
    const ScenarioConfig cfg = parse_config_file(file.string());
    CHECK(cfg.preset == Preset::rabi);
    CHECK(cfg.model == Model::both);
    CHECK(cfg.geometry == Geometry::forward);
    CHECK(cfg.grid.n_points == 4096);
    CHECK(cfg.grid.span == doctest::Approx(2 * M_PI * 250e6));
    CHECK(std::abs(cfg.drive.omega_c) == doctest::Approx(2 * M_PI * 20e6));
    CHECK(cfg.nln);

    {
        std::ofstream f(file);
        f << "bogus.key = 1\n";
    }
    CHECK_THROWS_AS(parse_config_file(file.string()), config_error);
}

TEST_CASE("config validation errors") {
    ScenarioConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), config_error);  // nothing specified
    cfg = small_custom();
    cfg.model = Model::micro;  // no atoms available
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = small_custom();
    cfg.grid.n_points = 1000;
    CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("spectra file contract: counts, columns, determinism") {
    ScenarioConfig cfg = small_custom();
    const fs::path dir = temp_dir("spectra");
    cfg.out_dir = dir.string();
    const auto files = run_spectra(cfg);
    CHECK(files.size() == 18);  // 16 correlations + 2 commutators
    CHECK(fs::exists(dir / "manifest.json"));

    // constant pair-production column: <a1d a1> = sinh^2(1) = 1.3811
    const std::string body = slurp(dir / "macro_corr_a1d_a1.csv");
    CHECK(body.substr(0, body.find('\n')) == "varpi_over_2pi_MHz,re,im");
    std::stringstream ss(body);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    const double re = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(re == doctest::Approx(1.3811).epsilon(1e-3));
    CHECK(re == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));

    // byte-identical re-run
    const fs::path dir2 = temp_dir("spectra2");
    cfg.out_dir = dir2.string();
    run_spectra(cfg);
    for (const auto& name : files) {
        CHECK(slurp(dir / name) == slurp(dir2 / name));
    }

    // commutator file holds value - 1
    const std::string comm = slurp(dir / "macro_comm1.csv");
    CHECK(comm.substr(0, comm.find('\n')) == "varpi_over_2pi_MHz,value_minus_one");
}

TEST_CASE("nln flag adds tagged files and the counts match for both models") {
    ScenarioConfig cfg = ScenarioConfig::group_delay();
    cfg.grid.n_points = 1 << 5;  // tiny grid keeps the test quick
    cfg.nln = true;
    const fs::path dir = temp_dir("both");
    cfg.out_dir = dir.string();
    const auto files = run_spectra(cfg);
    // (16 + 2) x 2 models x (full + nln)
    CHECK(files.size() == 72);
    CHECK(fs::exists(dir / "micro_nln_corr_a2_a1.csv"));
}

TEST_CASE("manifest lists every file with its hash") {
    ScenarioConfig cfg = small_custom();
    const fs::path dir = temp_dir("manifest");
    cfg.out_dir = dir.string();
    const auto files = run_spectra(cfg);
    const std::string manifest = slurp(dir / "manifest.json");
    for (const auto& name : files) {
        CHECK(manifest.find("\"" + name + "\"") != std::string::npos);
    }
    CHECK(manifest.find("fnv1a64") != std::string::npos);
}

TEST_CASE("biphoton file contract") {
    ScenarioConfig cfg = ScenarioConfig::rabi();
    cfg.model = Model::macro;
    cfg.grid.n_points = 1 << 14;
    cfg.nln = true;
    const fs::path dir = temp_dir("biphoton");
    cfg.out_dir = dir.string();
    const auto files = run_biphoton(cfg);
    CHECK(files.size() == 2);
    const std::string body = slurp(dir / "biphoton_macro.csv");
    CHECK(body.substr(0, body.find('\n')) == "tau_us,G2_21,G2_12,g2,psi_re,psi_im");
    CHECK(fs::exists(dir / "biphoton_macro_nln.csv"));
}

TEST_CASE("svg plots are emitted when requested") {
    ScenarioConfig cfg = small_custom();
    cfg.plot = true;
    const fs::path dir = temp_dir("plots");
    cfg.out_dir = dir.string();
    const auto files = run_spectra(cfg);
    CHECK(files.size() == 16 * 2 + 2);  // csv + svg per correlation, commutator csvs
    CHECK(fs::exists(dir / "macro_corr_a1_a2.svg"));
}

TEST_CASE("csv writer uses 17 significant digits") {
    const fs::path dir = temp_dir("fmt");
    const std::string path = (dir / "x.csv").string();
    write_csv(path, {"a"}, {{1.0 / 3.0}});
    CHECK(slurp(path) == "a\n0.33333333333333331\n");
}
