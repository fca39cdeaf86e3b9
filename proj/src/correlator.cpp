#include "pcwave/correlator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

namespace pcwave {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

cplx sinc_c(cplx z) {
    if (std::abs(z) < 1e-6) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

}  // namespace

double FrequencyGrid::tau_step() const { return M_PI / span; }

std::vector<double> FrequencyGrid::tau() const {
    std::vector<double> t(n_points);
    const double dt = tau_step();
    for (int j = 0; j < n_points; ++j) t[j] = (j - n_points / 2) * dt;
    return t;
}

void FrequencyGrid::validate() const {
    if (!power_of_two(n_points)) throw config_error("grid: n_points must be a power of two");
    if (!(span > 0.0)) throw config_error("grid: span must be > 0");
}

std::pair<double, double> rates(const SecondMomentSpectra& spectra) {
    const auto& v = spectra.varpi;
    double r1 = 0.0, r2 = 0.0;
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const double h = v[i + 1] - v[i];
        r1 += 0.5 * h * (spectra.samples[i].a1d_a1().real() +
                         spectra.samples[i + 1].a1d_a1().real());
        r2 += 0.5 * h * (spectra.samples[i].a2d_a2().real() +
                         spectra.samples[i + 1].a2d_a2().real());
    }
    return {r1 / kTwoPi, r2 / kTwoPi};
}

std::vector<cplx> wavefunction_from_spectrum(const std::vector<cplx>& s,
                                             const FrequencyGrid& grid) {
    grid.validate();
    const int n = grid.n_points;
    if (static_cast<int>(s.size()) != n)
        throw config_error("wavefunction_from_spectrum: size mismatch with grid");
    std::vector<cplx> work(s);
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(work.data()),
                                      reinterpret_cast<fftw_complex*>(work.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    // work[j] = sum_k s_k e^{-2pi i kj/n}; tau_j = j dt (wrapped), and the
    // grid origin -span contributes the phase e^{+i span tau_j}.
    const double dt = grid.tau_step();
    const double norm = grid.spacing() / kTwoPi;
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        const int jw = (j < n / 2) ? j : j - n;  // signed index
        const double tau = jw * dt;
        const cplx phase = std::exp(cplx(0.0, grid.span * tau));
        out[jw + n / 2] = norm * phase * work[j];
    }
    return out;
}

TemporalObservables glauber_g2(const std::vector<cplx>& psi21, const std::vector<cplx>& psi12,
                               const std::vector<cplx>& phi, double r1, double r2,
                               const std::vector<double>& tau) {
    TemporalObservables t;
    t.tau = tau;
    t.psi21 = psi21;
    t.psi12 = psi12;
    t.phi = phi;
    t.r1 = r1;
    t.r2 = r2;
    const size_t n = tau.size();
    t.g2_21.resize(n);
    t.g2_12.resize(n);
    t.g2_func.resize(n);
    const double acc = r1 * r2;
    for (size_t i = 0; i < n; ++i) {
        const double cross = std::norm(phi[i]);
        t.g2_21[i] = std::norm(psi21[i]) + cross + acc;
        t.g2_12[i] = std::norm(psi12[i]) + cross + acc;
        t.g2_func[i] = (acc > 0.0) ? t.g2_21[i] / acc : 0.0;
    }
    return t;
}

CMat2 analytic_abcd(const CouplingSpec& spec, double varpi) {
    const cplx a1 = spec.alpha1(varpi);
    const cplx a2c = std::conj(spec.alpha2(varpi));
    const cplx k = spec.kappa(varpi);
    const double L = spec.length;
    const cplx iu(0.0, 1.0);
    if (spec.geometry == Geometry::forward) {
        const cplx q = a1 - a2c - iu * spec.delta_k;
        const cplx s = std::sqrt(q * q + 4.0 * k * k);
        const cplx h = 0.5 * s * L;
        const cplx ch = std::cosh(h);
        const cplx sh_over = (std::abs(h) < 1e-6) ? cplx(0.5 * L) * (1.0 + h * h / 6.0)
                                                  : std::sinh(h) / s;
        const cplx damp = std::exp(-0.5 * (a1 + a2c) * L);
        return {damp * (ch - q * sh_over), damp * 2.0 * iu * k * sh_over,
                damp * (-2.0) * iu * k * sh_over, damp * (ch + q * sh_over)};
    }
    const cplx q = a1 + a2c - iu * spec.delta_k;
    const cplx s = std::sqrt(q * q - 4.0 * k * k);
    const cplx h = 0.5 * s * L;
    const cplx ch = std::cosh(h);
    const cplx sh_over = (std::abs(h) < 1e-6) ? cplx(0.5 * L) * (1.0 + h * h / 6.0)
                                              : std::sinh(h) / s;  // sinh(h)/s, even in s
    const cplx den = q * sh_over + ch;  // = (q sinh + s cosh)/s
    const cplx grow = std::exp(-0.5 * (a1 - a2c) * L);
    return {grow / den, 2.0 * iu * k * sh_over / den, -2.0 * iu * k * sh_over / den,
            (1.0 / grow) / den};
}

double small_gain_parameter(const CouplingSpec& spec, double varpi) {
    const cplx a1 = spec.alpha1(varpi);
    const cplx a2c = std::conj(spec.alpha2(varpi));
    const cplx iu(0.0, 1.0);
    const cplx q = (spec.geometry == Geometry::forward) ? a1 - a2c - iu * spec.delta_k
                                                        : a1 + a2c - iu * spec.delta_k;
    return std::abs(spec.kappa(varpi)) / std::max(std::abs(q), 1e-300);
}

PerturbationParams make_perturbation_params(const CouplingSpec& spec, double varpi,
                                            Channel2 kind) {
    const cplx a1 = spec.alpha1(varpi);
    const cplx a2 = spec.alpha2(varpi);
    const cplx iu(0.0, 1.0);
    const cplx dk1 = iu * a1;  // channel wavenumber shifts
    const cplx dk2 = iu * a2;
    const double dk = spec.delta_k;
    const double L = spec.length;
    const bool fwd = spec.geometry == Geometry::forward;

    PerturbationParams p;
    p.q = fwd ? (a1 - std::conj(a2) - iu * dk) : (a1 + std::conj(a2) - iu * dk);
    p.delta_k_m = dk2;
    cplx phase;
    if (kind == Channel2::gain) {
        p.delta_k_tilde = fwd ? (dk1 + std::conj(dk2) + dk) : (dk1 - std::conj(dk2) + dk);
        phase = fwd ? (dk1 - std::conj(dk2) + 2.0 * dk2 + dk)
                    : (dk1 - std::conj(dk2) + 2.0 * dk2);
    } else {
        p.delta_k_tilde = fwd ? (std::conj(dk1) + dk2 + dk) : (std::conj(dk1) - dk2 + dk);
        phase = fwd ? (2.0 * dk1 - std::conj(dk1) + dk2 + dk)
                    : (2.0 * dk1 - std::conj(dk1) + dk2);
    }
    p.phi_func = sinc_c(0.5 * p.delta_k_tilde * L) * std::exp(0.5 * iu * phase * L);
    return p;
}

cplx smallgain_sinc(const CouplingSpec& spec, double varpi, Channel2 kind) {
    const PerturbationParams p = make_perturbation_params(spec, varpi, kind);
    const cplx iu(0.0, 1.0);
    const cplx k = spec.kappa(varpi);
    const cplx kap = (kind == Channel2::gain) ? k : std::conj(k);
    return iu * kap * spec.length * p.phi_func;
}

std::vector<cplx> perturbation_wavefunction(const CouplingSpec& spec, const FrequencyGrid& grid,
                                            Channel2 kind) {
    std::vector<cplx> s(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i)
        s[i] = smallgain_sinc(spec, grid.varpi_at(i), kind);
    return wavefunction_from_spectrum(s, grid);
}

std::function<cplx(double)> rabi_analytic(const RabiParams& rp, double L) {
    if (!(rp.omega_e > 0.0)) throw numeric_error("rabi_analytic: omega_e must be real positive");
    const double oe = rp.omega_e, ge = rp.gamma_e, amp = 2.0 * L * rp.j_amp;
    return [oe, ge, amp](double tau) -> cplx {
        if (tau <= 0.0) return 0.0;
        return cplx(0.0, -amp) * std::exp(-ge * tau) * std::sin(0.5 * oe * tau);
    };
}

OscillationFit fit_damped_oscillation(const std::vector<double>& tau,
                                      const std::vector<double>& abs2) {
    OscillationFit fit;
    double peak = 0.0;
    for (double v : abs2) peak = std::max(peak, v);
    if (peak <= 0.0) return fit;
    // Parabolic refinement of interior maxima above a floor, tau > 0 only.
    std::vector<double> tm, ym;
    for (size_t i = 1; i + 1 < abs2.size(); ++i) {
        if (tau[i] <= 0.0) continue;
        if (abs2[i] > abs2[i - 1] && abs2[i] > abs2[i + 1] && abs2[i] > 1e-6 * peak) {
            const double d = 0.5 * (abs2[i - 1] - abs2[i + 1]) /
                             (abs2[i - 1] - 2.0 * abs2[i] + abs2[i + 1]);
            const double dt = tau[i + 1] - tau[i];
            tm.push_back(tau[i] + d * dt);
            const double yref = abs2[i] - 0.25 * (abs2[i - 1] - abs2[i + 1]) * d;
            ym.push_back(yref);
        }
    }
    fit.n_peaks = static_cast<int>(tm.size());
    if (fit.n_peaks < 3) return fit;
    double per = 0.0;
    for (size_t i = 0; i + 1 < tm.size(); ++i) per += tm[i + 1] - tm[i];
    per /= static_cast<double>(tm.size() - 1);
    fit.omega = kTwoPi / per;
    // least-squares slope of log peaks
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(tm.size());
    for (size_t i = 0; i < tm.size(); ++i) {
        sx += tm[i];
        sy += std::log(ym[i]);
        sxx += tm[i] * tm[i];
        sxy += tm[i] * std::log(ym[i]);
    }
    fit.decay = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

ShortLengthReport complex_kappa_shortL_check(const CouplingSpec& spec) {
    spec.validate();
    const cplx k0 = spec.kappa(0.0);
    const double L = spec.length;
    ShortLengthReport rep;
    rep.expected = cplx(0.0, 0.5) * (k0 + std::conj(k0)) * L;

    auto amps = [&](cplx kap) {
        CouplingSpec s = CouplingSpec::constants(0.0, 0.0, 0.0, kap, 0.0, spec.geometry, L);
        const ForcingCovariance cov = forcing_covariance_macro(noise_matrices(s, 0.0));
        const MomentSample m = propagate_moments(s, cov, 0.0);
        return std::pair<cplx, cplx>{m.a2_a1(), m.a1_a2()};
    };
    const auto [a21, a12] = amps(k0);
    rep.amp21 = a21;
    rep.amp12 = a12;
    rep.amp_error = std::max(std::abs(a21 - rep.expected), std::abs(a12 - rep.expected));
    const cplx kflip(k0.real(), -k0.imag());
    const auto [b21, b12] = amps(kflip);
    rep.branch_delta = std::max(std::abs(b21 - a21), std::abs(b12 - a12));

    // Time-reversal of the waveform: |psi| even; phases satisfy psi = -psi*(-tau)
    // for the purely imaginary first-order pair spectrum.
    FrequencyGrid grid;
    grid.n_points = 1 << 10;
    grid.span = 1.0;  // flat spectrum; units drop out
    std::vector<cplx> s(grid.n_points, a21);
    const auto psi = wavefunction_from_spectrum(s, grid);
    double peak = 0.0;
    for (const auto& v : psi) peak = std::max(peak, std::abs(v));
    double msym = 0.0, pasym = 0.0;
    const int n = grid.n_points;
    for (int j = 1; j < n; ++j) {
        const int jr = n - j;  // tau index of -tau[j] (tau[n/2] = 0)
        if (jr >= n) continue;
        msym = std::max(msym, std::abs(std::abs(psi[j]) - std::abs(psi[jr])));
        pasym = std::max(pasym, std::abs(psi[j] + std::conj(psi[jr])));
    }
    // A purely imaginary coupling has zero first-order pair amplitude; the
    // symmetry ratios are vacuous there (0/0), not violations.
    const double floor = 1e-10 * std::abs(k0) * L;
    rep.modulus_symmetry = (peak > floor) ? msym / peak : 0.0;
    rep.phase_antisymmetry = (peak > floor) ? pasym / peak : 0.0;
    return rep;
}

}  // namespace pcwave
