#pragma once

#include <functional>
#include <vector>

#include "pcwave/phenomodel.hpp"

namespace pcwave {

// Uniform frequency grid varpi in [-span, span), n_points a power of two.
// Carrier frequencies are bookkeeping only; all observables are carrier free.
struct FrequencyGrid {
    int n_points{1 << 14};
    double span{0.0};        // rad/s
    double omega10{0.0}, omega20{0.0};

    double spacing() const { return 2.0 * span / n_points; }
    double varpi_at(int k) const { return -span + spacing() * k; }
    double tau_step() const;                 // pi / span
    std::vector<double> tau() const;         // ascending, length n_points
    void validate() const;                   // throws config_error
};

// Photon rates R_m = (1/2pi) int <a_m^dag a_m> dvarpi (trapezoid on the grid).
std::pair<double, double> rates(const SecondMomentSpectra& spectra);

// psi(tau_j) = (1/2pi) int S(varpi) e^{-i varpi tau_j} dvarpi on the grid's
// conjugate time points, via FFT. Returned in ascending-tau order.
std::vector<cplx> wavefunction_from_spectrum(const std::vector<cplx>& s,
                                             const FrequencyGrid& grid);

// Time-domain observables on the grid's tau points. G2 arrays follow the
// decomposition G2 = |psi|^2 + |phi|^2 + R1 R2; g2 = G2_21 / (R1 R2).
struct TemporalObservables {
    std::vector<double> tau;
    std::vector<cplx> psi21, psi12, phi;
    std::vector<double> g2_func, g2_21, g2_12;  // g2_func normalized, g2_xx unnormalized G2
    double r1{0.0}, r2{0.0};
};

TemporalObservables glauber_g2(const std::vector<cplx>& psi21, const std::vector<cplx>& psi12,
                               const std::vector<cplx>& phi, double r1, double r2,
                               const std::vector<double>& tau);

// Closed-form transfer coefficients:
//   forward  (q = a1 - a2* - i dk, s = sqrt(q^2 + 4 k^2)): entries of e^{M_F L};
//   backward (q = a1 + a2* - i dk, s = sqrt(q^2 - 4 k^2)): the rearranged ABCD.
// Both forms are even in the square root, hence branch insensitive.
CMat2 analytic_abcd(const CouplingSpec& spec, double varpi);

enum class Channel2 { gain, loss };

// Small-gain sinc approximations of the pair spectra: BD* with the conjugated
// channel-2 wavenumber (gain ordering) or AC* with it unconjugated (loss
// ordering). Valid for |kappa / q| << 1.
cplx smallgain_sinc(const CouplingSpec& spec, double varpi, Channel2 kind);
double small_gain_parameter(const CouplingSpec& spec, double varpi);

// Longitudinal detuning data of the small-gain form at one frequency.
struct PerturbationParams {
    cplx delta_k_tilde{};  // 1/m, conjugation convention per gain/loss
    cplx phi_func{};       // sinc(dk~ L/2) x propagation phase factor
    cplx q{};              // 1/m
    cplx delta_k_m{};      // i alpha_2 (wavenumber shift of channel 2)
};
PerturbationParams make_perturbation_params(const CouplingSpec& spec, double varpi,
                                            Channel2 kind);

// psi(tau) = (i L / 2pi) int kappa(varpi) Phi(varpi) e^{-i varpi tau} dvarpi.
std::vector<cplx> perturbation_wavefunction(const CouplingSpec& spec,
                                            const FrequencyGrid& grid, Channel2 kind);

struct RabiParams {
    double omega_e{};  // effective coupling Rabi frequency, rad/s
    double gamma_e{};  // effective dephasing, rad/s
    double j_amp{};    // residue amplitude, 1/m
};

// Damped-oscillation waveform psi(tau) = -2i L J e^{-ge tau} sin(Oe tau/2) H(tau).
std::function<cplx(double)> rabi_analytic(const RabiParams& rp, double L);

// Oscillation parameters fitted from |psi(tau)|^2: local-maxima spacing gives
// the frequency, the log-envelope slope the decay rate.
struct OscillationFit {
    double omega{0.0};
    double decay{0.0};
    int n_peaks{0};
};
OscillationFit fit_damped_oscillation(const std::vector<double>& tau,
                                      const std::vector<double>& abs2);

// First-order pair correlations of a lossless phase-matched medium with
// complex coupling: amplitude (i/2)(kappa + kappa*) L for either sign of
// Im kappa, and time-reversal-symmetric |psi|.
struct ShortLengthReport {
    cplx amp21{}, amp12{};       // computed pair amplitudes
    cplx expected{};             // (i/2)(kappa + kappa*) L
    double amp_error{};          // max deviation, should be O((|M|L)^2)
    double branch_delta{};       // ham(+|Im k|) vs ham(-|Im k|) amplitude difference
    double modulus_symmetry{};   // max | |psi(t)| - |psi(-t)| | / peak
    double phase_antisymmetry{}; // max | psi(t) + psi*(-t) | / peak
};
ShortLengthReport complex_kappa_shortL_check(const CouplingSpec& spec);

}  // namespace pcwave
