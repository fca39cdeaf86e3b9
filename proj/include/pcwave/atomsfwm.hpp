#pragma once

#include <array>

#include "pcwave/correlator.hpp"
#include "pcwave/phenomodel.hpp"

namespace pcwave {

// Double-Lambda four-level atom. States are indexed 1..4: two hyperfine ground
// states |1>, |2> and excited states |3> (anti-Stokes transition to |1>) and
// |4> (Stokes transition to |2>, pump from |1>). All rates in rad/s.
struct AtomicLevels {
    double gamma3{}, gamma4{};                     // total excited-state decays
    double gamma31{}, gamma32{}, gamma41{}, gamma42{};  // branch decays
    double deph[4][4]{};                           // dephasings gamma_jk (0-based)
    double omega13{}, omega24{};                   // optical transition frequencies
    double mu13{}, mu24{};                         // dipole moments, C*m (0 = calibrated)
    double cross_section{1.0};                     // single-mode area; cancels exactly

    static AtomicLevels rb85();
    void validate() const;  // branch sums, non-negative rates
};

struct DriveParams {
    cplx omega_p{}, omega_c{};  // Rabi frequencies with phases, rad/s
    double delta_p{};           // pump detuning, rad/s

    // Ground-state approximation validity: |delta_p| >> max(|omega_p|, Gamma4).
    bool ground_state_ok(const AtomicLevels& levels) const;
};

struct EnsembleParams {
    double od{};       // optical depth on |1>-|3>, dimensionless
    double length{};   // m
    double delta_k{};  // 1/m
    void validate() const;
};

// Steady-state single-atom expectations <sigma_jk>, 0-based indexing.
struct SteadyState {
    std::array<std::array<cplx, 4>, 4> sigma{};
    cplx trace() const;
    static SteadyState ground();
};

// Which expectations feed the diffusion tensor. `ground` keeps drift and
// diffusion at the same approximation order; `full` uses the solved state.
enum class SigmaMode { ground, full };

// Exact 16-dimensional constrained solve of the drift (quantum fields dropped).
// Throws singular_drift_error when the system is rank deficient.
SteadyState steady_state(const AtomicLevels& levels, const DriveParams& drive);

// Atomic noise-correlation tensor over the SFWM coherence sector. Operator
// order: sigma_{12}, sigma_{13}, sigma_{42}, sigma_{43} then their flips
// sigma_{21}, sigma_{31}, sigma_{24}, sigma_{34}. d(i,j) = D_{op_i, op_j}.
struct DiffusionTensor {
    static constexpr int kOps = 8;
    std::array<std::array<cplx, kOps>, kOps> d{};

    // (row, col) layouts of the two closed-form blocks:
    // anti-normal rows {12,42,13,43} x cols {21,24,31,34} and its conjugate.
    cplx antinormal(int r, int c) const;
    cplx normal(int r, int c) const;
};

// Closed-form tensor from the given expectations. Entries outside the two
// dissipative blocks vanish: the drift maps the {1,4}x{2,3} coherence sector
// to itself, so unflipped-pair correlations are identically zero.
DiffusionTensor diffusion_tensor(const SteadyState& state, const AtomicLevels& levels);

// Independent evaluation through d/dt<ss> - <As> - <sA> with the exact product
// rule <sigma_jk sigma_j'k'> = delta_kj' <sigma_jk'>; same layout.
DiffusionTensor einstein_oracle(const SteadyState& state, const AtomicLevels& levels,
                                const DriveParams& drive);

// Ground-state noise-expansion coefficients, indexed {12, 13, 42, 43}.
struct BetaCoefficients {
    std::array<cplx, 4> beta_as{}, beta_s{};
    cplx t_of_varpi{};  // |Oc|^2 - 4 (varpi + i g13)(varpi + i g12)
};
BetaCoefficients beta_coefficients(double varpi, const AtomicLevels& levels,
                                   const DriveParams& drive);

// Linear and third-order response plus the coupling decomposition
// kappa_as = kappa e^{i theta}, kappa_s = kappa e^{-i theta}. The dipole
// products n|mu|^2 are calibrated from the optical depth:
// od = 2 Re{alpha_as(0; omega_c=0)} length. chi3 values are reported per unit
// pump-coupling field product (the drives are folded into kappa).
struct Susceptibilities {
    cplx chi_as{}, chi_s{};
    cplx chi3_as{}, chi3_s{};
    cplx alpha_as{}, alpha_s{};   // 1/m
    cplx kappa_as{}, kappa_s{}, kappa{};  // 1/m
    double theta{};               // phase of omega_p omega_c / (delta_p + i g14)
};
Susceptibilities susceptibilities(double varpi, const AtomicLevels& levels,
                                  const DriveParams& drive, const EnsembleParams& ensemble);

// Effective Rabi-oscillation parameters of the coupling spectrum:
// omega_e = sqrt(|omega_c|^2 - (g13 - g12)^2), gamma_e = (g12 + g13)/2.
// Throws when |omega_c| <= |g13 - g12| (omega_e not real).
RabiParams rabi_params(const AtomicLevels& levels, const DriveParams& drive,
                       const EnsembleParams& ensemble);

// Coupling matrix with the calibrated susceptibilities, canonical gauge.
CMat2 micro_coupling_matrix(double varpi, const AtomicLevels& levels, const DriveParams& drive,
                            const EnsembleParams& ensemble, Geometry geometry);

// Field-forcing covariances from the atomic noise tensor (beta-weighted sums
// with prefactors n|mu13|^2 w_as/(2 c eps0 hbar) etc.; the cross-section
// cancels identically). The constant drive phase is gauge-rotated out so the
// covariances live in the canonical theta = 0 frame.
ForcingCovariance micro_forcing_covariance(double varpi, const AtomicLevels& levels,
                                           const DriveParams& drive,
                                           const EnsembleParams& ensemble,
                                           const DiffusionTensor& dt, Geometry geometry);

// CouplingSpec whose coefficient callables close over the atomic model.
CouplingSpec micro_coupling_spec(const AtomicLevels& levels, const DriveParams& drive,
                                 const EnsembleParams& ensemble, Geometry geometry);

// Calibrated forcing prefactors eta_as = od g13 / (2 L) and the Stokes analog
// via the Weisskopf-Wigner dipole ratio (|mu24|/|mu13|)^2 = (G42/G31)(w13/w24)^3.
struct ForcingScales {
    double eta_as{}, eta_s{};      // rad/(s m)
    double omega_as{}, omega_s{};  // carrier frequencies, rad/s
    double density{};              // implied atom density, 1/m^3 (consistency output)
};
ForcingScales forcing_scales(const AtomicLevels& levels, const DriveParams& drive,
                             const EnsembleParams& ensemble);

}  // namespace pcwave
