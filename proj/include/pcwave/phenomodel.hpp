#pragma once

#include <functional>
#include <vector>

#include "pcwave/mat2.hpp"

namespace pcwave {

enum class Geometry { forward, backward };
enum class NoiseMode { full, nln };  // nln = Langevin forcing deliberately dropped
enum class SymmetryClass { apt, pt, none };

// Two coupled phase-conjugated modes (a1, a2^dag): linear loss/gain alpha_m,
// vacuum phase mismatch delta_k, nonlinear coupling kappa = |kappa| phase-split
// into a canonical magnitude-law kappa(varpi) and a constant gauge angle theta.
// alpha and kappa may be frequency dependent.
struct CouplingSpec {
    std::function<cplx(double)> alpha1;  // 1/m, Re>0 loss / Re<0 gain
    std::function<cplx(double)> alpha2;
    std::function<cplx(double)> kappa;   // 1/m, complex
    double delta_k{0.0};                 // 1/m
    double theta{0.0};                   // rad, |theta| <= pi
    Geometry geometry{Geometry::forward};
    double length{0.0};                  // m, > 0

    static CouplingSpec constants(cplx a1, cplx a2, double dk, cplx kap, double theta,
                                  Geometry g, double L);
    void validate() const;  // throws config_error
};

// Real/imaginary split of the Langevin noise matrix N; both parts are real.
struct NoiseMatrices {
    CMat2 n_r, n_i;  // entries carry zero imaginary part by construction
};

// Per-unit-length second moments of the combined forcing vector F = (F1, F2):
//   c_ff_dag[i][j]    = <F_i F_j^dag>
//   c_fdag_f[i][j]    = <F_i^dag F_j>
//   c_ff[i][j]        = <F_i F_j>
//   c_fdag_fdag[i][j] = <F_i^dag F_j^dag>  (= conj-transpose image of c_ff)
struct ForcingCovariance {
    CMat2 c_ff_dag, c_fdag_f, c_ff, c_fdag_fdag;
    static ForcingCovariance zero() { return {}; }
};

// Output second moments of v = (a1, a2^dag) at one frequency, plus the
// commutator diagnostics comm1 = <v1 v1^dag> - <v1^dag v1> and
// comm2 = -(<v2 v2^dag> - <v2^dag v2>); both equal 1 when preserved.
struct MomentSample {
    CMat2 m_aad, m_ada, m_aa, m_adad;
    double comm1{0.0}, comm2{0.0};

    // The sixteen output correlations, named by operator order.
    cplx a1_a1d() const { return m_aad.e11; }
    cplx a1d_a1() const { return m_ada.e11; }
    cplx a2_a2d() const { return m_ada.e22; }
    cplx a2d_a2() const { return m_aad.e22; }
    cplx a1_a1() const { return m_aa.e11; }
    cplx a1d_a1d() const { return m_adad.e11; }
    cplx a2_a2() const { return m_adad.e22; }
    cplx a2d_a2d() const { return m_aa.e22; }
    cplx a1_a2() const { return m_aad.e12; }      // pair amplitude <a1 a2>
    cplx a2d_a1d() const { return m_aad.e21; }
    cplx a2_a1() const { return m_ada.e21; }      // pair amplitude <a2 a1>
    cplx a1d_a2d() const { return m_ada.e12; }
    cplx a1_a2d() const { return m_aa.e12; }      // cross term family
    cplx a2_a1d() const { return m_adad.e21; }
    cplx a1d_a2() const { return m_adad.e12; }
    cplx a2d_a1() const { return m_aa.e21; }
};

// Frequency-resolved second moments over a grid of varpi samples.
struct SecondMomentSpectra {
    std::vector<double> varpi;          // rad/s
    std::vector<MomentSample> samples;

    static constexpr int kNumObservables = 16;
    static const char* observable_name(int k);
    cplx observable(int k, const MomentSample& s) const;
    std::vector<cplx> observable_series(int k) const;
};

// Coupling matrix at gauge angle spec.theta (forward: off-diagonals
// i kappa e^{i theta}, -i kappa e^{-i theta}; backward flips the second row signs).
CMat2 coupling_matrix(const CouplingSpec& spec, double varpi);

// Langevin noise matrix of the canonical (theta = 0) gauge:
//   N_F = sqrt(-(M_F + M_F*)) with * the entrywise conjugate;
//   N_B = diag(1,-1) N_F of the same medium.
// The principal branch is the single computational branch; alternative branch
// choices differ only by column sign flips and give the same covariances.
NoiseMatrices noise_matrices(const CouplingSpec& spec, double varpi);

// Vacuum-statistics covariances of F = n_r (f1, f2^dag) + n_i (f1^dag, f2).
ForcingCovariance forcing_covariance_macro(const NoiseMatrices& nm);

struct ForwardTransfer {
    CMat2 abcd;                             // e^{M_F L}
    std::function<CMat2(double)> kernel;    // z -> e^{M_F (L - z)}
};
ForwardTransfer transfer_forward(const CouplingSpec& spec, double varpi);

struct BackwardTransfer {
    CMat2 abcd;        // rearranged input->output map [[A,B],[C,D]]
    CMat2 prefactor;   // [[1,-B],[0,-D]] applied to the noise integral
    std::function<CMat2(double)> kernel;  // z -> e^{M_B (L - z)}
};
// Throws singular_boundary_error when |Dbar| < 1e-14 * scale (oscillation pole).
BackwardTransfer transfer_backward(const CouplingSpec& spec, double varpi);

// Propagate vacuum boundary inputs plus z-independent forcing through the
// medium; noise dropped in NoiseMode::nln. Output phases carry spec.theta via
// the exact gauge rotation; moduli and commutators are theta-independent.
MomentSample propagate_moments(const CouplingSpec& spec, const ForcingCovariance& forcing,
                               double varpi, NoiseMode mode = NoiseMode::full);

// Classify the effective Hamiltonian H = i m: PT when sx H* sx = H,
// APT when sx H* sx = -H (tolerance 1e-12 relative).
SymmetryClass classify_symmetry(const CMat2& m);

}  // namespace pcwave
