#include "pcwave/atomsfwm.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace pcwave {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kC0 = 299792458.0;  // m/s

using Matrix16 = Eigen::Matrix<cplx, 16, 16>;
using Vector16 = Eigen::Matrix<cplx, 16, 1>;

int idx(int j, int k) { return 4 * j + k; }

// Rotating-frame single-atom Hamiltonian matrix (quantum fields dropped).
std::array<std::array<cplx, 4>, 4> drive_op(const DriveParams& d, double varpi) {
    std::array<std::array<cplx, 4>, 4> o{};
    o[0][3] = -0.5 * d.omega_p;
    o[3][0] = -0.5 * std::conj(d.omega_p);
    o[1][2] = -0.5 * d.omega_c;
    o[2][1] = -0.5 * std::conj(d.omega_c);
    o[1][1] = cplx(-varpi, 0.0);
    o[2][2] = cplx(-varpi, 0.0);
    o[3][3] = cplx(-d.delta_p, 0.0);
    return o;
}

// Drift superoperator of d<sigma_jk>/dt = i(O s - s O)_jk + G(s)_jk, as a
// 16x16 matrix over the vectorized expectations s_{jk}.
Matrix16 drift_superop(const AtomicLevels& lv, const DriveParams& dr, double varpi) {
    const auto o = drive_op(dr, varpi);
    Matrix16 m = Matrix16::Zero();
    const cplx iu(0.0, 1.0);
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            const int r = idx(j, k);
            for (int a = 0; a < 4; ++a) {
                m(r, idx(a, k)) += iu * o[j][a];
                m(r, idx(j, a)) -= iu * o[a][k];
            }
            if (j == k) {
                if (j == 0) {
                    m(r, idx(2, 2)) += lv.gamma31;
                    m(r, idx(3, 3)) += lv.gamma41;
                } else if (j == 1) {
                    m(r, idx(2, 2)) += lv.gamma32;
                    m(r, idx(3, 3)) += lv.gamma42;
                } else if (j == 2) {
                    m(r, idx(2, 2)) -= lv.gamma3;
                } else {
                    m(r, idx(3, 3)) -= lv.gamma4;
                }
            } else {
                m(r, r) -= lv.deph[j][k];
            }
        }
    }
    return m;
}

// SFWM coherence-sector operator list: {12, 13, 42, 43} then flipped pairs.
constexpr int kOpsJK[DiffusionTensor::kOps][2] = {
    {0, 1}, {0, 2}, {3, 1}, {3, 2}, {1, 0}, {2, 0}, {1, 3}, {2, 3}};

}  // namespace

AtomicLevels AtomicLevels::rb85() {
    AtomicLevels lv;
    lv.gamma3 = kTwoPi * 6e6;
    lv.gamma4 = kTwoPi * 6e6;
    lv.gamma31 = 5.0 / 9.0 * lv.gamma3;
    lv.gamma32 = 4.0 / 9.0 * lv.gamma3;
    lv.gamma41 = 4.0 / 9.0 * lv.gamma4;
    lv.gamma42 = 5.0 / 9.0 * lv.gamma4;
    const double g = kTwoPi * 3e6;
    lv.deph[0][2] = lv.deph[2][0] = g;
    lv.deph[1][2] = lv.deph[2][1] = g;
    lv.deph[0][3] = lv.deph[3][0] = g;
    lv.deph[1][3] = lv.deph[3][1] = g;
    lv.deph[0][1] = lv.deph[1][0] = kTwoPi * 0.03e6;
    lv.deph[2][3] = lv.deph[3][2] = 0.5 * (lv.gamma3 + lv.gamma4);
    lv.omega13 = kTwoPi * kC0 / 795e-9;  // D1 line
    lv.omega24 = kTwoPi * kC0 / 780e-9;  // D2 line
    return lv;
}

void AtomicLevels::validate() const {
    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); };
    if (!near(gamma3, gamma31 + gamma32)) throw config_error("levels: Gamma3 != G31 + G32");
    if (!near(gamma4, gamma41 + gamma42)) throw config_error("levels: Gamma4 != G41 + G42");
    const double rates[] = {gamma3, gamma4, gamma31, gamma32, gamma41, gamma42};
    for (double r : rates)
        if (r < 0.0) throw config_error("levels: negative rate");
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            if (deph[j][k] < 0.0) throw config_error("levels: negative dephasing");
    if (!(omega13 > 0.0) || !(omega24 > 0.0)) throw config_error("levels: bad frequencies");
}

bool DriveParams::ground_state_ok(const AtomicLevels& levels) const {
    return std::abs(delta_p) > 10.0 * std::max(std::abs(omega_p), levels.gamma4);
}

void EnsembleParams::validate() const {
    if (!(od > 0.0)) throw config_error("ensemble: od must be > 0");
    if (!(length > 0.0)) throw config_error("ensemble: length must be > 0");
}

cplx SteadyState::trace() const {
    return sigma[0][0] + sigma[1][1] + sigma[2][2] + sigma[3][3];
}

SteadyState SteadyState::ground() {
    SteadyState s;
    s.sigma[0][0] = 1.0;
    return s;
}

SteadyState steady_state(const AtomicLevels& levels, const DriveParams& drive) {
    levels.validate();
    // The steady state is varpi independent: the detuning terms only rotate
    // coherences between the {1,4} and {2,3} sectors, which vanish here.
    const Matrix16 drift = drift_superop(levels, drive, 0.0);
    Matrix16 a = drift;
    Vector16 b = Vector16::Zero();
    for (int c = 0; c < 16; ++c) a(0, c) = 0.0;
    for (int m = 0; m < 4; ++m) a(0, idx(m, m)) = 1.0;  // trace constraint
    b(0) = 1.0;
    Eigen::FullPivLU<Matrix16> lu(a);
    Vector16 s;
    if (lu.isInvertible()) {
        s = lu.solve(b);
    } else {
        // With the pump off, population stranded in |2> makes the stationary
        // subspace two dimensional. Atoms are prepared in |1>, so pin the
        // spectator ground state empty and solve in the least-squares sense.
        Eigen::Matrix<cplx, 17, 16> aug;
        Eigen::Matrix<cplx, 17, 1> rhs;
        aug.topRows<16>() = a;
        rhs.topRows<16>() = b;
        aug.row(16).setZero();
        aug(16, idx(1, 1)) = 1.0;
        rhs(16) = 0.0;
        s = aug.colPivHouseholderQr().solve(rhs);
        const double resid = (drift * s).norm();
        if (resid > 1e-10 * drift.norm() * std::max(1.0, s.norm()))
            throw singular_drift_error("steady_state: constrained drift is rank deficient");
    }
    SteadyState out;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) out.sigma[j][k] = s(idx(j, k));
    return out;
}

cplx DiffusionTensor::antinormal(int r, int c) const {
    // rows {12, 42, 13, 43} -> op indices {0, 2, 1, 3}; cols {21, 24, 31, 34}
    // -> {4, 6, 5, 7}.
    static constexpr int rmap[4] = {0, 2, 1, 3};
    static constexpr int cmap[4] = {4, 6, 5, 7};
    return d[rmap[r]][cmap[c]];
}

cplx DiffusionTensor::normal(int r, int c) const {
    static constexpr int rmap[4] = {4, 6, 5, 7};
    static constexpr int cmap[4] = {0, 2, 1, 3};
    return d[rmap[r]][cmap[c]];
}

DiffusionTensor diffusion_tensor(const SteadyState& st, const AtomicLevels& lv) {
    const auto& s = st.sigma;
    const double g12 = lv.deph[0][1];
    DiffusionTensor t;
    auto set = [&t](int j, int k, int jp, int kp, cplx v) {
        int a = -1, b = -1;
        for (int i = 0; i < DiffusionTensor::kOps; ++i) {
            if (kOpsJK[i][0] == j && kOpsJK[i][1] == k) a = i;
            if (kOpsJK[i][0] == jp && kOpsJK[i][1] == kp) b = i;
        }
        t.d[a][b] = v;
    };
    // Anti-normally ordered block (0-based indices).
    set(0, 1, 1, 0, 2.0 * g12 * s[0][0] + lv.gamma31 * s[2][2] + lv.gamma41 * s[3][3]);
    set(0, 1, 1, 3, g12 * s[0][3]);
    set(3, 1, 1, 0, g12 * s[3][0]);
    set(0, 2, 2, 0, lv.gamma3 * s[0][0] + lv.gamma31 * s[2][2] + lv.gamma41 * s[3][3]);
    set(0, 2, 2, 3, lv.gamma3 * s[0][3]);
    set(3, 2, 2, 0, lv.gamma3 * s[3][0]);
    set(3, 2, 2, 3, lv.gamma3 * s[3][3]);
    // Normally ordered block.
    set(1, 0, 0, 1, 2.0 * g12 * s[1][1] + lv.gamma32 * s[2][2] + lv.gamma42 * s[3][3]);
    set(1, 0, 0, 2, g12 * s[1][2]);
    set(2, 0, 0, 1, g12 * s[2][1]);
    set(1, 3, 3, 1, lv.gamma4 * s[1][1] + lv.gamma32 * s[2][2] + lv.gamma42 * s[3][3]);
    set(1, 3, 3, 2, lv.gamma4 * s[1][2]);
    set(2, 3, 3, 1, lv.gamma4 * s[2][1]);
    set(2, 3, 3, 2, lv.gamma4 * s[2][2]);
    return t;
}

DiffusionTensor einstein_oracle(const SteadyState& st, const AtomicLevels& lv,
                                const DriveParams& dr) {
    const Matrix16 c = drift_superop(lv, dr, 0.0);
    Vector16 svec;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) svec(idx(j, k)) = st.sigma[j][k];
    const Vector16 ls = c * svec;

    DiffusionTensor t;
    for (int a = 0; a < DiffusionTensor::kOps; ++a) {
        const int j = kOpsJK[a][0], k = kOpsJK[a][1];
        for (int b = 0; b < DiffusionTensor::kOps; ++b) {
            const int jp = kOpsJK[b][0], kp = kOpsJK[b][1];
            cplx v = (k == jp) ? ls(idx(j, kp)) : cplx(0.0);
            // <A_jk sigma_j'k'> = sum_a c^{jk}_{a j'} s_{a k'}
            for (int q = 0; q < 4; ++q) v -= c(idx(j, k), idx(q, jp)) * st.sigma[q][kp];
            // <sigma_jk A_j'k'> = sum_b c^{j'k'}_{k b} s_{j b}
            for (int q = 0; q < 4; ++q) v -= c(idx(jp, kp), idx(k, q)) * st.sigma[j][q];
            t.d[a][b] = v;
        }
    }
    return t;
}

BetaCoefficients beta_coefficients(double varpi, const AtomicLevels& lv,
                                   const DriveParams& dr) {
    const double g12 = lv.deph[0][1];
    const double g13 = lv.deph[0][2];
    const double g24 = lv.deph[1][3];
    const double g34 = lv.deph[2][3];
    const cplx iu(0.0, 1.0);
    const cplx t = std::norm(dr.omega_c) - 4.0 * (varpi + iu * g13) * (varpi + iu * g12);
    const cplx dm24 = dr.delta_p - iu * g24;
    const cplx dm34 = dr.delta_p - iu * g34;
    BetaCoefficients out;
    out.t_of_varpi = t;
    out.beta_as[0] = 2.0 * iu * dr.omega_c / t;
    out.beta_as[1] = -4.0 * iu * (varpi + iu * g12) / t;
    out.beta_as[2] = -iu * dr.omega_c * dr.omega_p / (t * dm24);
    out.beta_as[3] = 2.0 * iu * dr.omega_p * (varpi + iu * g12) / (t * dm34);
    out.beta_s[0] = 2.0 * iu * (varpi + iu * g13) * std::conj(dr.omega_p) / (t * dm24);
    out.beta_s[1] = -iu * std::conj(dr.omega_p) * std::conj(dr.omega_c) / (t * dm24);
    out.beta_s[2] = -iu / dm24;
    out.beta_s[3] = -iu * std::conj(dr.omega_c) / (2.0 * dm24 * dm34);
    return out;
}

ForcingScales forcing_scales(const AtomicLevels& lv, const DriveParams& dr,
                             const EnsembleParams& en) {
    ForcingScales fs;
    fs.omega_as = lv.omega13;
    fs.omega_s = lv.omega24 + dr.delta_p;
    const double g13 = lv.deph[0][2];
    fs.eta_as = en.od * g13 / (2.0 * en.length);
    const double dipole_ratio = (lv.gamma42 / lv.gamma31) *
                                (lv.omega13 / lv.omega24) * (lv.omega13 / lv.omega24) *
                                (lv.omega13 / lv.omega24);
    fs.eta_s = fs.eta_as * dipole_ratio * (fs.omega_s / fs.omega_as);
    // Implied density through the Weisskopf-Wigner dipole of the 1-3 branch.
    const double hbar = 1.054571817e-34;
    const double eps0 = 8.8541878128e-12;
    const double mu13_sq = 3.0 * M_PI * eps0 * hbar * kC0 * kC0 * kC0 * lv.gamma31 /
                           (lv.omega13 * lv.omega13 * lv.omega13);
    const double p13 = fs.eta_as * 2.0 * kC0 * eps0 * hbar / fs.omega_as;  // n |mu13|^2
    fs.density = p13 / mu13_sq;
    return fs;
}

Susceptibilities susceptibilities(double varpi, const AtomicLevels& lv, const DriveParams& dr,
                                  const EnsembleParams& en) {
    const double g12 = lv.deph[0][1];
    const double g13 = lv.deph[0][2];
    const double g14 = lv.deph[0][3];
    const cplx iu(0.0, 1.0);
    const ForcingScales fs = forcing_scales(lv, dr, en);
    const cplx t = std::norm(dr.omega_c) - 4.0 * (varpi + iu * g13) * (varpi + iu * g12);

    Susceptibilities s;
    s.alpha_as = -4.0 * iu * fs.eta_as * (varpi + iu * g12) / t;
    s.alpha_s = -iu * fs.eta_s * (varpi - iu * g13) * std::norm(dr.omega_p) /
                (std::conj(t) * (dr.delta_p * dr.delta_p + g14 * g14));
    s.chi_as = 2.0 * iu * kC0 * s.alpha_as / fs.omega_as;
    s.chi_s = 2.0 * iu * kC0 * s.alpha_s / fs.omega_s;

    const cplx combo = dr.omega_p * dr.omega_c / (dr.delta_p + iu * g14);
    const double eta_x = std::sqrt(fs.eta_as * fs.eta_s);
    s.kappa = eta_x * std::abs(combo) / t;
    s.theta = std::arg(combo);
    s.kappa_as = s.kappa * std::exp(iu * s.theta);
    s.kappa_s = s.kappa * std::exp(-iu * s.theta);
    // Third-order response per unit pump-coupling field product.
    const double pre = 2.0 * kC0 / std::sqrt(fs.omega_as * fs.omega_s);
    s.chi3_as = pre * s.kappa_as;
    s.chi3_s = std::conj(pre * s.kappa_s);
    return s;
}

RabiParams rabi_params(const AtomicLevels& lv, const DriveParams& dr,
                       const EnsembleParams& en) {
    const double g12 = lv.deph[0][1];
    const double g13 = lv.deph[0][2];
    const double g14 = lv.deph[0][3];
    const double dg = g13 - g12;
    const double oc = std::abs(dr.omega_c);
    if (oc <= std::abs(dg))
        throw numeric_error("rabi_params: |omega_c| must exceed |g13 - g12|");
    RabiParams rp;
    rp.omega_e = std::sqrt(oc * oc - dg * dg);
    rp.gamma_e = 0.5 * (g12 + g13);
    const ForcingScales fs = forcing_scales(lv, dr, en);
    const double combo = std::abs(dr.omega_p * dr.omega_c / (dr.delta_p + cplx(0, 1) * g14));
    rp.j_amp = -std::sqrt(fs.eta_as * fs.eta_s) * combo / (4.0 * rp.omega_e);
    return rp;
}

CMat2 micro_coupling_matrix(double varpi, const AtomicLevels& lv, const DriveParams& dr,
                            const EnsembleParams& en, Geometry geometry) {
    const Susceptibilities s = susceptibilities(varpi, lv, dr, en);
    const cplx iu(0.0, 1.0);
    const cplx m11 = -s.alpha_as + 0.5 * iu * en.delta_k;
    if (geometry == Geometry::backward) {
        return {m11, iu * s.kappa, iu * s.kappa, std::conj(s.alpha_s) - 0.5 * iu * en.delta_k};
    }
    return {m11, iu * s.kappa, -iu * s.kappa, -std::conj(s.alpha_s) - 0.5 * iu * en.delta_k};
}

ForcingCovariance micro_forcing_covariance(double varpi, const AtomicLevels& lv,
                                           const DriveParams& dr, const EnsembleParams& en,
                                           const DiffusionTensor& dt, Geometry geometry) {
    const BetaCoefficients bc = beta_coefficients(varpi, lv, dr);
    const ForcingScales fs = forcing_scales(lv, dr, en);
    const double g14 = lv.deph[0][3];
    const cplx iu(0.0, 1.0);
    const double theta = std::arg(dr.omega_p * dr.omega_c / (dr.delta_p + iu * g14));
    // Mode 2 of the propagation vector is -F_s^dag backward, +F_s^dag forward.
    const double sg = (geometry == Geometry::backward) ? 1.0 : -1.0;
    const cplx g1 = iu * std::sqrt(fs.eta_as) * std::exp(-0.5 * iu * theta);
    const cplx g2 = sg * iu * std::sqrt(fs.eta_s) * std::exp(0.5 * iu * theta);
    const cplx gs[2] = {g1, g2};
    const std::array<cplx, 4>* betas[2] = {&bc.beta_as, &bc.beta_s};

    // Operator layout in DiffusionTensor: ops 0..3 = sigma_{12,13,42,43},
    // ops 4..7 their flips. flip(X) = X + 4.
    ForcingCovariance c = ForcingCovariance::zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx ffd = 0.0, fdf = 0.0, ff = 0.0, fdfd = 0.0;
            for (int x = 0; x < 4; ++x) {
                for (int y = 0; y < 4; ++y) {
                    const cplx bi = (*betas[i])[x];
                    const cplx bj = (*betas[j])[y];
                    ffd += bi * std::conj(bj) * dt.d[x][y + 4];
                    fdf += std::conj(bi) * bj * dt.d[x + 4][y];
                    ff += bi * bj * dt.d[x][y];
                    fdfd += std::conj(bi) * std::conj(bj) * dt.d[x + 4][y + 4];
                }
            }
            const cplx pff = gs[i] * std::conj(gs[j]);
            const cplx pdf = std::conj(gs[i]) * gs[j];
            const cplx paa = gs[i] * gs[j];
            auto put = [&](CMat2& m, cplx v) {
                if (i == 0 && j == 0) m.e11 = v;
                else if (i == 0 && j == 1) m.e12 = v;
                else if (i == 1 && j == 0) m.e21 = v;
                else m.e22 = v;
            };
            put(c.c_ff_dag, pff * ffd);
            put(c.c_fdag_f, pdf * fdf);
            put(c.c_ff, paa * ff);
            put(c.c_fdag_fdag, std::conj(paa) * fdfd);
        }
    }
    return c;
}

CouplingSpec micro_coupling_spec(const AtomicLevels& lv, const DriveParams& dr,
                                 const EnsembleParams& en, Geometry geometry) {
    CouplingSpec spec;
    spec.alpha1 = [lv, dr, en](double v) { return susceptibilities(v, lv, dr, en).alpha_as; };
    spec.alpha2 = [lv, dr, en](double v) { return susceptibilities(v, lv, dr, en).alpha_s; };
    spec.kappa = [lv, dr, en](double v) { return susceptibilities(v, lv, dr, en).kappa; };
    spec.delta_k = en.delta_k;
    spec.theta = susceptibilities(0.0, lv, dr, en).theta;
    spec.geometry = geometry;
    spec.length = en.length;
    return spec;
}

}  // namespace pcwave
