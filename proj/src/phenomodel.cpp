#include "pcwave/phenomodel.hpp"

#include <cmath>

namespace pcwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx ci(double re = 0.0, double im = 0.0) { return {re, im}; }

// Canonical theta = 0 forward coupling matrix of the same medium.
CMat2 forward_matrix_theta0(const CouplingSpec& spec, double varpi) {
    const cplx a1 = spec.alpha1(varpi);
    const cplx a2 = spec.alpha2(varpi);
    const cplx k = spec.kappa(varpi);
    const cplx i = ci(0, 1);
    return {-a1 + 0.5 * i * spec.delta_k, i * k, -i * k, -std::conj(a2) - 0.5 * i * spec.delta_k};
}

CMat2 phase_sandwich(const CMat2& m, cplx p1, cplx p2) {
    // diag(p1,p2) m diag(q1,q2) with q = (p1*, p2*) patterns are all realized
    // by entrywise phase products below; keep the general helper simple.
    return {m.e11 * p1 * std::conj(p1), m.e12 * p1 * std::conj(p2),
            m.e21 * p2 * std::conj(p1), m.e22 * p2 * std::conj(p2)};
}

}  // namespace

CouplingSpec CouplingSpec::constants(cplx a1, cplx a2, double dk, cplx kap, double theta,
                                     Geometry g, double L) {
    CouplingSpec s;
    s.alpha1 = [a1](double) { return a1; };
    s.alpha2 = [a2](double) { return a2; };
    s.kappa = [kap](double) { return kap; };
    s.delta_k = dk;
    s.theta = theta;
    s.geometry = g;
    s.length = L;
    return s;
}

void CouplingSpec::validate() const {
    if (!(length > 0.0)) throw config_error("coupling spec: length must be > 0");
    if (!(std::abs(theta) <= kPi)) throw config_error("coupling spec: |theta| must be <= pi");
    if (!alpha1 || !alpha2 || !kappa) throw config_error("coupling spec: missing coefficient");
}

CMat2 coupling_matrix(const CouplingSpec& spec, double varpi) {
    const cplx a1 = spec.alpha1(varpi);
    const cplx a2 = spec.alpha2(varpi);
    const cplx k = spec.kappa(varpi);
    const cplx i = ci(0, 1);
    const cplx kp = k * std::exp(i * spec.theta);
    const cplx km = k * std::exp(-i * spec.theta);
    if (spec.geometry == Geometry::forward) {
        return {-a1 + 0.5 * i * spec.delta_k, i * kp, -i * km,
                -std::conj(a2) - 0.5 * i * spec.delta_k};
    }
    return {-a1 + 0.5 * i * spec.delta_k, i * kp, i * km,
            std::conj(a2) - 0.5 * i * spec.delta_k};
}

NoiseMatrices noise_matrices(const CouplingSpec& spec, double varpi) {
    const CMat2 mf = forward_matrix_theta0(spec, varpi);
    // Commutator deficit -(M + M*): real by construction.
    const CMat2 deficit = ((mf + mf.conjugated()) * cplx(-1.0, 0.0)).real_part();
    CMat2 n = sqrtm2(deficit);
    if (spec.geometry == Geometry::backward) {
        n.e21 = -n.e21;  // N_B = diag(1,-1) N_F
        n.e22 = -n.e22;
    }
    return {n.real_part(), n.imag_part()};
}

ForcingCovariance forcing_covariance_macro(const NoiseMatrices& nm) {
    const CMat2& r = nm.n_r;
    const CMat2& i = nm.n_i;
    // Column pairings under vacuum statistics <f f^dag> = delta, <f^dag f> = 0:
    //   <F F^dag> = r.col1 x r.col1 + i.col2 x i.col2, etc.
    auto outer = [](cplx a0, cplx a1, cplx b0, cplx b1) -> CMat2 {
        return {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
    };
    ForcingCovariance c;
    c.c_ff_dag = outer(r.e11, r.e21, r.e11, r.e21) + outer(i.e12, i.e22, i.e12, i.e22);
    c.c_fdag_f = outer(r.e12, r.e22, r.e12, r.e22) + outer(i.e11, i.e21, i.e11, i.e21);
    c.c_ff = outer(r.e11, r.e21, i.e11, i.e21) + outer(i.e12, i.e22, r.e12, r.e22);
    c.c_fdag_fdag = outer(i.e11, i.e21, r.e11, r.e21) + outer(r.e12, r.e22, i.e12, i.e22);
    return c;
}

ForwardTransfer transfer_forward(const CouplingSpec& spec, double varpi) {
    CouplingSpec canon = spec;
    canon.theta = 0.0;
    const CMat2 m = coupling_matrix(canon, varpi);
    const double L = spec.length;
    ForwardTransfer t;
    t.abcd = expm2(m, L);
    t.kernel = [m, L](double z) { return expm2(m, L - z); };
    return t;
}

BackwardTransfer transfer_backward(const CouplingSpec& spec, double varpi) {
    CouplingSpec canon = spec;
    canon.theta = 0.0;
    const CMat2 m = coupling_matrix(canon, varpi);
    const double L = spec.length;
    const CMat2 e = expm2(m, L);
    const cplx dbar = e.e22;
    if (std::abs(dbar) < 1e-14 * std::max(e.max_abs(), 1.0))
        throw singular_boundary_error("transfer_backward: |Dbar| below oscillation threshold");
    const cplx A = e.e11 - e.e12 * e.e21 / dbar;
    const cplx B = e.e12 / dbar;
    const cplx C = -e.e21 / dbar;
    const cplx D = 1.0 / dbar;
    BackwardTransfer t;
    t.abcd = {A, B, C, D};
    t.prefactor = {1.0, -B, 0.0, -D};
    t.kernel = [m, L](double z) { return expm2(m, L - z); };
    return t;
}

MomentSample propagate_moments(const CouplingSpec& spec, const ForcingCovariance& forcing,
                               double varpi, NoiseMode mode) {
    CouplingSpec canon = spec;
    canon.theta = 0.0;
    const CMat2 m = coupling_matrix(canon, varpi);
    const double L = spec.length;

    CMat2 tre, pre;
    if (spec.geometry == Geometry::forward) {
        tre = expm2(m, L);
        pre = CMat2::identity();
    } else {
        const BackwardTransfer bt = transfer_backward(spec, varpi);
        tre = bt.abcd;
        pre = bt.prefactor;
    }

    // Vacuum boundary inputs: <v v^dag> = diag(1,0), <v^dag v> = diag(0,1).
    MomentSample out;
    out.m_aad = tre * CMat2::diag(1.0, 0.0) * tre.adjoint();
    out.m_ada = tre.conjugated() * CMat2::diag(0.0, 1.0) * tre.transposed();
    out.m_aa = CMat2::zero();
    out.m_adad = CMat2::zero();

    if (mode == NoiseMode::full) {
        const CMat2 mc = m.conjugated();
        const CMat2 i_aad = exp_pair_integral(m, m.adjoint(), forcing.c_ff_dag, L);
        const CMat2 i_ada = exp_pair_integral(mc, m.transposed(), forcing.c_fdag_f, L);
        const CMat2 i_aa = exp_pair_integral(m, m.transposed(), forcing.c_ff, L);
        const CMat2 i_adad = exp_pair_integral(mc, m.adjoint(), forcing.c_fdag_fdag, L);
        const CMat2 pc = pre.conjugated();
        out.m_aad = out.m_aad + pre * i_aad * pre.adjoint();
        out.m_ada = out.m_ada + pc * i_ada * pre.transposed();
        out.m_aa = out.m_aa + pre * i_aa * pre.transposed();
        out.m_adad = out.m_adad + pc * i_adad * pre.adjoint();
    }

    if (spec.theta != 0.0) {
        // v -> diag(e^{i th/2}, e^{-i th/2}) v; pure output phases.
        const cplx p1 = std::exp(ci(0, 0.5 * spec.theta));
        const cplx p2 = std::conj(p1);
        out.m_aad = phase_sandwich(out.m_aad, p1, p2);
        out.m_ada = phase_sandwich(out.m_ada, std::conj(p1), std::conj(p2));
        auto both = [](const CMat2& m2, cplx q1, cplx q2) -> CMat2 {
            return {m2.e11 * q1 * q1, m2.e12 * q1 * q2, m2.e21 * q2 * q1, m2.e22 * q2 * q2};
        };
        out.m_aa = both(out.m_aa, p1, p2);
        out.m_adad = both(out.m_adad, std::conj(p1), std::conj(p2));
    }

    out.comm1 = (out.m_aad.e11 - out.m_ada.e11).real();
    out.comm2 = (out.m_ada.e22 - out.m_aad.e22).real();
    return out;
}

SymmetryClass classify_symmetry(const CMat2& m) {
    const cplx i = ci(0, 1);
    const CMat2 h = m * i;
    // sx H* sx swaps both indices and conjugates entrywise.
    const CMat2 g{std::conj(h.e22), std::conj(h.e21), std::conj(h.e12), std::conj(h.e11)};
    const double scale = std::max(h.max_abs(), 1e-300);
    if ((g - h).max_abs() <= 1e-12 * scale) return SymmetryClass::pt;
    if ((g + h).max_abs() <= 1e-12 * scale) return SymmetryClass::apt;
    return SymmetryClass::none;
}

const char* SecondMomentSpectra::observable_name(int k) {
    static const char* names[kNumObservables] = {
        "a1_a1d", "a1d_a1", "a2_a2d", "a2d_a2", "a1_a1",  "a1d_a1d", "a2_a2",  "a2d_a2d",
        "a1_a2",  "a2d_a1d", "a2_a1", "a1d_a2d", "a1_a2d", "a2_a1d", "a1d_a2", "a2d_a1"};
    return names[k];
}

cplx SecondMomentSpectra::observable(int k, const MomentSample& s) const {
    switch (k) {
        case 0: return s.a1_a1d();
        case 1: return s.a1d_a1();
        case 2: return s.a2_a2d();
        case 3: return s.a2d_a2();
        case 4: return s.a1_a1();
        case 5: return s.a1d_a1d();
        case 6: return s.a2_a2();
        case 7: return s.a2d_a2d();
        case 8: return s.a1_a2();
        case 9: return s.a2d_a1d();
        case 10: return s.a2_a1();
        case 11: return s.a1d_a2d();
        case 12: return s.a1_a2d();
        case 13: return s.a2_a1d();
        case 14: return s.a1d_a2();
        default: return s.a2d_a1();
    }
}

std::vector<cplx> SecondMomentSpectra::observable_series(int k) const {
    std::vector<cplx> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(observable(k, s));
    return out;
}

}  // namespace pcwave
