#include "pcwave/mat2.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pcwave {

namespace {

double habs(cplx z) { return std::abs(z); }

// Canonical branch selection: an exactly-real eigenvalue must carry +0.0
// imaginary part so std::sqrt lands on the upper side of the cut.
cplx canonical(cplx z) {
    if (z.imag() == 0.0) return {z.real(), 0.0};
    return z;
}

}  // namespace

double CMat2::max_abs() const {
    return std::max(std::max(habs(e11), habs(e12)), std::max(habs(e21), habs(e22)));
}

bool CMat2::finite() const {
    auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(e11) && ok(e12) && ok(e21) && ok(e22);
}

CMat2 CMat2::conjugated() const {
    return {std::conj(e11), std::conj(e12), std::conj(e21), std::conj(e22)};
}

CMat2 CMat2::adjoint() const {
    return {std::conj(e11), std::conj(e21), std::conj(e12), std::conj(e22)};
}

CMat2 CMat2::real_part() const {
    return {e11.real(), e12.real(), e21.real(), e22.real()};
}

CMat2 CMat2::imag_part() const {
    return {e11.imag(), e12.imag(), e21.imag(), e22.imag()};
}

CMat2 CMat2::operator+(const CMat2& o) const {
    return {e11 + o.e11, e12 + o.e12, e21 + o.e21, e22 + o.e22};
}

CMat2 CMat2::operator-(const CMat2& o) const {
    return {e11 - o.e11, e12 - o.e12, e21 - o.e21, e22 - o.e22};
}

CMat2 CMat2::operator*(const CMat2& o) const {
    return {e11 * o.e11 + e12 * o.e21, e11 * o.e12 + e12 * o.e22,
            e21 * o.e11 + e22 * o.e21, e21 * o.e12 + e22 * o.e22};
}

CMat2 CMat2::operator*(cplx s) const { return {e11 * s, e12 * s, e21 * s, e22 * s}; }

CMat2 inverse(const CMat2& m) {
    const cplx d = m.det();
    if (std::abs(d) == 0.0) throw numeric_error("inverse: singular 2x2 matrix");
    const cplx inv = 1.0 / d;
    return {m.e22 * inv, -m.e12 * inv, -m.e21 * inv, m.e11 * inv};
}

Eig2 eig2(const CMat2& m) {
    if (!m.finite()) throw numeric_error("eig2: non-finite entries");
    const cplx mean = 0.5 * m.trace();
    const cplx disc = std::sqrt(canonical(mean * mean - m.det()));
    Eig2 out;
    out.lambda1 = mean + disc;
    out.lambda2 = mean - disc;

    const std::array<cplx, 2> lams{out.lambda1, out.lambda2};
    std::array<std::array<cplx, 2>, 2> cols{};
    for (int i = 0; i < 2; ++i) {
        // (m - l) v = 0: rows give v = (b, l-a) or (l-d, c); take the larger.
        const cplx u0 = m.e12, u1 = lams[i] - m.e11;
        const cplx w0 = lams[i] - m.e22, w1 = m.e21;
        const double nu = std::hypot(habs(u0), habs(u1));
        const double nw = std::hypot(habs(w0), habs(w1));
        cplx v0 = u0, v1 = u1;
        double nv = nu;
        if (nw > nu) {
            v0 = w0;
            v1 = w1;
            nv = nw;
        }
        if (nv < 1e-300) {
            v0 = (i == 0) ? 1.0 : 0.0;  // already diagonal
            v1 = (i == 0) ? 0.0 : 1.0;
            nv = 1.0;
        }
        cols[i] = {v0 / nv, v1 / nv};
    }
    out.vectors = {cols[0][0], cols[1][0], cols[0][1], cols[1][1]};
    const double scale = std::max(std::max(habs(out.lambda1), habs(out.lambda2)), 1.0);
    out.degenerate = habs(out.lambda1 - out.lambda2) < 1e-8 * scale;
    // A defective matrix yields parallel columns; treat that as degenerate too.
    if (!out.degenerate && std::abs(out.vectors.det()) < 1e-8) out.degenerate = true;
    return out;
}

CMat2 expm2(const CMat2& m, double s) {
    if (!m.finite()) throw numeric_error("expm2: non-finite entries");
    if (m.max_abs() * std::abs(s) > 700.0)
        throw overflow_error("expm2: |entry * s| exceeds exponent range (700)");
    const cplx mu = 0.5 * m.trace();
    const CMat2 d{m.e11 - mu, m.e12, m.e21, m.e22 - mu};
    const cplx delta2 = d.e11 * d.e11 + d.e12 * d.e21;  // d^2 = delta^2 I
    const cplx delta = std::sqrt(delta2);
    const cplx x = delta * s;
    cplx ch, sh_over_delta;
    if (std::abs(x) < 1e-4) {
        const cplx x2 = x * x;
        ch = 1.0 + x2 / 2.0 * (1.0 + x2 / 12.0);
        sh_over_delta = s * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0));
    } else {
        ch = std::cosh(x);
        sh_over_delta = std::sinh(x) / delta;
    }
    const cplx pre = std::exp(mu * s);
    return {pre * (ch + sh_over_delta * d.e11), pre * sh_over_delta * d.e12,
            pre * sh_over_delta * d.e21, pre * (ch + sh_over_delta * d.e22)};
}

CMat2 sqrtm2(const CMat2& m) {
    if (!m.finite()) throw numeric_error("sqrtm2: non-finite entries");
    const double scale = m.max_abs();
    if (scale == 0.0) return CMat2::zero();
    const cplx mean = 0.5 * m.trace();
    const cplx disc = std::sqrt(canonical(mean * mean - m.det()));
    const cplx r1 = std::sqrt(canonical(mean + disc));
    const cplx r2 = std::sqrt(canonical(mean - disc));
    const cplx t = r1 + r2;
    if (std::abs(t) < 1e-8 * std::sqrt(scale))
        throw defective_error("sqrtm2: nilpotent matrix has no primary square root");
    const cplx s = r1 * r2;
    const cplx inv = 1.0 / t;
    return {(m.e11 + s) * inv, m.e12 * inv, m.e21 * inv, (m.e22 + s) * inv};
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGl = 15;
constexpr double kGlX[kGl] = {
    0.0000000000000000,  -0.2011940939974345, 0.2011940939974345,  -0.3941513470775634,
    0.3941513470775634,  -0.5709721726085388, 0.5709721726085388,  -0.7244177313601700,
    0.7244177313601700,  -0.8482065834104272, 0.8482065834104272,  -0.9372733924007059,
    0.9372733924007059,  -0.9879925180204854, 0.9879925180204854};
constexpr double kGlW[kGl] = {
    0.2025782419255613, 0.1984314853271116, 0.1984314853271116, 0.1861610000155622,
    0.1861610000155622, 0.1662692058169939, 0.1662692058169939, 0.1395706779261543,
    0.1395706779261543, 0.1071592204671719, 0.1071592204671719, 0.0703660474881081,
    0.0703660474881081, 0.0307532419961173, 0.0307532419961173};

CMat2 gl_panel(const CMat2& ml, const CMat2& mr, const CMat2& c, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    CMat2 acc;
    for (int i = 0; i < kGl; ++i) {
        const double x = mid + half * kGlX[i];
        acc = acc + (expm2(ml, x) * c * expm2(mr, x)) * cplx(kGlW[i] * half, 0.0);
    }
    return acc;
}

CMat2 adaptive_gl(const CMat2& ml, const CMat2& mr, const CMat2& c, double a, double b,
                  const CMat2& whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const CMat2 left = gl_panel(ml, mr, c, a, mid);
    const CMat2 right = gl_panel(ml, mr, c, mid, b);
    const CMat2 sum = left + right;
    const double err = (sum - whole).max_abs();
    if (err <= tol || depth >= 24) return sum;
    return adaptive_gl(ml, mr, c, a, mid, left, 0.5 * tol, depth + 1) +
           adaptive_gl(ml, mr, c, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

CMat2 exp_pair_integral_quadrature(const CMat2& ml, const CMat2& mr, const CMat2& c, double L,
                                   double rel_tol) {
    const CMat2 whole = gl_panel(ml, mr, c, 0.0, L);
    const double tol = rel_tol * std::max(whole.max_abs(), c.max_abs() * L);
    return adaptive_gl(ml, mr, c, 0.0, L, whole, tol, 0);
}

CMat2 exp_pair_integral(const CMat2& ml, const CMat2& mr, const CMat2& c, double L) {
    const Eig2 el = eig2(ml);
    const Eig2 er = eig2(mr);
    if (el.degenerate || er.degenerate) return exp_pair_integral_quadrature(ml, mr, c, L);
    const CMat2 vl_inv = inverse(el.vectors);
    const CMat2 vr_inv = inverse(er.vectors);
    const CMat2 ct = vl_inv * c * er.vectors;
    const cplx ll[2] = {el.lambda1, el.lambda2};
    const cplx rr[2] = {er.lambda1, er.lambda2};
    cplx g[2][2];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cplx z = ll[i] + rr[j];
            const cplx factor = (std::abs(z) * L < 1e-10) ? cplx(L, 0.0)
                                                          : (std::exp(z * L) - 1.0) / z;
            const cplx cij = (i == 0) ? (j == 0 ? ct.e11 : ct.e12) : (j == 0 ? ct.e21 : ct.e22);
            g[i][j] = cij * factor;
        }
    }
    const CMat2 gm{g[0][0], g[0][1], g[1][0], g[1][1]};
    return el.vectors * gm * vr_inv;
}

CMat2 exp_moment_integral(const CMat2& m, const CMat2& c, double L) {
    return exp_pair_integral(m, m.adjoint(), c, L);
}

}  // namespace pcwave
