#pragma once

#include <complex>

#include "pcwave/errors.hpp"

namespace pcwave {

using cplx = std::complex<double>;

// Dense complex 2x2 matrix with value semantics. All entries must be finite.
struct CMat2 {
    cplx e11{}, e12{}, e21{}, e22{};

    static CMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static CMat2 zero() { return {}; }
    static CMat2 diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }

    cplx trace() const { return e11 + e22; }
    cplx det() const { return e11 * e22 - e12 * e21; }
    double max_abs() const;
    bool finite() const;

    CMat2 transposed() const { return {e11, e21, e12, e22}; }
    CMat2 conjugated() const;            // entrywise conjugation
    CMat2 adjoint() const;               // conjugate transpose
    CMat2 real_part() const;             // Re of each entry, as a CMat2
    CMat2 imag_part() const;

    CMat2 operator+(const CMat2& o) const;
    CMat2 operator-(const CMat2& o) const;
    CMat2 operator*(const CMat2& o) const;
    CMat2 operator*(cplx s) const;
    friend CMat2 operator*(cplx s, const CMat2& m) { return m * s; }
};

// Solve m x = b for 2-vectors; used by the eigenbasis transforms.
CMat2 inverse(const CMat2& m);

struct Eig2 {
    cplx lambda1{}, lambda2{};
    CMat2 vectors;    // unit eigenvector columns
    bool degenerate{false};
};

// Closed-form eigendecomposition. `degenerate` is set when
// |l1 - l2| < 1e-8 * max(|l1|, |l2|, 1); callers fall back to quadrature then.
Eig2 eig2(const CMat2& m);

// e^{m s} via trace split: m = mu I + d with tr d = 0, d^2 = delta^2 I.
// Throws overflow_error when any |entry * s| > 700.
CMat2 expm2(const CMat2& m, double s);

// Principal square root: each eigenvalue of the result lies in the closed
// right half-plane; the negative real axis maps onto the positive imaginary
// axis. Cayley-Hamilton form R = (m + sqrt(det) I) / (sqrt(l1) + sqrt(l2)).
// Throws defective_error when m is nilpotent but nonzero.
CMat2 sqrtm2(const CMat2& m);

// General pair integral J = int_0^L e^{ml s} c e^{mr s} ds, evaluated in the
// eigenbases of ml and mr with kernel (e^{(li+rj)L}-1)/(li+rj), the factor
// replaced by L when |li+rj| L < 1e-10. Falls back to adaptive Gauss-Legendre
// quadrature (1e-10 relative) when either eigenproblem is degenerate.
CMat2 exp_pair_integral(const CMat2& ml, const CMat2& mr, const CMat2& c, double L);

// int_0^L e^{m s} c e^{m^dag s} ds; the covariance-transport kernel.
CMat2 exp_moment_integral(const CMat2& m, const CMat2& c, double L);

// The quadrature route of the pair integral (adaptive Gauss-Legendre); also
// serves as the degenerate-eigenbasis fallback and the independent oracle.
CMat2 exp_pair_integral_quadrature(const CMat2& ml, const CMat2& mr, const CMat2& c, double L,
                                   double rel_tol = 1e-10);

}  // namespace pcwave
