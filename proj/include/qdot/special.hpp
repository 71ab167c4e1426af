// Special functions used by the closed-form quantum-dot solutions:
// Kummer M, Tricomi U, complex Gamma and the Bessel functions for the
// zero-field branch. Everything here is a pure function of its arguments.
#pragma once

#include <complex>

namespace qdot {

using Complex = std::complex<double>;

struct EvalControl {
    double rel_tol = 1e-13;
    int max_terms = 5000;
    int quad_points = 200;  // cap on adaptive quadrature panels

    void validate() const;
};

/// A complex number stored as mantissa * exp(log_scale). Used where the
/// magnitude of U overflows a double (very small field strengths).
struct ScaledComplex {
    Complex mantissa;
    double log_scale = 0.0;

    Complex value() const;
};

// --- Gamma ---------------------------------------------------------------

Complex log_gamma(Complex z);
Complex gamma_complex(Complex z);

// --- Kummer M(alpha, beta, xi), real parameters -------------------------

double kummer_m(double alpha, int beta, double xi, const EvalControl& ctrl = {});

/// dM/dxi = (alpha/beta) M(alpha+1, beta+1, xi).
double kummer_m_deriv(double alpha, int beta, double xi, const EvalControl& ctrl = {});

// --- Tricomi U(alpha, beta, z), complex alpha and z, integer beta -------

/// U(a,b,z), U(a,b+1,z) and their z-derivatives, evaluated together.
/// All four members share one log scale.
struct TricomiFamily {
    Complex u;          // U(a, b, z)
    Complex u_next;     // U(a, b+1, z)
    Complex du;         // dU(a, b, z)/dz   = -a U(a+1, b+1, z)
    Complex du_next;    // dU(a, b+1, z)/dz = -a U(a+1, b+2, z)
    double log_scale = 0.0;
};

TricomiFamily tricomi_family(Complex alpha, int beta, Complex z, const EvalControl& ctrl = {});

ScaledComplex tricomi_u_scaled(Complex alpha, int beta, Complex z, const EvalControl& ctrl = {});

Complex tricomi_u(Complex alpha, int beta, Complex z, const EvalControl& ctrl = {});

/// dU/dz = -alpha U(alpha+1, beta+1, z).
Complex tricomi_u_deriv(Complex alpha, int beta, Complex z, const EvalControl& ctrl = {});

// --- Bessel --------------------------------------------------------------

/// J_n(x) for n >= 0, x >= 0.
double bessel_j(int n, double x);

/// J_n(x) for any integer order, J_{-n} = (-1)^n J_n.
double bessel_j_signed(int n, double x);

/// K_n(z) for Re z > 0 via K_n(z) = sqrt(pi) (2z)^n e^{-z} U(n+1/2, 2n+1, 2z).
Complex bessel_k_complex(int n, Complex z, const EvalControl& ctrl = {});

}  // namespace qdot
