#pragma once

// Complementary error function and the corner-singular functions z_n(x,t),
// the solutions of
//
//   z_t - z_xx + (b00/eps) z = 0,   x, t > 0,
//   z(0,t) = t^n exp(-b00 t / eps), z(x,0) = 0.
//
// z_0(x,t) = exp(-b00 t/eps) erfc(x / (2 sqrt(t))).

#include <stdexcept>

namespace cornerlayer {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct SingularParams {
    double eps;  // singular perturbation parameter
    double b00;  // reaction coefficient at the corner (0,0)

    SingularParams(double eps_, double b00_);
};

double erfc(double z);

/// exp(-b00 t / eps), flushed to exactly 0 once the exponent drops below -745.
double corner_decay(double t, const SingularParams& p);

/// z0(0,0) is defined as 1, the limit along x = 0.
double z0(double x, double t, const SingularParams& p);

struct Z0Derivatives {
    double dx;
    double dxx;
    double dxxx;
    double dxxxx;
    double dt;
};

/// Closed-form x-derivatives of z0 up to fourth order, and z0_t = z0_xx - (b00/eps) z0.
Z0Derivatives z0_derivatives(double x, double t, const SingularParams& p);

/// z1 = exp(-b00 t/eps) [ (t + x^2/2) erfc(eta) - x sqrt(t/pi) exp(-eta^2) ],  eta = x/(2 sqrt t).
double z1_closed(double x, double t, const SingularParams& p);

/// z_n through the recurrence z_n = n * int_0^t z_{n-1}(x,s) exp(-b00 (t-s)/eps) ds,
/// evaluated by composite Gauss-Legendre quadrature, nested n times. n must be 1 or 2.
double zn_quadrature(int n, double x, double t, const SingularParams& p, int panels);

}  // namespace cornerlayer
