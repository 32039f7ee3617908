#include "cornerlayer/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace cornerlayer {

namespace {

using ext = long double;

constexpr ext kSqrtPiL = 1.772453850905516027298167483341145182798L;
constexpr double kUnderflowExponent = -745.0;

// exp(-z^2) with the rounding error of z*z carried into the exponent.
ext exp_minus_square(ext z) {
    const ext z2 = z * z;
    const ext err = std::fma(z, z, -z2);
    return std::exp(-z2) * std::exp(-err);
}

// erf(z) = 2/sqrt(pi) exp(-z^2) sum_n (2z^2)^n z / (2n+1)!!, all terms positive.
ext erf_series(ext z) {
    const ext two_z2 = 2 * z * z;
    ext term = z;
    ext sum = z;
    for (int n = 1; n < 200; ++n) {
        term *= two_z2 / (2 * n + 1);
        sum += term;
        if (term < sum * 1e-21L) break;
    }
    return 2 / kSqrtPiL * exp_minus_square(z) * sum;
}

// erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), modified Lentz.
ext erfc_continued_fraction(ext z) {
    constexpr ext tiny = 1e-300L;
    ext f = z;
    ext c = z;
    ext d = 0;
    for (int n = 1; n < 5000; ++n) {
        const ext a = static_cast<ext>(n) / 2;
        d = z + a * d;
        if (d == 0) d = tiny;
        c = z + a / c;
        if (c == 0) c = tiny;
        d = 1 / d;
        const ext delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1) < 1e-20L) break;
    }
    return exp_minus_square(z) / (kSqrtPiL * f);
}

ext erfc_nonnegative(ext z) {
    if (z <= 2) return 1 - erf_series(z);
    return erfc_continued_fraction(z);
}

struct GaussLegendre {
    static constexpr int kPoints = 8;
    std::array<double, kPoints> nodes{};    // on [-1, 1]
    std::array<double, kPoints> weights{};

    GaussLegendre() {
        for (int i = 0; i < kPoints; ++i) {
            ext x = std::cos(std::numbers::pi * (i + 0.75) / (kPoints + 0.5));
            ext dp = 0;
            for (int it = 0; it < 100; ++it) {
                ext p0 = 1, p1 = x;
                for (int k = 2; k <= kPoints; ++k) {
                    const ext p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kPoints * (x * p1 - p0) / (x * x - 1);
                const ext dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L) break;
            }
            nodes[static_cast<std::size_t>(i)] = static_cast<double>(x);
            weights[static_cast<std::size_t>(i)] = static_cast<double>(2 / ((1 - x * x) * dp * dp));
        }
    }
};

const GaussLegendre& gauss_legendre() {
    static const GaussLegendre rule;
    return rule;
}

template <class F>
double composite_gauss(F&& integrand, double a, double b, int panels) {
    if (b <= a) return 0.0;
    const auto& rule = gauss_legendre();
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * width;
        const double mid = lo + 0.5 * width;
        double panel = 0.0;
        for (int q = 0; q < GaussLegendre::kPoints; ++q) {
            panel += rule.weights[static_cast<std::size_t>(q)] * integrand(mid + 0.5 * width * rule.nodes[static_cast<std::size_t>(q)]);
        }
        total += 0.5 * width * panel;
    }
    return total;
}

void require_nonnegative(double x, double t, const char* who) {
    if (!(x >= 0.0) || !(t >= 0.0)) throw DomainError(std::string(who) + ": x and t must be nonnegative");
}

}  // namespace

SingularParams::SingularParams(double eps_, double b00_) : eps(eps_), b00(b00_) {
    if (!(eps > 0.0) || !(b00 > 0.0)) throw DomainError("SingularParams: eps and b00 must be positive");
}

double erfc(double z) {
    if (std::isnan(z)) return z;
    if (z < 0.0) return static_cast<double>(2 - erfc_nonnegative(-static_cast<ext>(z)));
    return static_cast<double>(erfc_nonnegative(z));
}

double corner_decay(double t, const SingularParams& p) {
    const double exponent = -p.b00 * t / p.eps;
    if (exponent < kUnderflowExponent) return 0.0;
    return std::exp(exponent);
}

double z0(double x, double t, const SingularParams& p) {
    require_nonnegative(x, t, "z0");
    if (t == 0.0) return x == 0.0 ? 1.0 : 0.0;
    const double decay = corner_decay(t, p);
    if (decay == 0.0) return 0.0;
    if (x == 0.0) return decay;
    return decay * erfc(x / (2.0 * std::sqrt(t)));
}

Z0Derivatives z0_derivatives(double x, double t, const SingularParams& p) {
    if (!(t > 0.0)) throw DomainError("z0_derivatives: t must be positive");
    if (!(x >= 0.0)) throw DomainError("z0_derivatives: x must be nonnegative");
    const double decay = corner_decay(t, p);
    const double gauss = std::exp(-x * x / (4.0 * t)) * decay;
    const double root = std::sqrt(std::numbers::pi * t);
    const double s = x * x / (2.0 * t);

    Z0Derivatives d{};
    d.dx = -gauss / root;
    d.dxx = x / (2.0 * t * root) * gauss;
    d.dxxx = (1.0 - s) / (2.0 * t * root) * gauss;
    d.dxxxx = -x / (4.0 * t * t * root) * (3.0 - s) * gauss;
    d.dt = d.dxx - p.b00 / p.eps * z0(x, t, p);
    return d;
}

double z1_closed(double x, double t, const SingularParams& p) {
    require_nonnegative(x, t, "z1_closed");
    if (t == 0.0) return 0.0;
    const double decay = corner_decay(t, p);
    if (decay == 0.0) return 0.0;
    const double sqrt_t = std::sqrt(t);
    const double eta = x / (2.0 * sqrt_t);
    const double v1 = (t + 0.5 * x * x) * erfc(eta) - x * sqrt_t / std::sqrt(std::numbers::pi) * std::exp(-eta * eta);
    return decay * v1;
}

double zn_quadrature(int n, double x, double t, const SingularParams& p, int panels) {
    if (n != 1 && n != 2) throw DomainError("zn_quadrature: n must be 1 or 2");
    if (panels < 1) throw DomainError("zn_quadrature: panels must be positive");
    require_nonnegative(x, t, "zn_quadrature");
    if (t == 0.0) return 0.0;

    auto relax = [&](double s) { return corner_decay(t - s, p); };
    if (n == 1) {
        return composite_gauss([&](double s) { return z0(x, s, p) * relax(s); }, 0.0, t, panels);
    }
    return 2.0 * composite_gauss([&](double s) { return zn_quadrature(1, x, s, p, panels) * relax(s); }, 0.0, t, panels);
}

}  // namespace cornerlayer
