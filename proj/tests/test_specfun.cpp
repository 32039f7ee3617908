#include <doctest.h>

#include <cmath>
#include <random>

#include "cornerlayer/specfun.hpp"
#include "erfc_reference.hpp"

using namespace cornerlayer;

TEST_CASE("erfc: examples") {
    CHECK(cornerlayer::erfc(0.0) == 1.0);
    CHECK(cornerlayer::erfc(1.0) == doctest::Approx(0.15729920705028513).epsilon(1e-15));
    CHECK(cornerlayer::erfc(-1.0) == doctest::Approx(2.0 - cornerlayer::erfc(1.0)).epsilon(1e-15));
}

TEST_CASE("erfc: extended-precision reference table") {
    for (const auto& [z, ref] : kErfcReference) {
        CAPTURE(z);
        const double got = cornerlayer::erfc(z);
        CHECK(std::fabs(got - ref) <= 1e-13 * std::fabs(ref));
    }
}

TEST_CASE("erfc: reflection and tails") {
    for (double z = 0.0; z <= 6.0; z += 0.37) {
        CAPTURE(z);
        CHECK(std::fabs(cornerlayer::erfc(-z) - (2.0 - cornerlayer::erfc(z))) <= 4e-16);
    }
    CHECK(cornerlayer::erfc(40.0) == 0.0);
    CHECK(cornerlayer::erfc(-40.0) == 2.0);
    CHECK(cornerlayer::erfc(27.5) >= 0.0);
    CHECK(cornerlayer::erfc(27.5) < 1e-300);
}

TEST_CASE("erfc: monotone decreasing") {
    double prev = cornerlayer::erfc(-6.0);
    for (double z = -6.0 + 0.01; z <= 26.0; z += 0.01) {
        const double v = cornerlayer::erfc(z);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("params: positivity") {
    CHECK_THROWS_AS(SingularParams(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(SingularParams(1.0, -1.0), DomainError);
}

TEST_CASE("z0: boundary traces and conventions") {
    const SingularParams p(0.25, 1.5);
    for (double t : {1e-6, 0.01, 0.3, 1.0}) CHECK(z0(0.0, t, p) == doctest::Approx(std::exp(-1.5 * t / 0.25)).epsilon(1e-15));
    for (double x : {1e-9, 0.1, 1.0}) CHECK(z0(x, 0.0, p) == 0.0);
    CHECK(z0(0.0, 0.0, p) == 1.0);
    CHECK_THROWS_AS(z0(-0.1, 0.5, p), DomainError);
    CHECK_THROWS_AS(z0(0.1, -0.5, p), DomainError);
}

TEST_CASE("z0: product of the two reference values") {
    const SingularParams p(1.0, 1.0);
    // erfc(1/2) / e, evaluated at 40 digits
    CHECK(z0(1.0, 1.0, p) == doctest::Approx(0.17639823699177476).epsilon(1e-14));
}

TEST_CASE("z0: exponent underflow flushes to zero") {
    const SingularParams p(std::ldexp(1.0, -30), 1.0);
    CHECK(corner_decay(1.0, p) == 0.0);
    CHECK(z0(0.0, 1.0, p) == 0.0);
    CHECK(corner_decay(0.0, p) == 1.0);
}

TEST_CASE("z0: derivatives at x = 0") {
    const SingularParams p(0.5, 2.0);
    for (double t : {0.01, 0.2, 1.0}) {
        const Z0Derivatives d = z0_derivatives(0.0, t, p);
        CHECK(d.dx == doctest::Approx(-1.0 / std::sqrt(M_PI * t) * std::exp(-2.0 * t / 0.5)).epsilon(1e-14));
        CHECK(d.dxx == 0.0);
    }
    CHECK_THROWS_AS(z0_derivatives(0.1, 0.0, p), DomainError);
}

TEST_CASE("z0: derivatives agree with finite differences") {
    const SingularParams p(1.0, 1.0);
    const double h = 1e-3;
    for (double x : {0.05, 0.3, 0.8}) {
        for (double t : {0.1, 0.5}) {
            const Z0Derivatives d = z0_derivatives(x, t, p);
            auto f = [&](double xx) { return z0(xx, t, p); };
            auto dd = [&](double xx) { return z0_derivatives(xx, t, p).dxx; };
            CHECK(d.dx == doctest::Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-5));
            CHECK(d.dxx == doctest::Approx((f(x + h) - 2 * f(x) + f(x - h)) / (h * h)).epsilon(1e-4));
            CHECK(d.dxxx == doctest::Approx((dd(x + h) - dd(x - h)) / (2 * h)).epsilon(1e-4));
            CHECK(d.dxxxx == doctest::Approx((dd(x + h) - 2 * dd(x) + dd(x - h)) / (h * h)).epsilon(1e-3));
            const double k = 1e-5;
            const double dt_fd = (z0(x, t + k, p) - z0(x, t - k, p)) / (2 * k);
            CHECK(d.dt == doctest::Approx(dt_fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("z0: analytic residual of the defining equation") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double eps : {1.0, 1e-2, 1e-4}) {
        const SingularParams p(eps, 1.0);
        for (int k = 0; k < 100; ++k) {
            const double x = u(rng);
            const double t = 1e-3 + u(rng);
            const Z0Derivatives d = z0_derivatives(x, t, p);
            CHECK(std::fabs(eps * (d.dt - d.dxx) + p.b00 * z0(x, t, p)) <= 1e-10);
        }
    }
}

TEST_CASE("z0: nonincreasing in x") {
    const SingularParams p(0.01, 1.0);
    for (double t : {1e-4, 0.1, 1.0}) {
        double prev = z0(0.0, t, p);
        for (int i = 1; i <= 200; ++i) {
            const double v = z0(i / 200.0, t, p);
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("z1: closed form examples") {
    const SingularParams p(1.0, 1.0);
    for (double t : {0.0, 0.2, 1.0}) CHECK(z1_closed(0.0, t, p) == doctest::Approx(t * std::exp(-t)).epsilon(1e-15));
    for (double x : {0.0, 0.5, 1.0}) CHECK(z1_closed(x, 0.0, p) == 0.0);
    CHECK_THROWS_AS(z1_closed(-1.0, 0.5, p), DomainError);
    // 40-digit evaluation of the closed form at (0.3, 0.5)
    CHECK(z1_closed(0.3, 0.5, p) == doctest::Approx(0.18320877551826256).epsilon(1e-14));
}

TEST_CASE("z1: quadrature of the recurrence") {
    const SingularParams p(1.0, 1.0);
    CHECK(std::fabs(zn_quadrature(1, 0.3, 0.5, p, 1024) - z1_closed(0.3, 0.5, p)) <= 1e-8);
    for (double t : {0.1, 0.7}) CHECK(zn_quadrature(1, 0.0, t, p, 64) == doctest::Approx(t * std::exp(-t)).epsilon(1e-12));
    CHECK(zn_quadrature(1, 0.4, 0.0, p, 64) == 0.0);
    CHECK_THROWS_AS(zn_quadrature(3, 0.1, 0.1, p, 64), DomainError);
    CHECK_THROWS_AS(zn_quadrature(0, 0.1, 0.1, p, 64), DomainError);
}

TEST_CASE("z1: closed form satisfies the defining equation") {
    const SingularParams p(1.0, 1.0);
    const double h = 1e-4;
    for (double x : {0.1, 0.4, 0.9}) {
        for (double t : {0.2, 0.6}) {
            auto z = [&](double xx, double tt) { return z1_closed(xx, tt, p); };
            const double zt = (z(x, t + h) - z(x, t - h)) / (2 * h);
            const double zxx = (z(x + h, t) - 2 * z(x, t) + z(x - h, t)) / (h * h);
            CHECK(std::fabs(p.eps * zt - p.eps * zxx + p.b00 * z(x, t)) <= 1e-5);
        }
    }
}

TEST_CASE("v1: time derivative equals v0") {
    // v_n = exp(b00 t/eps) z_n; (v_1)_t = v_0
    const SingularParams p(1.0, 1.0);
    const double h = 1e-5;
    for (double x : {0.0, 0.2, 0.7}) {
        for (double t : {0.1, 0.5, 0.9}) {
            auto v1 = [&](double tt) { return std::exp(tt) * z1_closed(x, tt, p); };
            const double v0 = std::exp(t) * z0(x, t, p);
            CHECK((v1(t + h) - v1(t - h)) / (2 * h) == doctest::Approx(v0).epsilon(1e-7));
        }
    }
}

TEST_CASE("z2: quadrature boundary trace") {
    const SingularParams p(0.5, 1.0);
    for (double t : {0.1, 0.6}) CHECK(zn_quadrature(2, 0.0, t, p, 64) == doctest::Approx(t * t * std::exp(-t / 0.5)).epsilon(1e-10));
}

TEST_CASE("property: maximum-principle bound on z_n") {
    for (double eps : {1.0, 0.1, 1e-3}) {
        const SingularParams p(eps, 1.0);
        for (int i = 0; i <= 10; ++i) {
            for (int j = 0; j <= 10; ++j) {
                const double x = i / 10.0, t = j / 10.0;
                const double decay = corner_decay(t, p);
                CHECK(std::fabs(z0(x, t, p)) <= decay * (1 + 1e-15) + (t == 0.0 ? 1.0 : 0.0));
                CHECK(std::fabs(z1_closed(x, t, p)) <= t * decay * (1 + 1e-14));
                CHECK(std::fabs(zn_quadrature(1, x, t, p, 64)) <= t * decay * (1 + 1e-10));
            }
        }
        // the nested quadrature is expensive: a coarser sample for n = 2
        for (double x : {0.0, 0.05, 0.5})
            for (double t : {0.1, 0.5, 1.0}) CHECK(std::fabs(zn_quadrature(2, x, t, p, 64)) <= t * t * corner_decay(t, p) * (1 + 1e-10));
    }
}
