#pragma once

// Continuous problem
//
//   eps (u_t - u_xx) + b(x,t) u = f(x,t)   on (0,1) x (0,T]
//   u(0,t) = gL(t),  u(1,t) = gR(t),  u(x,0) = phi(x)
//
// with phi(0+) != gL(0) allowed. The corner jump is removed by writing
// u = A0 z0 + y, A0 = gL(0) - phi(0+), where y solves the same operator with
//
//   rhs(x,t) = f(x,t) - A0 (b(x,t) - b(0,0)) z0(x,t)
//   y(0,t)   = gL(t) - A0 exp(-b(0,0) t / eps)
//   y(1,t)   = gR(t) - A0 z0(1,t)
//   y(x,0)   = phi(x).

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cornerlayer/expr.hpp"
#include "cornerlayer/specfun.hpp"

namespace cornerlayer {

class InvalidProblem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MissingDerivative : public std::runtime_error {
public:
    explicit MissingDerivative(std::string name)
        : std::runtime_error("missing derivative expression '" + name + "'"), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Expression in (x, t).
class SpaceTimeFn {
public:
    SpaceTimeFn() = default;
    explicit SpaceTimeFn(std::string_view source);
    double operator()(double x, double t) const {
        const double slots[2] = {x, t};
        return expr_.evaluate(slots);
    }
    const Expression& expression() const noexcept { return expr_; }
    const std::string& source() const noexcept { return source_; }

private:
    Expression expr_;
    std::string source_;
};

/// Expression in t only.
class TimeFn {
public:
    TimeFn() = default;
    explicit TimeFn(std::string_view source);
    double operator()(double t) const {
        const double slots[1] = {t};
        return expr_.evaluate(slots);
    }
    const std::string& source() const noexcept { return source_; }

private:
    Expression expr_;
    std::string source_;
};

/// Expression in x only.
class SpaceFn {
public:
    SpaceFn() = default;
    explicit SpaceFn(std::string_view source);
    double operator()(double x) const {
        const double slots[1] = {x};
        return expr_.evaluate(slots);
    }
    const std::string& source() const noexcept { return source_; }

private:
    Expression expr_;
    std::string source_;
};

/// Optional derivative data, used only by amplitude and compatibility diagnostics.
struct DerivativeData {
    std::optional<TimeFn> gL_t, gL_tt, gR_t, gR_tt;
    std::optional<SpaceFn> phi_x, phi_xx, phi_xxxx;
    std::optional<SpaceTimeFn> b_t, b_x, b_xx, b_xt, b_xxx, f_t, f_xx;
};

/// Expression sources for a problem; the form read from JSON problem files.
struct ProblemSource {
    double eps = 1.0;
    std::optional<double> beta;  // defaults to 0.999 * sampled min of b
    double T = 1.0;
    std::string b, f, gL, gR, phi;
    // Keys: gL_t gL_tt gR_t gR_tt phi_x phi_xx phi_xxxx b_t b_x b_xx b_xt b_xxx f_t f_xx
    std::vector<std::pair<std::string, std::string>> derivatives;
};

struct ProblemSpec {
    double eps = 1.0;
    double beta = 1.0;
    double T = 1.0;
    SpaceTimeFn b, f;
    TimeFn gL, gR;
    SpaceFn phi;
    DerivativeData d;

    SingularParams singular() const { return {eps, b(0.0, 0.0)}; }
};

/// Parses every expression and checks the problem invariants.
/// Throws SyntaxError / UnknownVariable / InvalidProblem.
ProblemSpec make_problem(const ProblemSource& src);

/// Same data with a different eps (and optionally beta).
ProblemSpec with_eps(const ProblemSpec& p, double eps);

/// Minimum of b over an n x n grid on [0,1] x [0,T].
double sampled_min_b(const SpaceTimeFn& b, double T, int n);

/// Default beta: 0.999 * sampled min of b on a 201 x 201 grid.
double default_beta(const SpaceTimeFn& b, double T);

/// b = 1+x^2+t, f = exp(-x), phi = 1-x, gL = 0, gR = -t^2 on [0,1]^2, with all derivative data.
ProblemSource example23_source(double eps);
ProblemSpec example23(double eps, double beta = 1.0);

/// Accepts "2^-12", "2^3", or any decimal literal.
double parse_real_literal(std::string_view text);

struct Amplitudes {
    double A0 = 0.0;
    std::optional<double> A1;
    std::optional<double> A2;
};

double amplitude_A0(const ProblemSpec& p);
double amplitude_A1(const ProblemSpec& p, double A0);
double amplitude_A2(const ProblemSpec& p, double A0, double A1);

/// A0 always; A1 and A2 when the derivative data allows.
Amplitudes amplitudes(const ProblemSpec& p);

constexpr double kCompatibilityTolerance = 1e-10;

struct ConditionResult {
    std::string name;
    std::optional<double> residual;  // lhs - rhs; empty when derivative data is missing
    double rhs = 0.0;
    std::vector<std::string> missing;

    bool available() const { return residual.has_value(); }
    bool satisfied() const;
};

struct CompatibilityReport {
    ConditionResult level0_left;   // phi(0+) = gL(0)
    ConditionResult level0_right;  // phi(1-) = gR(0)
    ConditionResult first_left;    // eps (gL'(0) - phi''(0)) + b(0,0) phi(0) = f(0,0)
    ConditionResult first_right;   // eps (gR'(0) - phi''(1)) + b(1,0) gR(0) = f(1,0)
    ConditionResult second_left;   // expanded second-order condition at (0,0)
    ConditionResult second_right;  // second-order condition at (1,0)

    std::vector<const ConditionResult*> all() const {
        return {&level0_left, &level0_right, &first_left, &first_right, &second_left, &second_right};
    }
};

CompatibilityReport check_compatibility(const ProblemSpec& p);

/// Boundary, initial and source data of the transformed problem for y.
class YData {
public:
    YData(const ProblemSpec& p, double A0);

    double rhs(double x, double t) const { return rhs_given_b(x, t, p_.b(x, t)); }
    /// rhs when b(x,t) has already been evaluated.
    double rhs_given_b(double x, double t, double bxt) const;
    double left(double t) const;
    double right(double t) const;
    double initial(double x) const { return p_.phi(x); }

    double A0() const noexcept { return A0_; }
    const ProblemSpec& problem() const noexcept { return p_; }
    const SingularParams& singular() const noexcept { return sp_; }

private:
    ProblemSpec p_;
    double A0_;
    SingularParams sp_;
};

YData y_data(const ProblemSpec& p, double A0);

}  // namespace cornerlayer
