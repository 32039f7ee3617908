#include "cornerlayer/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

namespace cornerlayer {

SpaceTimeFn::SpaceTimeFn(std::string_view source) : expr_(parse(source, {"x", "t"})), source_(source) {}
TimeFn::TimeFn(std::string_view source) : expr_(parse(source, {"t"})), source_(source) {}
SpaceFn::SpaceFn(std::string_view source) : expr_(parse(source, {"x"})), source_(source) {}

namespace {

template <class Fn>
void assign_derivative(std::optional<Fn>& slot, const std::string& source) {
    slot.emplace(source);
}

void set_derivative(DerivativeData& d, const std::string& key, const std::string& source) {
    if (key == "gL_t") assign_derivative(d.gL_t, source);
    else if (key == "gL_tt") assign_derivative(d.gL_tt, source);
    else if (key == "gR_t") assign_derivative(d.gR_t, source);
    else if (key == "gR_tt") assign_derivative(d.gR_tt, source);
    else if (key == "phi_x") assign_derivative(d.phi_x, source);
    else if (key == "phi_xx") assign_derivative(d.phi_xx, source);
    else if (key == "phi_xxxx") assign_derivative(d.phi_xxxx, source);
    else if (key == "b_t") assign_derivative(d.b_t, source);
    else if (key == "b_x") assign_derivative(d.b_x, source);
    else if (key == "b_xx") assign_derivative(d.b_xx, source);
    else if (key == "b_xt") assign_derivative(d.b_xt, source);
    else if (key == "b_xxx") assign_derivative(d.b_xxx, source);
    else if (key == "f_t") assign_derivative(d.f_t, source);
    else if (key == "f_xx") assign_derivative(d.f_xx, source);
    else throw InvalidProblem("unknown derivative key '" + key + "'");
}

template <class Fn>
const Fn& need(const std::optional<Fn>& slot, const char* name) {
    if (!slot) throw MissingDerivative(name);
    return *slot;
}

bool relative_ok(double residual, double rhs) {
    return std::fabs(residual) <= kCompatibilityTolerance * (1.0 + std::fabs(rhs));
}

}  // namespace

double sampled_min_b(const SpaceTimeFn& b, double T, int n) {
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double t = T * static_cast<double>(j) / (n - 1);
            lo = std::min(lo, b(x, t));
        }
    }
    return lo;
}

double default_beta(const SpaceTimeFn& b, double T) { return 0.999 * sampled_min_b(b, T, 201); }

ProblemSpec make_problem(const ProblemSource& src) {
    if (!(src.eps > 0.0) || !std::isfinite(src.eps)) throw InvalidProblem("eps must be positive");
    if (!(src.T > 0.0) || !std::isfinite(src.T)) throw InvalidProblem("T must be positive");

    ProblemSpec p;
    p.eps = src.eps;
    p.T = src.T;
    p.b = SpaceTimeFn(src.b);
    p.f = SpaceTimeFn(src.f);
    p.gL = TimeFn(src.gL);
    p.gR = TimeFn(src.gR);
    p.phi = SpaceFn(src.phi);
    for (const auto& [key, source] : src.derivatives) set_derivative(p.d, key, source);

    p.beta = src.beta ? *src.beta : default_beta(p.b, p.T);
    if (!(p.beta > 0.0)) throw InvalidProblem("beta must be positive");
    const double bmin = sampled_min_b(p.b, p.T, 101);
    // beta may equal min b: the reference runs pin beta = b(0,0).
    if (bmin < p.beta) {
        throw InvalidProblem("sampled min of b (" + std::to_string(bmin) + ") is below beta (" + std::to_string(p.beta) + ")");
    }
    if (p.d.b_x && std::fabs((*p.d.b_x)(0.0, 0.0)) > 1e-12) throw InvalidProblem("b_x(0,0) must vanish");
    return p;
}

ProblemSpec with_eps(const ProblemSpec& p, double eps) {
    if (!(eps > 0.0)) throw InvalidProblem("eps must be positive");
    ProblemSpec q = p;
    q.eps = eps;
    return q;
}

ProblemSource example23_source(double eps) {
    ProblemSource s;
    s.eps = eps;
    s.beta = 1.0;
    s.T = 1.0;
    s.b = "1 + x^2 + t";
    s.f = "exp(-x)";
    s.phi = "1 - x";
    s.gL = "0";
    s.gR = "-t^2";
    s.derivatives = {
        {"gL_t", "0"},      {"gL_tt", "0"},   {"gR_t", "-2*t"},       {"gR_tt", "-2"},
        {"phi_x", "-1"},    {"phi_xx", "0"},  {"phi_xxxx", "0"},      {"b_t", "1"},
        {"b_x", "2*x"},     {"b_xx", "2"},    {"b_xt", "0"},          {"b_xxx", "0"},
        {"f_t", "0"},       {"f_xx", "exp(-x)"},
    };
    return s;
}

ProblemSpec example23(double eps, double beta) {
    ProblemSource s = example23_source(eps);
    s.beta = beta;
    return make_problem(s);
}

double parse_real_literal(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    const auto caret = text.find('^');
    if (caret != std::string_view::npos) {
        const auto base_text = trim(text.substr(0, caret));
        auto exp_text = trim(text.substr(caret + 1));
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        double base = 0.0;
        int exponent = 0;
        auto [p1, e1] = std::from_chars(base_text.data(), base_text.data() + base_text.size(), base);
        auto [p2, e2] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (e1 != std::errc() || p1 != base_text.data() + base_text.size() || e2 != std::errc() ||
            p2 != exp_text.data() + exp_text.size()) {
            throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        }
        if (base == 2.0) return std::ldexp(1.0, exponent);
        return std::pow(base, exponent);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    return v;
}

double amplitude_A0(const ProblemSpec& p) { return p.gL(0.0) - p.phi(0.0); }

double amplitude_A1(const ProblemSpec& p, double A0) {
    const double gL_t = need(p.d.gL_t, "gL_t")(0.0);
    const double phi_xx = need(p.d.phi_xx, "phi_xx")(0.0);
    const double b00 = p.b(0.0, 0.0);
    return gL_t - phi_xx + (b00 * (A0 + p.phi(0.0)) - p.f(0.0, 0.0)) / p.eps;
}

double amplitude_A2(const ProblemSpec& p, double A0, double A1) {
    const double eps = p.eps;
    const double gL_t = need(p.d.gL_t, "gL_t")(0.0);
    const double gL_tt = need(p.d.gL_tt, "gL_tt")(0.0);
    const double phi_xx = need(p.d.phi_xx, "phi_xx")(0.0);
    const double phi_xxxx = need(p.d.phi_xxxx, "phi_xxxx")(0.0);
    const double b_t = need(p.d.b_t, "b_t")(0.0, 0.0);
    const double b_xx = need(p.d.b_xx, "b_xx")(0.0, 0.0);
    const double f_t = need(p.d.f_t, "f_t")(0.0, 0.0);
    const double f_xx = need(p.d.f_xx, "f_xx")(0.0, 0.0);
    const double b00 = p.b(0.0, 0.0);
    const double phi0 = p.phi(0.0);

    // Second-order corner condition for y - A1 z1 - A2 z2 - A0 Psi, solved for A2
    // (the only A2 term is -2 eps A2).
    const double others = eps * (gL_tt - phi_xxxx) + (A1 + gL_t) * b00 - 2.0 * A0 * (b_t + b_xx) - A0 * b00 * b00 / eps +
                          b_t * (p.gL(0.0) - A0) + b_xx * phi0 + b00 * phi_xx;
    return (others - (f_t + f_xx)) / (2.0 * eps);
}

Amplitudes amplitudes(const ProblemSpec& p) {
    Amplitudes a;
    a.A0 = amplitude_A0(p);
    try {
        a.A1 = amplitude_A1(p, a.A0);
        a.A2 = amplitude_A2(p, a.A0, *a.A1);
    } catch (const MissingDerivative&) {
    }
    return a;
}

bool ConditionResult::satisfied() const { return residual && relative_ok(*residual, rhs); }

namespace {

// Evaluates `body` unless it needs missing derivative data, in which case the
// condition is reported as unavailable.
template <class Body>
ConditionResult condition(std::string name, Body&& body) {
    ConditionResult r;
    r.name = std::move(name);
    try {
        auto [lhs, rhs] = body();
        r.residual = lhs - rhs;
        r.rhs = rhs;
    } catch (const MissingDerivative& e) {
        r.missing.push_back(e.name());
    }
    return r;
}

}  // namespace

CompatibilityReport check_compatibility(const ProblemSpec& p) {
    const double eps = p.eps;
    const auto& d = p.d;
    CompatibilityReport r;

    r.level0_left = condition("level0 x=0", [&] { return std::pair{p.phi(0.0), p.gL(0.0)}; });
    r.level0_right = condition("level0 x=1", [&] { return std::pair{p.phi(1.0), p.gR(0.0)}; });

    r.first_left = condition("first-order x=0", [&] {
        const double lhs = eps * (need(d.gL_t, "gL_t")(0.0) - need(d.phi_xx, "phi_xx")(0.0)) + p.b(0.0, 0.0) * p.phi(0.0);
        return std::pair{lhs, p.f(0.0, 0.0)};
    });
    r.first_right = condition("first-order x=1", [&] {
        const double lhs = eps * (need(d.gR_t, "gR_t")(0.0) - need(d.phi_xx, "phi_xx")(1.0)) + p.b(1.0, 0.0) * p.gR(0.0);
        return std::pair{lhs, p.f(1.0, 0.0)};
    });

    r.second_left = condition("second-order x=0", [&] {
        const double b00 = p.b(0.0, 0.0);
        const double lhs = eps * need(d.gL_tt, "gL_tt")(0.0) + b00 * need(d.gL_t, "gL_t")(0.0) +
                           need(d.b_t, "b_t")(0.0, 0.0) * p.gL(0.0) - eps * need(d.phi_xxxx, "phi_xxxx")(0.0) +
                           2.0 * need(d.b_x, "b_x")(0.0, 0.0) * need(d.phi_x, "phi_x")(0.0) +
                           need(d.b_xx, "b_xx")(0.0, 0.0) * p.phi(0.0) + b00 * need(d.phi_xx, "phi_xx")(0.0);
        return std::pair{lhs, need(d.f_t, "f_t")(0.0, 0.0) + need(d.f_xx, "f_xx")(0.0, 0.0)};
    });
    r.second_right = condition("second-order x=1", [&] {
        const double lhs = eps * (need(d.gR_tt, "gR_tt")(0.0) - need(d.phi_xxxx, "phi_xxxx")(1.0)) +
                           p.b(1.0, 0.0) * (need(d.gR_t, "gR_t")(0.0) + need(d.phi_xx, "phi_xx")(1.0)) +
                           need(d.b_t, "b_t")(1.0, 0.0) * p.gR(0.0) +
                           2.0 * need(d.b_x, "b_x")(1.0, 0.0) * need(d.phi_x, "phi_x")(1.0) +
                           need(d.b_xx, "b_xx")(1.0, 0.0) * p.phi(1.0);
        return std::pair{lhs, need(d.f_t, "f_t")(1.0, 0.0) + need(d.f_xx, "f_xx")(1.0, 0.0)};
    });
    return r;
}

YData::YData(const ProblemSpec& p, double A0) : p_(p), A0_(A0), sp_(p.singular()) {}

double YData::rhs_given_b(double x, double t, double bxt) const {
    const double f = p_.f(x, t);
    if (A0_ == 0.0) return f;
    return f - A0_ * (bxt - sp_.b00) * z0(x, t, sp_);
}

double YData::left(double t) const { return p_.gL(t) - A0_ * (t == 0.0 ? 1.0 : corner_decay(t, sp_)); }

double YData::right(double t) const {
    const double g = p_.gR(t);
    return A0_ == 0.0 ? g : g - A0_ * z0(1.0, t, sp_);
}

YData y_data(const ProblemSpec& p, double A0) { return YData(p, A0); }

}  // namespace cornerlayer
