#include <doctest.h>

#include <cmath>

#include "cornerlayer/harness.hpp"

using namespace cornerlayer;

TEST_CASE("format: scientific") {
    CHECK(format_scientific(0.073596) == "7.360E-02");
    CHECK(format_scientific(3.287e-3) == "3.287E-03");
    CHECK(format_scientific(0.0099996) == "1.000E-02");
    CHECK(format_scientific(9.9999) == "1.000E+01");
    CHECK(format_scientific(1.0) == "1.000E+00");
    CHECK(format_scientific(0.0) == "0.000E+00");
    CHECK(format_scientific(-2.5e-7) == "-2.500E-07");
    CHECK(format_scientific(1.2345e-3) == "1.234E-03");  // half to even
    CHECK(format_scientific(1.2355e-3) == "1.236E-03");
}

TEST_CASE("format: fixed") {
    CHECK(format_fixed(1.2815) == "1.282");
    CHECK(format_fixed(1.2825) == "1.282");
    CHECK(format_fixed(0.5) == "0.500");
    CHECK(format_fixed(0.8514) == "0.851");
    CHECK(format_fixed(-0.0004) == "0.000");  // no sign on a value that rounds to zero
    CHECK(format_fixed(-1.2815) == "-1.282");
    CHECK(format_fixed(9.9996) == "10.000");
    CHECK(format_fixed(0.9996) == "1.000");
}

TEST_CASE("orders and uniform rows") {
    CHECK(orders({}).empty());
    CHECK(orders({1.0}).empty());
    const std::vector<double> q = orders({1.0, 0.5, 0.125});
    CHECK(q == std::vector<double>{1.0, 2.0});

    ConvergenceTable t;
    t.eps_exponents = {0, 1};
    t.Ns = {64, 128};
    t.Ms = {16, 32};
    t.D = {{1.0, 0.25}, {2.0, 0.125}};
    finalize_table(t);
    CHECK(t.uniform_D == std::vector<double>{2.0, 0.25});
    CHECK(t.uniform_Q == std::vector<double>{3.0});
    CHECK(t.Q[1] == std::vector<double>{4.0});
}

TEST_CASE("emit: empty table is a header") {
    ConvergenceTable t;
    t.Ns = {64};
    t.Ms = {16};
    finalize_table(t);
    const std::string csv = emit(t, TableFormat::Csv);
    CHECK(csv == "eps,D_N64_M16,Q_N64_M16\n");
}

TEST_CASE("emit: csv layout") {
    ConvergenceTable t;
    t.eps_exponents = {0, 3};
    t.Ns = {64, 128};
    t.Ms = {16, 32};
    t.D = {{0.0032874, 0.0018221}, {0.01266, 0.008951}};
    finalize_table(t);
    const std::string csv = emit(t, TableFormat::Csv);
    CHECK(csv.find("eps,D_N64_M16,Q_N64_M16,D_N128_M32,Q_N128_M32\n") == 0);
    CHECK(csv.find("\n2^-0,3.287E-03,0.851,1.822E-03,\n") != std::string::npos);
    CHECK(csv.find("\nuniform,1.266E-02,") != std::string::npos);
    const std::string pretty = emit(t, TableFormat::Pretty);
    CHECK(pretty.find("3.287E-03") != std::string::npos);
    CHECK(pretty.find("0.851") != std::string::npos);
}

TEST_CASE("table: one column has no orders") {
    TableOptions o;
    o.eps_exponents = {0, 12};
    o.Ns = {64};
    const ConvergenceTable t = build_table(example23(1.0), o);
    REQUIRE(t.D.size() == 2);
    CHECK(t.D[0].size() == 1);
    CHECK(t.Q[0].empty());
    CHECK(t.uniform_Q.empty());
    CHECK(t.Ms == std::vector<int>{16});
}

TEST_CASE("table: cell values and thread independence") {
    TableOptions o;
    o.eps_exponents = {0, 3, 12};
    o.Ns = {64, 128};
    o.threads = 1;
    const ConvergenceTable serial = build_table(example23(1.0), o);
    o.threads = 3;
    const ConvergenceTable parallel = build_table(example23(1.0), o);
    CHECK(serial.D == parallel.D);
    CHECK(format_scientific(serial.D[0][0]) == "3.287E-03");
    CHECK(format_fixed(serial.Q[0][0]) == "0.851");
    CHECK(format_scientific(serial.D[1][0]) == "1.266E-02");
    CHECK(format_scientific(serial.D[2][0]) == "7.352E-02");
    CHECK(two_mesh_cell(example23(std::ldexp(1.0, -3)), 64, 16) == serial.D[1][0]);
}

TEST_CASE("table: invalid sizes are rejected up front") {
    TableOptions o;
    o.eps_exponents = {0};
    o.Ns = {66};
    CHECK_THROWS_AS(build_table(example23(1.0), o), InvalidN);
    o.Ns = {64, 128};
    o.Ms = {16};
    CHECK_THROWS(build_table(example23(1.0), o));
}

TEST_CASE("two meshes: fine mesh keeps the coarse time transition") {
    const ProblemSpec p = example23(std::ldexp(1.0, -10));
    const auto [coarse, fine] = two_mesh_pair(p, 64, 16, FineTimeTransition::Coarse);
    CHECK(fine.tau == coarse.tau);
    CHECK(fine.N() == 128);
    CHECK(fine.M() == 32);
    CHECK(fine.sigma == space_transition(128, p.eps, p.beta));
    const auto [c2, own] = two_mesh_pair(p, 64, 16, FineTimeTransition::Own);
    CHECK(own.tau == time_transition(32, p.eps, p.beta, 1.0));
}

TEST_CASE("sweep") {
    const std::vector<int> s = full_eps_sweep();
    CHECK(s.size() == 31);
    CHECK(s.front() == 0);
    CHECK(s.back() == 30);
}
