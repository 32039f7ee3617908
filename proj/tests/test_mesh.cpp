#include <doctest.h>

#include <cmath>

#include "cornerlayer/mesh.hpp"

using namespace cornerlayer;

namespace {

void check_uniform_pieces(const Mesh1D& m, std::vector<int> breaks) {
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double h0 = m.nodes[static_cast<std::size_t>(breaks[p]) + 1] - m.nodes[static_cast<std::size_t>(breaks[p])];
        for (int i = breaks[p]; i < breaks[p + 1]; ++i) {
            const double h = m.nodes[static_cast<std::size_t>(i) + 1] - m.nodes[static_cast<std::size_t>(i)];
            CHECK(h == doctest::Approx(h0).epsilon(1e-12));
        }
    }
}

}  // namespace

TEST_CASE("space mesh: layer-resolving transition point") {
    const double eps = std::ldexp(1.0, -12);
    const Mesh1D m = space_mesh(64, eps, 1.0);
    // 2 sqrt(2^-12) ln 64 at 40 digits
    CHECK(m.transitions[0] == doctest::Approx(0.12996509635498973).epsilon(1e-15));
    CHECK(m.nodes[16] == m.transitions[0]);
    CHECK(m.nodes[48] == 1.0 - m.transitions[0]);
    CHECK(m.nodes.front() == 0.0);
    CHECK(m.nodes.back() == 1.0);
    check_uniform_pieces(m, {0, 16, 48, 64});
}

TEST_CASE("space mesh: clamp gives a uniform mesh") {
    const Mesh1D m = space_mesh(64, 1.0, 1.0);
    CHECK(m.transitions[0] == 0.25);
    for (int i = 0; i <= 64; ++i) CHECK(m.nodes[static_cast<std::size_t>(i)] == doctest::Approx(i / 64.0).epsilon(1e-15));
}

TEST_CASE("space mesh: invalid N") {
    CHECK_THROWS_AS(space_mesh(6, 1.0, 1.0), InvalidN);
    CHECK_THROWS_AS(space_mesh(4, 1.0, 1.0), InvalidN);
    CHECK_THROWS_AS(space_mesh(66, 1.0, 1.0), InvalidN);
    CHECK_THROWS(space_mesh(64, 0.0, 1.0));
}

TEST_CASE("time mesh: layer-resolving transition point") {
    const double eps = std::ldexp(1.0, -12);
    const Mesh1D m = time_mesh(16, eps, 1.0, 1.0);
    // 2^-12 ln 16 at 40 digits
    CHECK(m.transitions[0] == doctest::Approx(0.0006769015435155716).epsilon(1e-15));
    CHECK(m.nodes[8] == m.transitions[0]);
    CHECK(m.nodes.back() == 1.0);
    check_uniform_pieces(m, {0, 8, 16});
}

TEST_CASE("time mesh: clamp and general T") {
    const Mesh1D m = time_mesh(16, 1.0, 1.0, 1.0);
    CHECK(m.transitions[0] == 0.5);
    for (int j = 0; j <= 16; ++j) CHECK(m.nodes[static_cast<std::size_t>(j)] == doctest::Approx(j / 16.0).epsilon(1e-15));
    const Mesh1D m2 = time_mesh(16, 1.0, 1.0, 3.0);
    CHECK(m2.transitions[0] == 1.5);
    CHECK(m2.nodes.back() == 3.0);
}

TEST_CASE("time mesh: invalid M") {
    CHECK_THROWS_AS(time_mesh(7, 1.0, 1.0), InvalidM);
    CHECK_THROWS_AS(time_mesh(2, 1.0, 1.0), InvalidM);
    CHECK_THROWS(time_mesh(8, 1.0, 1.0, 0.0));
}

TEST_CASE("time mesh: explicit transition") {
    const Mesh1D m = time_mesh_with_transition(32, 0.01, 1.0);
    CHECK(m.nodes[16] == 0.01);
    check_uniform_pieces(m, {0, 16, 32});
    CHECK_THROWS(time_mesh_with_transition(32, 1.0, 1.0));
    CHECK_THROWS_AS(time_mesh_with_transition(31, 0.1, 1.0), InvalidM);
}

TEST_CASE("tensor: uniform case") {
    const TensorMesh m = tensor(uniform_mesh(4, 0.0, 1.0, MeshKind::Space), uniform_mesh(2, 0.0, 1.0, MeshKind::Time));
    CHECK(m.node_count() == 15);
    for (int i = 1; i < 4; ++i) CHECK(m.hbar[static_cast<std::size_t>(i)] == 0.25);
    CHECK(m.k[1] == 0.5);
}

TEST_CASE("tensor: averaged spacing at the transition") {
    const TensorMesh m = shishkin_mesh(8, 4, 1e-4, 1.0);
    const double fine = m.h[2];
    const double coarse = m.h[3];
    CHECK(fine < coarse);
    CHECK(m.hbar[2] == doctest::Approx((fine + coarse) / 2).epsilon(1e-15));
}

TEST_CASE("tensor: reference table pairing") {
    const TensorMesh m = shishkin_mesh(64, 16, std::ldexp(1.0, -3), 1.0);
    CHECK(m.N() == 64);
    CHECK(m.M() == 16);
    CHECK(m.node_count() == 65 * 17);
}

TEST_CASE("property: spacings sum to the domain length") {
    for (int N : {8, 64, 1024}) {
        for (double eps : {1.0, 1e-3, 1e-9}) {
            const TensorMesh m = shishkin_mesh(N, N / 4 < 4 ? 4 : N / 4, eps, 1.0, 2.0);
            double sx = 0.0, st = 0.0;
            for (int i = 1; i <= m.N(); ++i) sx += m.h[static_cast<std::size_t>(i)];
            for (int j = 1; j <= m.M(); ++j) st += m.k[static_cast<std::size_t>(j)];
            CHECK(std::fabs(sx - 1.0) <= 1e-14);
            CHECK(std::fabs(st - 2.0) <= 1e-14 * 2.0);
            CHECK(m.sigma <= 0.25);
            CHECK(m.tau <= 1.0);
        }
    }
}

TEST_CASE("property: fine and coarse spacings for small eps") {
    const int N = 256;
    const TensorMesh m = shishkin_mesh(N, 64, 1e-8, 1.0);
    CHECK(m.h[1] == doctest::Approx(4 * m.sigma / N).epsilon(1e-12));
    CHECK(m.h[N / 2] == doctest::Approx(2 * (1 - 2 * m.sigma) / N).epsilon(1e-12));
}

TEST_CASE("property: meshes are not nested across refinement") {
    const double eps = 1e-6;
    CHECK(space_transition(64, eps, 1.0) != space_transition(128, eps, 1.0));
}
