#include "cornerlayer/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace cornerlayer {

namespace {

void require_positive(double eps, double beta) {
    if (!(eps > 0.0) || !(beta > 0.0)) throw std::invalid_argument("eps and beta must be positive");
}

// Fills nodes[first..last] uniformly between a and b; both endpoints are stored verbatim.
void fill_uniform(std::vector<double>& nodes, int first, int last, double a, double b) {
    const int cells = last - first;
    const double length = b - a;
    nodes[static_cast<std::size_t>(first)] = a;
    for (int i = 1; i < cells; ++i) {
        nodes[static_cast<std::size_t>(first + i)] = a + length * (static_cast<double>(i) / cells);
    }
    nodes[static_cast<std::size_t>(last)] = b;
}

}  // namespace

double space_transition(int N, double eps, double beta) {
    require_positive(eps, beta);
    return std::min(0.25, 2.0 * std::sqrt(eps / beta) * std::log(static_cast<double>(N)));
}

double time_transition(int M, double eps, double beta, double T) {
    require_positive(eps, beta);
    return std::min(0.5 * T, eps / beta * std::log(static_cast<double>(M)));
}

Mesh1D space_mesh(int N, double eps, double beta) {
    if (N < 8 || N % 4 != 0) throw InvalidN("N must be a multiple of 4 and at least 8, got " + std::to_string(N));
    const double sigma = space_transition(N, eps, beta);
    const double right = 1.0 - sigma;

    Mesh1D mesh;
    mesh.kind = MeshKind::Space;
    mesh.nodes.resize(static_cast<std::size_t>(N) + 1);
    mesh.transitions = {sigma, right};
    fill_uniform(mesh.nodes, 0, N / 4, 0.0, sigma);
    fill_uniform(mesh.nodes, N / 4, 3 * N / 4, sigma, right);
    fill_uniform(mesh.nodes, 3 * N / 4, N, right, 1.0);
    return mesh;
}

Mesh1D time_mesh(int M, double eps, double beta, double T) {
    if (M < 4 || M % 2 != 0) throw InvalidM("M must be even and at least 4, got " + std::to_string(M));
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    return time_mesh_with_transition(M, time_transition(M, eps, beta, T), T);
}

Mesh1D time_mesh_with_transition(int M, double tau, double T) {
    if (M < 2 || M % 2 != 0) throw InvalidM("M must be even, got " + std::to_string(M));
    if (!(tau > 0.0) || !(tau < T)) throw std::invalid_argument("time transition must lie in (0, T)");

    Mesh1D mesh;
    mesh.kind = MeshKind::Time;
    mesh.nodes.resize(static_cast<std::size_t>(M) + 1);
    mesh.transitions = {tau};
    fill_uniform(mesh.nodes, 0, M / 2, 0.0, tau);
    fill_uniform(mesh.nodes, M / 2, M, tau, T);
    return mesh;
}

Mesh1D uniform_mesh(int intervals, double a, double b, MeshKind kind) {
    if (intervals < 1 || !(b > a)) throw std::invalid_argument("uniform_mesh: need intervals >= 1 and b > a");
    Mesh1D mesh;
    mesh.kind = kind;
    mesh.nodes.resize(static_cast<std::size_t>(intervals) + 1);
    fill_uniform(mesh.nodes, 0, intervals, a, b);
    return mesh;
}

TensorMesh tensor(Mesh1D space, Mesh1D time) {
    if (space.nodes.size() < 2 || time.nodes.size() < 2) throw std::invalid_argument("tensor: empty component mesh");
    TensorMesh m;
    m.space = std::move(space);
    m.time = std::move(time);
    m.sigma = m.space.transitions.empty() ? 0.25 : m.space.transitions.front();
    m.tau = m.time.transitions.empty() ? 0.5 * m.time.back() : m.time.transitions.front();

    const int N = m.N();
    const int M = m.M();
    m.h.assign(static_cast<std::size_t>(N) + 1, 0.0);
    m.hbar.assign(static_cast<std::size_t>(N) + 1, 0.0);
    m.k.assign(static_cast<std::size_t>(M) + 1, 0.0);
    for (int i = 1; i <= N; ++i) {
        m.h[static_cast<std::size_t>(i)] = m.x(i) - m.x(i - 1);
        if (!(m.h[static_cast<std::size_t>(i)] > 0.0)) throw std::invalid_argument("tensor: space nodes not increasing");
    }
    for (int i = 1; i < N; ++i) {
        m.hbar[static_cast<std::size_t>(i)] = 0.5 * (m.h[static_cast<std::size_t>(i) + 1] + m.h[static_cast<std::size_t>(i)]);
    }
    for (int j = 1; j <= M; ++j) {
        m.k[static_cast<std::size_t>(j)] = m.t(j) - m.t(j - 1);
        if (!(m.k[static_cast<std::size_t>(j)] > 0.0)) throw std::invalid_argument("tensor: time nodes not increasing");
    }
    return m;
}

TensorMesh shishkin_mesh(int N, int M, double eps, double beta, double T) {
    return tensor(space_mesh(N, eps, beta), time_mesh(M, eps, beta, T));
}

std::string mesh_csv(const Mesh1D& mesh) {
    std::string out;
    char buf[40];
    for (double v : mesh.nodes) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out += buf;
    }
    return out;
}

}  // namespace cornerlayer
