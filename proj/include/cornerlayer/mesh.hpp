#pragma once

// Piecewise-uniform Shishkin meshes.
//
// Space: [0,sigma] | [sigma,1-sigma] | [1-sigma,1] with N/4 : N/2 : N/4 cells,
//        sigma = min(1/4, 2 sqrt(eps/beta) ln N).
// Time:  [0,tau] | [tau,T] with M/2 : M/2 steps,
//        tau = min(T/2, (eps/beta) ln M).

#include <stdexcept>
#include <string>
#include <vector>

namespace cornerlayer {

class InvalidN : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidM : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class MeshKind { Space, Time };

struct Mesh1D {
    std::vector<double> nodes;
    std::vector<double> transitions;
    MeshKind kind = MeshKind::Space;

    int intervals() const { return static_cast<int>(nodes.size()) - 1; }
    double front() const { return nodes.front(); }
    double back() const { return nodes.back(); }
};

double space_transition(int N, double eps, double beta);
double time_transition(int M, double eps, double beta, double T);

Mesh1D space_mesh(int N, double eps, double beta);
Mesh1D time_mesh(int M, double eps, double beta, double T = 1.0);

/// Time mesh with a given transition point: M/2 steps on [0,tau] and M/2 on [tau,T].
Mesh1D time_mesh_with_transition(int M, double tau, double T = 1.0);

/// Uniform mesh on [a,b]; used by tests and as a baseline.
Mesh1D uniform_mesh(int intervals, double a, double b, MeshKind kind);

struct TensorMesh {
    Mesh1D space;
    Mesh1D time;
    double sigma = 0.0;
    double tau = 0.0;
    std::vector<double> h;     // h[i] = x_i - x_{i-1}, i = 1..N (h[0] unused)
    std::vector<double> hbar;  // hbar[i] = (h[i+1] + h[i]) / 2, i = 1..N-1
    std::vector<double> k;     // k[j] = t_j - t_{j-1}, j = 1..M (k[0] unused)

    int N() const { return space.intervals(); }
    int M() const { return time.intervals(); }
    double x(int i) const { return space.nodes[static_cast<std::size_t>(i)]; }
    double t(int j) const { return time.nodes[static_cast<std::size_t>(j)]; }
    double T() const { return time.nodes.back(); }
    std::size_t node_count() const { return space.nodes.size() * time.nodes.size(); }
};

TensorMesh tensor(Mesh1D space, Mesh1D time);

/// Shishkin tensor mesh for a problem with parameters (eps, beta) on [0,1]x[0,T].
TensorMesh shishkin_mesh(int N, int M, double eps, double beta, double T = 1.0);

/// One coordinate per line.
std::string mesh_csv(const Mesh1D& mesh);

}  // namespace cornerlayer
