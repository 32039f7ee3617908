#include "cornerlayer/solver.hpp"

#include <cmath>
#include <random>

namespace cornerlayer {

GridFunction::GridFunction(std::shared_ptr<const TensorMesh> mesh)
    : mesh_(std::move(mesh)), values_(mesh_->node_count(), 0.0) {}

bool TridiagonalSystem::has_m_matrix_pattern() const {
    for (std::size_t r = 0; r < diag.size(); ++r) {
        if (sub[r] > 0.0 || super[r] > 0.0 || !(diag[r] > 0.0)) return false;
        if (!(diag[r] > std::fabs(sub[r]) + std::fabs(super[r]))) return false;
    }
    return true;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys) {
    const std::size_t n = sys.size();
    std::vector<double> x(n);
    if (n == 0) return x;
    std::vector<double> c(n);

    double pivot = sys.diag[0];
    if (!(pivot > 0.0)) throw NumericalBreakdown("nonpositive pivot in row 0");
    c[0] = sys.super[0] / pivot;
    x[0] = sys.rhs[0] / pivot;
    for (std::size_t r = 1; r < n; ++r) {
        pivot = sys.diag[r] - sys.sub[r] * c[r - 1];
        if (!(pivot > 0.0)) throw NumericalBreakdown("nonpositive pivot in row " + std::to_string(r));
        c[r] = sys.super[r] / pivot;
        x[r] = (sys.rhs[r] - sys.sub[r] * x[r - 1]) / pivot;
    }
    for (std::size_t r = n - 1; r-- > 0;) x[r] -= c[r] * x[r + 1];
    return x;
}

namespace {

// Builds level j from reaction and source sampled at the interior nodes
// (index r = i - 1) and the boundary values already stored in `current`.
void build_system(double eps, const TensorMesh& mesh, int j, std::span<const double> reaction,
                  std::span<const double> source, std::span<const double> prev, std::span<const double> current,
                  TridiagonalSystem& sys) {
    const int N = mesh.N();
    const std::size_t n = static_cast<std::size_t>(N - 1);
    sys.sub.resize(n);
    sys.diag.resize(n);
    sys.super.resize(n);
    sys.rhs.resize(n);

    const double mass = eps / mesh.k[static_cast<std::size_t>(j)];
    for (int i = 1; i < N; ++i) {
        const auto r = static_cast<std::size_t>(i - 1);
        const auto ui = static_cast<std::size_t>(i);
        const double lower = eps / (mesh.h[ui] * mesh.hbar[ui]);
        const double upper = eps / (mesh.h[ui + 1] * mesh.hbar[ui]);
        sys.sub[r] = -lower;
        sys.super[r] = -upper;
        sys.diag[r] = mass + lower + upper + reaction[r];
        sys.rhs[r] = source[r] + mass * prev[ui];
    }
    sys.rhs[0] -= sys.sub[0] * current[0];
    sys.sub[0] = 0.0;
    sys.rhs[n - 1] -= sys.super[n - 1] * current[static_cast<std::size_t>(N)];
    sys.super[n - 1] = 0.0;
}

// Shared marching loop. `fill(j, reaction, source, level)` samples the level's
// coefficients at interior nodes and writes the two boundary values into `level`.
template <class Fill>
GridFunction march(double eps, std::shared_ptr<const TensorMesh> mesh, std::span<const double> initial, Fill&& fill,
                   const std::function<void(int, const TridiagonalSystem&)>& observer) {
    GridFunction Y(mesh);
    const int N = mesh->N();
    const int M = mesh->M();
    if (N < 2) throw std::invalid_argument("solver needs at least one interior node");

    auto level0 = Y.level(0);
    std::copy(initial.begin(), initial.end(), level0.begin());

    std::vector<double> reaction(static_cast<std::size_t>(N - 1));
    std::vector<double> source(static_cast<std::size_t>(N - 1));
    TridiagonalSystem sys;
    for (int j = 1; j <= M; ++j) {
        auto current = Y.level(j);
        fill(j, std::span<double>(reaction), std::span<double>(source), current);
        build_system(eps, *mesh, j, reaction, source, Y.level(j - 1), current, sys);
        if (observer) observer(j, sys);
        const auto interior = thomas_solve(sys);
        std::copy(interior.begin(), interior.end(), current.begin() + 1);
    }
    return Y;
}

}  // namespace

TridiagonalSystem assemble_level(double eps, const TensorMesh& mesh, const LevelData& data, int j,
                                 std::span<const double> prev) {
    if (j < 1 || j > mesh.M()) throw std::out_of_range("assemble_level: time index out of range");
    const int N = mesh.N();
    const double t = mesh.t(j);
    std::vector<double> reaction(static_cast<std::size_t>(N - 1)), source(static_cast<std::size_t>(N - 1));
    for (int i = 1; i < N; ++i) {
        reaction[static_cast<std::size_t>(i - 1)] = data.reaction(mesh.x(i), t);
        source[static_cast<std::size_t>(i - 1)] = data.source(mesh.x(i), t);
    }
    std::vector<double> current(static_cast<std::size_t>(N) + 1, 0.0);
    current.front() = data.left(t);
    current.back() = data.right(t);
    TridiagonalSystem sys;
    build_system(eps, mesh, j, reaction, source, prev, current, sys);
    return sys;
}

namespace {

LevelData level_data_for(const YData& y) {
    LevelData data;
    data.reaction = [&y](double x, double t) { return y.problem().b(x, t); };
    data.source = [&y](double x, double t) { return y.rhs(x, t); };
    data.left = [&y](double t) { return y.left(t); };
    data.right = [&y](double t) { return y.right(t); };
    data.initial = [&y](double x) { return y.initial(x); };
    return data;
}

}  // namespace

TridiagonalSystem assemble_level(const ProblemSpec& p, const TensorMesh& mesh, double A0, int j,
                                 std::span<const double> prev) {
    const YData y(p, A0);
    return assemble_level(p.eps, mesh, level_data_for(y), j, prev);
}

GridFunction solve_linear(double eps, std::shared_ptr<const TensorMesh> mesh, const LevelData& data,
                          const std::function<void(int, const TridiagonalSystem&)>& observer) {
    const int N = mesh->N();
    std::vector<double> initial(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) initial[static_cast<std::size_t>(i)] = data.initial(mesh->x(i));
    const TensorMesh& m = *mesh;
    return march(
        eps, mesh, initial,
        [&](int j, std::span<double> reaction, std::span<double> source, std::span<double> level) {
            const double t = m.t(j);
            for (int i = 1; i < N; ++i) {
                reaction[static_cast<std::size_t>(i - 1)] = data.reaction(m.x(i), t);
                source[static_cast<std::size_t>(i - 1)] = data.source(m.x(i), t);
            }
            level.front() = data.left(t);
            level.back() = data.right(t);
        },
        observer);
}

GridFunction solve_y(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh,
                     const std::function<void(int, const TridiagonalSystem&)>& observer) {
    const YData y(p, amplitude_A0(p));
    const TensorMesh& m = *mesh;
    const int N = m.N();
    std::vector<double> initial(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) initial[static_cast<std::size_t>(i)] = y.initial(m.x(i));
    return march(
        p.eps, mesh, initial,
        [&](int j, std::span<double> reaction, std::span<double> source, std::span<double> level) {
            const double t = m.t(j);
            for (int i = 1; i < N; ++i) {
                const double x = m.x(i);
                const double bxt = p.b(x, t);
                reaction[static_cast<std::size_t>(i - 1)] = bxt;
                source[static_cast<std::size_t>(i - 1)] = y.rhs_given_b(x, t, bxt);
            }
            level.front() = y.left(t);
            level.back() = y.right(t);
        },
        observer);
}

GridFunction reconstruct_u(const GridFunction& Y, double A0, const ProblemSpec& p) {
    GridFunction U = Y;
    if (A0 == 0.0) return U;
    const SingularParams sp = p.singular();
    const TensorMesh& m = Y.mesh();
    for (int j = 0; j <= m.M(); ++j) {
        for (int i = 0; i <= m.N(); ++i) U(i, j) += A0 * z0(m.x(i), m.t(j), sp);
    }
    return U;
}

bool max_principle_probe(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh, int trials, unsigned seed) {
    const TensorMesh& m = *mesh;
    const int N = m.N();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int trial = 0; trial < trials; ++trial) {
        // Sparse data (about a third of entries zero) to exercise the sign pattern.
        auto sample = [&] {
            const double u = unit(rng);
            return u < 0.35 ? 0.0 : unit(rng) * std::pow(10.0, 4.0 * unit(rng) - 2.0);
        };
        std::vector<double> initial(static_cast<std::size_t>(N) + 1);
        for (double& v : initial) v = sample();
        const GridFunction Z = march(
            p.eps, mesh, initial,
            [&](int j, std::span<double> reaction, std::span<double> source, std::span<double> level) {
                const double t = m.t(j);
                for (int i = 1; i < N; ++i) {
                    reaction[static_cast<std::size_t>(i - 1)] = p.b(m.x(i), t);
                    source[static_cast<std::size_t>(i - 1)] = sample();
                }
                level.front() = sample();
                level.back() = sample();
            },
            {});
        for (double v : Z.values()) {
            if (!(v >= -1e-13)) return false;
        }
    }
    return true;
}

}  // namespace cornerlayer
