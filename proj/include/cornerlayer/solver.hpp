#pragma once

// Backward-Euler / central-difference scheme for the transformed problem:
//
//   eps (Y_ij - Y_i,j-1)/k_j - eps delta_x^2 Y_ij + b(x_i,t_j) Y_ij = rhs(x_i,t_j)
//
// on a tensor Shishkin mesh, one tridiagonal solve per time level.

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "cornerlayer/mesh.hpp"
#include "cornerlayer/problem.hpp"

namespace cornerlayer {

class NumericalBreakdown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nodal values on a tensor mesh. values()[j*(N+1) + i] holds the value at (x_i, t_j).
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(std::shared_ptr<const TensorMesh> mesh);

    const TensorMesh& mesh() const { return *mesh_; }
    std::shared_ptr<const TensorMesh> mesh_ptr() const { return mesh_; }

    double& operator()(int i, int j) { return values_[index(i, j)]; }
    double operator()(int i, int j) const { return values_[index(i, j)]; }

    std::span<double> level(int j) {
        return {values_.data() + index(0, j), static_cast<std::size_t>(mesh_->N()) + 1};
    }
    std::span<const double> level(int j) const {
        return {values_.data() + index(0, j), static_cast<std::size_t>(mesh_->N()) + 1};
    }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * (static_cast<std::size_t>(mesh_->N()) + 1) + static_cast<std::size_t>(i);
    }

    std::shared_ptr<const TensorMesh> mesh_;
    std::vector<double> values_;
};

/// Interior equations i = 1..N-1 of one time level, stored 0-based.
/// sub[0] and super[n-1] are zero (boundary couplings are folded into rhs).
struct TridiagonalSystem {
    std::vector<double> sub, diag, super, rhs;

    std::size_t size() const { return diag.size(); }
    /// Off-diagonals nonpositive, diagonal positive and strictly dominant.
    bool has_m_matrix_pattern() const;
};

/// Solves a tridiagonal system. Throws NumericalBreakdown on a nonpositive pivot.
std::vector<double> thomas_solve(const TridiagonalSystem& sys);

/// Linear data for a level: the values of the reaction coefficient, source and
/// Dirichlet boundary at time t_j. Used by the generic marcher.
struct LevelData {
    std::function<double(double x, double t)> reaction;
    std::function<double(double x, double t)> source;
    std::function<double(double t)> left;
    std::function<double(double t)> right;
    std::function<double(double x)> initial;
};

/// Assembles level j (1 <= j <= M) given the previous level's full nodal values.
TridiagonalSystem assemble_level(double eps, const TensorMesh& mesh, const LevelData& data, int j,
                                 std::span<const double> prev);

/// Same, for the transformed problem of p with amplitude A0.
TridiagonalSystem assemble_level(const ProblemSpec& p, const TensorMesh& mesh, double A0, int j,
                                 std::span<const double> prev);

/// Marches all levels. `observer`, if set, sees every assembled system.
GridFunction solve_linear(double eps, std::shared_ptr<const TensorMesh> mesh, const LevelData& data,
                          const std::function<void(int j, const TridiagonalSystem&)>& observer = {});

/// Discrete solution Y of the transformed problem.
GridFunction solve_y(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh,
                     const std::function<void(int j, const TridiagonalSystem&)>& observer = {});

/// U = A0 z0 + Y at every node, z0(0,0) = 1.
GridFunction reconstruct_u(const GridFunction& Y, double A0, const ProblemSpec& p);

/// Solves with `trials` random nonnegative datasets; true iff every solution is >= -1e-13.
bool max_principle_probe(const ProblemSpec& p, std::shared_ptr<const TensorMesh> mesh, int trials = 20,
                         unsigned seed = 12345);

}  // namespace cornerlayer
