#pragma once

// Bilinear interpolation of grid functions and two-mesh comparisons.

#include <span>
#include <stdexcept>
#include <vector>

#include "cornerlayer/solver.hpp"

namespace cornerlayer {

class OutOfDomain : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class DomainMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cell index c and local coordinate w in [0,1] of a point in a sorted node set.
/// Cells are [x_c, x_{c+1}); the last cell is closed.
struct CellPosition {
    int cell;
    double weight;
};

CellPosition locate(std::span<const double> nodes, double x);

double bilinear_eval(const GridFunction& Y, double x, double t);

constexpr double kUnionTolerance = 1e-13;

struct UnionGrid {
    std::vector<double> xs;
    std::vector<double> ts;
};

/// Sorted merge of two coordinate sets; entries within 1e-13 of their predecessor are dropped.
std::vector<double> merge_coordinates(std::span<const double> a, std::span<const double> b);

UnionGrid union_grid(const TensorMesh& a, const TensorMesh& b);

/// max over the union grid of |Ya_bar - Yb_bar|.
double max_diff(const GridFunction& Ya, const GridFunction& Yb);

/// |Ycoarse(x_i,t_j) - Yfine_bar(x_i,t_j)| at the nodes of the coarse mesh.
GridFunction nodal_differences(const GridFunction& coarse, const GridFunction& fine);

/// Samples g at the nodes of `mesh`.
template <class F>
GridFunction sample(std::shared_ptr<const TensorMesh> mesh, F&& g) {
    GridFunction Y(mesh);
    for (int j = 0; j <= mesh->M(); ++j) {
        for (int i = 0; i <= mesh->N(); ++i) Y(i, j) = g(mesh->x(i), mesh->t(j));
    }
    return Y;
}

}  // namespace cornerlayer
