#pragma once

// Two-mesh convergence experiments.
//
//   D_eps^{N,M} = max over the union grid of |Ybar^{N,M} - Ybar^{2N,2M}|
//   Q_eps^{N,M} = log2(D_eps^{N,M} / D_eps^{2N,2M})
//   D^{N,M}     = max over eps of D_eps^{N,M},   Q^{N,M} = log2(D^{N,M} / D^{2N,2M})

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cornerlayer/problem.hpp"
#include "cornerlayer/solver.hpp"

namespace cornerlayer {

/// Time transition of the (2N,2M) mesh. The reference convergence table is
/// reproduced with Coarse: the fine mesh keeps tau = min(T/2, (eps/beta) ln M)
/// of the (N,M) mesh. Own recomputes tau with ln 2M. sigma is always per mesh.
enum class FineTimeTransition { Coarse, Own };

struct CellOptions {
    bool reconstructed = false;  // compare U = A0 z0 + Y instead of Y
    FineTimeTransition fine_tau = FineTimeTransition::Coarse;
};

/// The two meshes of a cell.
std::pair<TensorMesh, TensorMesh> two_mesh_pair(const ProblemSpec& p, int N, int M, FineTimeTransition fine_tau);

/// D for one (eps, N, M) cell.
double two_mesh_cell(const ProblemSpec& p, int N, int M, const CellOptions& options = {});

struct TableOptions {
    std::vector<int> eps_exponents;  // eps = 2^-k
    std::vector<int> Ns;
    std::vector<int> Ms;             // empty: M = N / m_divisor
    int m_divisor = 4;
    bool reconstructed = false;
    FineTimeTransition fine_tau = FineTimeTransition::Coarse;
    unsigned threads = 1;
    /// Called after each eps row completes (from worker threads, serialised).
    std::function<void(int eps_exponent, double seconds)> progress;
};

struct ConvergenceTable {
    std::vector<int> eps_exponents;
    std::vector<int> Ns;
    std::vector<int> Ms;
    std::vector<std::vector<double>> D;  // [eps][column]
    std::vector<std::vector<double>> Q;  // [eps][column], one fewer than columns
    std::vector<double> uniform_D;
    std::vector<double> uniform_Q;

    std::size_t columns() const { return Ns.size(); }
};

std::vector<double> orders(const std::vector<double>& differences);

/// Fills every cell; rows are computed as independent jobs and stored by index.
ConvergenceTable build_table(const ProblemSpec& p, const TableOptions& options);

/// Recomputes orders and uniform rows from D.
void finalize_table(ConvergenceTable& table);

enum class TableFormat { Csv, Pretty };

std::string emit(const ConvergenceTable& table, TableFormat format);

/// Scientific notation with `digits` decimals, round-half-even on the shortest decimal form: 0.073596 -> "7.360E-02".
std::string format_scientific(double v, int digits = 3);

/// Fixed notation with `decimals` decimals, round-half-even on the shortest decimal form: 1.2815 -> "1.282".
std::string format_fixed(double v, int decimals = 3);

/// 0..30, the dyadic sweep eps = 1, 1/2, ..., 2^-30.
std::vector<int> full_eps_sweep();

}  // namespace cornerlayer
