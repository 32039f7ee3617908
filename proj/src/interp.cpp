#include "cornerlayer/interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cornerlayer {

CellPosition locate(std::span<const double> nodes, double x) {
    const std::size_t n = nodes.size();
    if (n < 2 || !(x >= nodes.front()) || !(x <= nodes.back())) {
        throw OutOfDomain("point " + std::to_string(x) + " outside [" + std::to_string(nodes.front()) + ", " +
                          std::to_string(nodes.back()) + "]");
    }
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t c = static_cast<std::size_t>(it - nodes.begin());
    c = c == 0 ? 0 : c - 1;
    if (c >= n - 1) c = n - 2;
    const double w = (x - nodes[c]) / (nodes[c + 1] - nodes[c]);
    return {static_cast<int>(c), w};
}

namespace {

inline double blend(const GridFunction& Y, const CellPosition& px, const CellPosition& pt) {
    const int i = px.cell;
    const int j = pt.cell;
    const double wx = px.weight;
    const double wt = pt.weight;
    return (1.0 - wt) * ((1.0 - wx) * Y(i, j) + wx * Y(i + 1, j)) + wt * ((1.0 - wx) * Y(i, j + 1) + wx * Y(i + 1, j + 1));
}

std::vector<CellPosition> locate_all(std::span<const double> nodes, std::span<const double> points) {
    std::vector<CellPosition> out;
    out.reserve(points.size());
    for (double p : points) out.push_back(locate(nodes, p));
    return out;
}

void require_same_domain(const TensorMesh& a, const TensorMesh& b) {
    auto close = [](double u, double v) { return std::fabs(u - v) <= kUnionTolerance; };
    if (!close(a.x(0), b.x(0)) || !close(a.space.back(), b.space.back()) || !close(a.t(0), b.t(0)) ||
        !close(a.time.back(), b.time.back())) {
        throw DomainMismatch("meshes cover different domains");
    }
}

// The last coordinate of a merged axis may sit up to the dedup tolerance past
// the other mesh's endpoint; clamp it into both domains.
std::vector<double> clamp_to(std::vector<double> pts, std::span<const double> a, std::span<const double> b) {
    const double lo = std::max(a.front(), b.front());
    const double hi = std::min(a.back(), b.back());
    for (double& p : pts) p = std::clamp(p, lo, hi);
    return pts;
}

}  // namespace

double bilinear_eval(const GridFunction& Y, double x, double t) {
    const TensorMesh& m = Y.mesh();
    return blend(Y, locate(m.space.nodes, x), locate(m.time.nodes, t));
}

std::vector<double> merge_coordinates(std::span<const double> a, std::span<const double> b) {
    std::vector<double> all;
    all.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all));
    std::vector<double> out;
    out.reserve(all.size());
    for (double v : all) {
        if (out.empty() || v - out.back() > kUnionTolerance) out.push_back(v);
    }
    return out;
}

UnionGrid union_grid(const TensorMesh& a, const TensorMesh& b) {
    require_same_domain(a, b);
    return {merge_coordinates(a.space.nodes, b.space.nodes), merge_coordinates(a.time.nodes, b.time.nodes)};
}

double max_diff(const GridFunction& Ya, const GridFunction& Yb) {
    const TensorMesh& ma = Ya.mesh();
    const TensorMesh& mb = Yb.mesh();
    const UnionGrid grid = union_grid(ma, mb);
    const auto xs = clamp_to(grid.xs, ma.space.nodes, mb.space.nodes);
    const auto ts = clamp_to(grid.ts, ma.time.nodes, mb.time.nodes);

    const auto ax = locate_all(ma.space.nodes, xs);
    const auto bx = locate_all(mb.space.nodes, xs);
    const auto at = locate_all(ma.time.nodes, ts);
    const auto bt = locate_all(mb.time.nodes, ts);

    double worst = 0.0;
    for (std::size_t q = 0; q < ts.size(); ++q) {
        for (std::size_t p = 0; p < xs.size(); ++p) {
            const double d = std::fabs(blend(Ya, ax[p], at[q]) - blend(Yb, bx[p], bt[q]));
            if (d > worst || std::isnan(d)) worst = d;
        }
    }
    return worst;
}

GridFunction nodal_differences(const GridFunction& coarse, const GridFunction& fine) {
    const TensorMesh& mc = coarse.mesh();
    require_same_domain(mc, fine.mesh());
    const auto fx = locate_all(fine.mesh().space.nodes, mc.space.nodes);
    const auto ft = locate_all(fine.mesh().time.nodes, mc.time.nodes);
    GridFunction out(coarse.mesh_ptr());
    for (int j = 0; j <= mc.M(); ++j) {
        for (int i = 0; i <= mc.N(); ++i) {
            out(i, j) = std::fabs(coarse(i, j) - blend(fine, fx[static_cast<std::size_t>(i)], ft[static_cast<std::size_t>(j)]));
        }
    }
    return out;
}

}  // namespace cornerlayer
