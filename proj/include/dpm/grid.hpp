#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "dpm/common.hpp"
#include "dpm/geometry.hpp"

namespace dpm {

/// Uniform Cartesian lattice on the auxiliary rectangle. The interior nodes
/// (one layer in from every edge) carry the difference equations; the edge
/// ring carries closure/boundary data.
struct AuxiliaryGrid {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  int nx = 0, ny = 0;

  AuxiliaryGrid() = default;
  AuxiliaryGrid(double x0, double x1, double y0, double y1, int nnx, int nny);

  double hx() const { return (xmax - xmin) / (nx - 1); }
  double hy() const { return (ymax - ymin) / (ny - 1); }
  double h() const;

  int id(int j, int k) const { return k * nx + j; }
  int jx(int node) const { return node % nx; }
  int ky(int node) const { return node / nx; }
  Vec2 node(int j, int k) const {
    return {xmin + j * hx(), ymin + k * hy()};
  }
  Vec2 node(int id_) const { return node(jx(id_), ky(id_)); }
  int total_nodes() const { return nx * ny; }
  bool is_interior(int j, int k) const {
    return j >= 1 && j <= nx - 2 && k >= 1 && k <= ny - 2;
  }
  bool is_ring(int j, int k) const {
    return (j == 0 || j == nx - 1 || k == 0 || k == ny - 1);
  }
  /// Interior nodes in lexicographic (j, k) order: the equation set M0.
  std::vector<int> interior_nodes() const;
};

enum class StencilKind { FivePoint, NinePoint };

inline int stencil_radius(StencilKind s) {
  return s == StencilKind::FivePoint ? 1 : 2;
}

/// Per-gamma-node projection data onto the continuous curve.
struct GammaInfo {
  int node = 0;
  double d = 0.0;       // signed distance, positive outside
  double theta = 0.0;   // arclength of the orthogonal projection
  double kappa = 0.0;   // curvature at the projection
  Vec2 normal;          // shared outward normal at the projection
  Vec2 position;        // node coordinates
  Vec2 projection;      // orthogonal projection on the curve
};

struct PointSets {
  std::vector<int> m_plus, m_minus;       // partition of the interior nodes
  std::vector<int> n_plus, n_minus;       // stencil enlargements (in-lattice)
  std::vector<int> gamma;                 // N+ ∩ N−, lexicographic by (j, k)
  std::vector<GammaInfo> gamma_info;      // filled by attach_projections
  std::vector<uint8_t> in_m_plus;         // lattice mask
  std::vector<uint8_t> in_n_plus;         // lattice mask
};

/// Membership test with the closed-domain convention: nodes within
/// 1e−12·h of the curve belong to the enclosed side.
std::function<bool(const Vec2&)> interior_membership(const Curve& curve,
                                                     double h);
std::function<bool(const Vec2&)> exterior_membership(const Curve& curve,
                                                     double h);

/// Partitions the equation set of `grid` into (m_plus, m_minus).
PointSets classify_points(const AuxiliaryGrid& grid,
                          const std::function<bool(const Vec2&)>& inside);

/// Unions of finite-difference stencils over m_plus / m_minus, and their
/// intersection gamma. Throws if the curve runs too close to the rectangle
/// edge for the stencil to fit.
void build_stencil_sets(const AuxiliaryGrid& grid, PointSets& sets,
                        StencilKind stencil);

/// Enriches every gamma node with (d, theta, kappa, normal).
void attach_projections(const AuxiliaryGrid& grid, PointSets& sets,
                        const Curve& curve);

/// Convenience: classify + stencil sets + projections for one subdomain.
PointSets build_point_sets(const AuxiliaryGrid& grid, const Curve& curve,
                           bool curve_interior_side, StencilKind stencil);

/// Debug dump: one "j,k,x,y,tag" line per lattice node.
void dump_point_sets(std::ostream& out, const AuxiliaryGrid& grid,
                     const PointSets& sets);

}  // namespace dpm
