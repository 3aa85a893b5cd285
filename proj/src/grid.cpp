#include "dpm/grid.hpp"

#include <algorithm>
#include <ostream>

namespace dpm {

AuxiliaryGrid::AuxiliaryGrid(double x0, double x1, double y0, double y1,
                             int nnx, int nny)
    : xmin(x0), xmax(x1), ymin(y0), ymax(y1), nx(nnx), ny(nny) {
  DPM_REQUIRE(nx >= 3 && ny >= 3, "auxiliary grid too small");
  DPM_REQUIRE(xmax > xmin && ymax > ymin, "degenerate auxiliary rectangle");
  h();  // validates uniformity
}

double AuxiliaryGrid::h() const {
  const double hxv = hx(), hyv = hy();
  DPM_REQUIRE(std::abs(hxv - hyv) <= 1e-12 * std::max(hxv, hyv),
              "auxiliary grid spacing must be uniform in both axes");
  return hxv;
}

std::vector<int> AuxiliaryGrid::interior_nodes() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(nx - 2) * (ny - 2));
  for (int j = 1; j <= nx - 2; ++j)
    for (int k = 1; k <= ny - 2; ++k) out.push_back(id(j, k));
  return out;
}

std::function<bool(const Vec2&)> interior_membership(const Curve& curve,
                                                     double h) {
  const double tol = 1e-12 * h;
  const Curve* c = &curve;
  return [c, tol](const Vec2& p) {
    const double s = c->side_value(p);
    if (std::abs(s) < tol) {
      // razor-thin tie: resolve with the true signed distance
      return c->signed_distance(p) <= tol;
    }
    return s < 0.0;
  };
}

std::function<bool(const Vec2&)> exterior_membership(const Curve& curve,
                                                     double h) {
  auto inside = interior_membership(curve, h);
  return [inside](const Vec2& p) { return !inside(p); };
}

PointSets classify_points(const AuxiliaryGrid& grid,
                          const std::function<bool(const Vec2&)>& inside) {
  PointSets sets;
  // lexicographic by (j, k): j-major
  for (int j = 1; j <= grid.nx - 2; ++j) {
    for (int k = 1; k <= grid.ny - 2; ++k) {
      const int n = grid.id(j, k);
      if (inside(grid.node(j, k)))
        sets.m_plus.push_back(n);
      else
        sets.m_minus.push_back(n);
    }
  }
  sets.in_m_plus.assign(grid.total_nodes(), 0);
  for (int n : sets.m_plus) sets.in_m_plus[n] = 1;
  return sets;
}

namespace {

std::vector<int> stencil_union(const AuxiliaryGrid& grid,
                               const std::vector<int>& core,
                               StencilKind stencil) {
  const int r = stencil_radius(stencil);
  std::vector<uint8_t> mask(grid.total_nodes(), 0);
  auto add = [&](int j, int k) {
    if (j >= 0 && j < grid.nx && k >= 0 && k < grid.ny) mask[grid.id(j, k)] = 1;
  };
  for (int n : core) {
    const int j = grid.jx(n), k = grid.ky(n);
    add(j, k);
    for (int o = 1; o <= r; ++o) {
      add(j + o, k);
      add(j - o, k);
      add(j, k + o);
      add(j, k - o);
    }
  }
  std::vector<int> out;
  for (int j = 0; j < grid.nx; ++j)
    for (int k = 0; k < grid.ny; ++k)
      if (mask[grid.id(j, k)]) out.push_back(grid.id(j, k));
  return out;
}

}  // namespace

void build_stencil_sets(const AuxiliaryGrid& grid, PointSets& sets,
                        StencilKind stencil) {
  sets.n_plus = stencil_union(grid, sets.m_plus, stencil);
  sets.n_minus = stencil_union(grid, sets.m_minus, stencil);
  std::vector<uint8_t> plus(grid.total_nodes(), 0);
  for (int n : sets.n_plus) plus[n] = 1;
  sets.in_n_plus = plus;
  sets.gamma.clear();
  for (int n : sets.n_minus)
    if (plus[n]) sets.gamma.push_back(n);
  // stencil_union emits lexicographic (j-major) order already
  const int r = stencil_radius(stencil);
  for (int n : sets.gamma) {
    const int j = grid.jx(n), k = grid.ky(n);
    DPM_REQUIRE(j >= r && j <= grid.nx - 1 - r && k >= r && k <= grid.ny - 1 - r,
                "geometry clearance violated: the curve runs too close to the "
                "auxiliary rectangle edge");
  }
}

void attach_projections(const AuxiliaryGrid& grid, PointSets& sets,
                        const Curve& curve) {
  const int r_margin = 3;  // straddle layers sit within a few h of the curve
  const double dmax = r_margin * grid.h() * std::sqrt(2.0);
  sets.gamma_info.clear();
  sets.gamma_info.reserve(sets.gamma.size());
  for (int n : sets.gamma) {
    const Vec2 p = grid.node(n);
    const CurvePoint cp = curve.project(p);
    GammaInfo gi;
    gi.node = n;
    gi.position = p;
    gi.projection = cp.position;
    gi.d = curve.signed_distance(p);
    gi.theta = cp.arclength;
    gi.kappa = cp.curvature;
    gi.normal = cp.unit_normal;
    DPM_REQUIRE(std::abs(gi.d) <= dmax,
                "gamma node unexpectedly far from the curve");
    sets.gamma_info.push_back(gi);
  }
}

PointSets build_point_sets(const AuxiliaryGrid& grid, const Curve& curve,
                           bool curve_interior_side, StencilKind stencil) {
  auto inside = curve_interior_side ? interior_membership(curve, grid.h())
                                    : exterior_membership(curve, grid.h());
  PointSets sets = classify_points(grid, inside);
  build_stencil_sets(grid, sets, stencil);
  attach_projections(grid, sets, curve);
  return sets;
}

void dump_point_sets(std::ostream& out, const AuxiliaryGrid& grid,
                     const PointSets& sets) {
  std::vector<const char*> tag(grid.total_nodes(), "ring");
  for (int j = 1; j <= grid.nx - 2; ++j)
    for (int k = 1; k <= grid.ny - 2; ++k)
      tag[grid.id(j, k)] = sets.in_m_plus[grid.id(j, k)] ? "m_plus" : "m_minus";
  for (int n : sets.gamma) tag[n] = "gamma";
  out << "j,k,x,y,tag\n";
  for (int j = 0; j < grid.nx; ++j) {
    for (int k = 0; k < grid.ny; ++k) {
      const Vec2 p = grid.node(j, k);
      out << j << "," << k << "," << p.x << "," << p.y << ","
          << tag[grid.id(j, k)] << "\n";
    }
  }
}

}  // namespace dpm
