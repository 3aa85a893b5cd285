#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "dpm/grid.hpp"

using namespace dpm;

namespace {

std::set<std::pair<int, int>> as_jk(const AuxiliaryGrid& g,
                                    const std::vector<int>& nodes) {
  std::set<std::pair<int, int>> out;
  for (int n : nodes) out.insert({g.jx(n), g.ky(n)});
  return out;
}

}  // namespace

TEST_CASE("classification of the 3x3 interior against the unit disk") {
  // 5x5 lattice on [-2,2]^2: the equation set is the 3x3 block {-1,0,1}^2
  AuxiliaryGrid grid(-2, 2, -2, 2, 5, 5);
  Circle disk({0, 0}, 1.0);
  PointSets sets = classify_points(grid, interior_membership(disk, grid.h()));

  // on-curve nodes (±1,0),(0,±1) count as inside (closed disk)
  const std::set<std::pair<int, int>> expect_plus = {
      {2, 2}, {1, 2}, {3, 2}, {2, 1}, {2, 3}};
  const std::set<std::pair<int, int>> expect_minus = {
      {1, 1}, {1, 3}, {3, 1}, {3, 3}};
  CHECK(as_jk(grid, sets.m_plus) == expect_plus);
  CHECK(as_jk(grid, sets.m_minus) == expect_minus);

  SUBCASE("five-point stencil sets and gamma") {
    build_stencil_sets(grid, sets, StencilKind::FivePoint);
    // N+ covers the whole 3x3 equation block
    const auto nplus = as_jk(grid, sets.n_plus);
    for (const auto& jk : expect_plus) CHECK(nplus.count(jk) == 1);
    for (const auto& jk : expect_minus) CHECK(nplus.count(jk) == 1);
    // gamma = 4 corners plus the on-curve straddle set
    std::set<std::pair<int, int>> expect_gamma = expect_minus;
    expect_gamma.insert({1, 2});
    expect_gamma.insert({3, 2});
    expect_gamma.insert({2, 1});
    expect_gamma.insert({2, 3});
    CHECK(as_jk(grid, sets.gamma) == expect_gamma);
  }

  SUBCASE("nine-point gamma strictly contains the five-point gamma") {
    PointSets five = sets, nine = sets;
    build_stencil_sets(grid, five, StencilKind::FivePoint);
    // the wide stencil violates edge clearance on this tiny lattice,
    // so enumerate on a finer one
    AuxiliaryGrid g2(-2, 2, -2, 2, 17, 17);
    PointSets f2 = classify_points(g2, interior_membership(disk, g2.h()));
    PointSets n2 = f2;
    build_stencil_sets(g2, f2, StencilKind::FivePoint);
    build_stencil_sets(g2, n2, StencilKind::NinePoint);
    const auto gf = as_jk(g2, f2.gamma);
    const auto gn = as_jk(g2, n2.gamma);
    CHECK(gn.size() > gf.size());
    for (const auto& jk : gf) CHECK(gn.count(jk) == 1);
  }
}

TEST_CASE("degenerate classifications") {
  Circle disk({0, 0}, 1.0);
  {  // grid entirely inside the disk
    AuxiliaryGrid g(-0.5, 0.5, -0.5, 0.5, 9, 9);
    PointSets s = classify_points(g, interior_membership(disk, g.h()));
    CHECK(s.m_minus.empty());
    CHECK(s.m_plus.size() == 49);
  }
  {  // grid entirely outside the disk
    AuxiliaryGrid g(2.0, 3.0, 2.0, 3.0, 9, 9);
    PointSets s = classify_points(g, interior_membership(disk, g.h()));
    CHECK(s.m_plus.empty());
    CHECK(s.m_minus.size() == 49);
  }
}

TEST_CASE("clearance violation raises") {
  Circle disk({0, 0}, 1.0);
  AuxiliaryGrid g(-1.05, 1.05, -1.05, 1.05, 21, 21);
  PointSets s = classify_points(g, interior_membership(disk, g.h()));
  CHECK_THROWS(build_stencil_sets(g, s, StencilKind::NinePoint));
}

TEST_CASE("gamma projections") {
  Circle disk({0, 0}, 1.0);
  // h = 0.25; the node (1.25, 0) straddles the circle from outside
  AuxiliaryGrid g(-1.5, 1.5, -1.5, 1.5, 13, 13);
  PointSets s = build_point_sets(g, disk, true, StencilKind::FivePoint);
  REQUIRE(!s.gamma_info.empty());

  bool found_on_curve = false, found_off_curve = false;
  for (const auto& gi : s.gamma_info) {
    if (gi.position.x == 1.0 && gi.position.y == 0.0) {
      found_on_curve = true;
      CHECK(std::abs(gi.d) <= 1e-13);
      CHECK(gi.theta == doctest::Approx(0.0).epsilon(1e-13));
    }
    if (gi.position.x == 1.25 && gi.position.y == 0.0) {
      found_off_curve = true;
      CHECK(gi.d == doctest::Approx(0.25));
      CHECK(gi.theta == doctest::Approx(0.0).epsilon(1e-13));
      CHECK(gi.kappa == doctest::Approx(1.0));
    }
    CHECK((gi.position - (gi.projection + gi.d * gi.normal)).norm() <= 1e-10);
  }
  CHECK(found_on_curve);
  CHECK(found_off_curve);
}

TEST_CASE("implicit and explicit gamma data agree") {
  Circle disk({0, 0}, 1.0);
  auto ls = make_level_set_curve("unit-circle", 2, 241);
  AuxiliaryGrid g(-1.4, 1.4, -1.4, 1.4, 21, 21);
  PointSets a = build_point_sets(g, disk, true, StencilKind::FivePoint);
  PointSets b = build_point_sets(g, *ls, true, StencilKind::FivePoint);
  REQUIRE(a.gamma == b.gamma);
  for (size_t i = 0; i < a.gamma_info.size(); ++i) {
    CHECK(std::abs(a.gamma_info[i].d - b.gamma_info[i].d) <= 1e-8);
    double dth = std::abs(a.gamma_info[i].theta - b.gamma_info[i].theta);
    dth = std::min(dth, std::abs(dth - disk.total_length()));
    CHECK(dth <= 1e-8);
    CHECK(std::abs(a.gamma_info[i].kappa - b.gamma_info[i].kappa) <= 1e-8);
  }
}

TEST_CASE("deterministic ordering and gamma growth") {
  Circle disk({0, 0}, 1.0);
  AuxiliaryGrid g(-1.6, 1.6, -1.6, 1.6, 24, 24);
  PointSets a = build_point_sets(g, disk, true, StencilKind::FivePoint);
  PointSets b = build_point_sets(g, disk, true, StencilKind::FivePoint);
  CHECK(a.m_plus == b.m_plus);
  CHECK(a.gamma == b.gamma);
  CHECK(std::is_sorted(a.gamma.begin(), a.gamma.end(),
                       [&](int lhs, int rhs) {
                         return std::make_pair(g.jx(lhs), g.ky(lhs)) <
                                std::make_pair(g.jx(rhs), g.ky(rhs));
                       }));

  AuxiliaryGrid g2(-1.6, 1.6, -1.6, 1.6, 47, 47);
  PointSets fine = build_point_sets(g2, disk, true, StencilKind::FivePoint);
  CHECK(fine.gamma.size() <= 3 * a.gamma.size());
  CHECK(fine.gamma.size() >= a.gamma.size());
}

TEST_CASE("stencil enlargement stays within the exterior collar") {
  Circle disk({0, 0}, 1.0);
  for (auto stencil : {StencilKind::FivePoint, StencilKind::NinePoint}) {
    AuxiliaryGrid g(-1.6, 1.6, -1.6, 1.6, 33, 33);
    PointSets s = build_point_sets(g, disk, true, stencil);
    std::vector<uint8_t> in_m(g.total_nodes(), 0);
    for (int n : s.m_plus) in_m[n] = 1;
    const double width = stencil_radius(stencil) * g.h() * std::sqrt(2.0);
    for (int n : s.n_plus) {
      if (in_m[n]) continue;
      // N+ \ M+ is a collar of exterior nodes hugging the curve
      const double d = disk.signed_distance(g.node(n));
      CHECK(d > -1e-12);
      CHECK(d <= width + 1e-12);
    }
  }
}

TEST_CASE("exterior membership partitions the equation set") {
  Circle disk({0, 0}, 1.0);
  AuxiliaryGrid g(-2, 2, -2, 2, 25, 25);
  PointSets in = classify_points(g, interior_membership(disk, g.h()));
  PointSets out = classify_points(g, exterior_membership(disk, g.h()));
  CHECK(in.m_plus == out.m_minus);
  CHECK(in.m_minus == out.m_plus);
  CHECK(in.m_plus.size() + in.m_minus.size() ==
        static_cast<size_t>((g.nx - 2) * (g.ny - 2)));
}

TEST_CASE("point set dump") {
  Circle disk({0, 0}, 1.0);
  AuxiliaryGrid g(-1.6, 1.6, -1.6, 1.6, 12, 12);
  PointSets s = build_point_sets(g, disk, true, StencilKind::FivePoint);
  std::ostringstream out;
  dump_point_sets(out, g, s);
  const std::string text = out.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == g.total_nodes() + 1);
  CHECK(text.find("gamma") != std::string::npos);
  CHECK(text.find("m_plus") != std::string::npos);
}
