#pragma once

#include <memory>
#include <string>

#include "dpm/common.hpp"
#include "dpm/geometry.hpp"

namespace dpm {

enum class DomainKind { Single, Composite };

struct PointEval {
  double u = 0, ux = 0, uy = 0, ut = 0;
};

struct ForcingEval {
  double f = 0, fx = 0, fy = 0, ft = 0, fxx = 0, fxy = 0, fyy = 0;
};

struct JumpValues {
  double mu1 = 0, mu2 = 0;
};

/// A manufactured test problem: exact solution, diffusion, and the forcing
/// f = u_t − λΔu with every derivative the fourth-order extension needs.
/// Sides are 1-based: single-domain problems have one side (the disk);
/// composite problems use side 1 for the outer region and side 2 for the
/// disk, as in the interface conditions u1 − u2 = mu1,
/// λ1 ∂u1/∂n − λ2 ∂u2/∂n = mu2 with the shared disk-outward normal.
class TestProblem {
 public:
  virtual ~TestProblem() = default;

  virtual std::string id() const = 0;
  virtual DomainKind kind() const = 0;
  int num_sides() const { return kind() == DomainKind::Single ? 1 : 2; }
  bool side_is_curve_interior(int side) const {
    return kind() == DomainKind::Single ? true : side == 2;
  }

  virtual double lambda(int side, double t) const = 0;
  virtual double lambda_dot(int, double) const { return 0.0; }
  virtual bool lambda_time_dependent() const { return false; }

  virtual PointEval exact_eval(int side, double x, double y, double t) const = 0;
  virtual ForcingEval forcing_eval(int side, double x, double y, double t) const = 0;

  void check_side(int side) const {
    DPM_REQUIRE(side >= 1 && side <= num_sides(),
                "side index does not exist for this problem");
  }
  double exact(int side, double x, double y, double t) const {
    check_side(side);
    return exact_eval(side, x, y, t).u;
  }
  double forcing(int side, double x, double y, double t) const {
    check_side(side);
    return forcing_eval(side, x, y, t).f;
  }
  double exact_normal_derivative(int side, const Vec2& p, const Vec2& n,
                                 double t) const {
    check_side(side);
    const PointEval e = exact_eval(side, p.x, p.y, t);
    return e.ux * n.x + e.uy * n.y;
  }

  /// Interface jumps from the exact one-sided traces.
  JumpValues jumps(const CurvePoint& cp, double t) const;

  /// Preferred independent interface side (composite problems).
  virtual int default_independent_side() const { return 2; }
  /// Basis truncation resolving this problem's trace content.
  virtual int default_basis_modes() const { return 41; }
};

std::shared_ptr<TestProblem> make_problem(const std::string& id,
                                          bool tp3a_caption_lambda = false);

}  // namespace dpm
