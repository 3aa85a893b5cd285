#include "dpm/problems.hpp"

namespace dpm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

JumpValues TestProblem::jumps(const CurvePoint& cp, double t) const {
  DPM_REQUIRE(kind() == DomainKind::Composite,
              "jumps are defined for composite problems only");
  const PointEval e1 = exact_eval(1, cp.position.x, cp.position.y, t);
  const PointEval e2 = exact_eval(2, cp.position.x, cp.position.y, t);
  JumpValues j;
  j.mu1 = e1.u - e2.u;
  j.mu2 = lambda(1, t) * (e1.ux * cp.unit_normal.x + e1.uy * cp.unit_normal.y) -
          lambda(2, t) * (e2.ux * cp.unit_normal.x + e2.uy * cp.unit_normal.y);
  return j;
}

namespace {

// u = x^9 y^8 e^{-t}; shared by the two single-domain problems
PointEval poly98_exact(double x, double y, double t) {
  const double et = std::exp(-t);
  const double x8 = std::pow(x, 8), y7 = std::pow(y, 7);
  PointEval e;
  e.u = x8 * x * y7 * y * et;
  e.ux = 9.0 * x8 * y7 * y * et;
  e.uy = 8.0 * x8 * x * y7 * et;
  e.ut = -e.u;
  return e;
}

class Tp1a final : public TestProblem {
 public:
  std::string id() const override { return "tp1a"; }
  DomainKind kind() const override { return DomainKind::Single; }
  double lambda(int, double) const override { return 1.0; }

  PointEval exact_eval(int, double x, double y, double t) const override {
    return poly98_exact(x, y, t);
  }

  ForcingEval forcing_eval(int, double x, double y, double t) const override {
    const double et = std::exp(-t);
    const double x5 = std::pow(x, 5), y4 = std::pow(y, 4);
    const double x6 = x5 * x, x7 = x6 * x, x8 = x7 * x, x9 = x8 * x;
    const double y5 = y4 * y, y6 = y5 * y, y7 = y6 * y, y8 = y7 * y;
    ForcingEval f;
    // f = -e^{-t} (x^9 y^8 + 72 x^7 y^8 + 56 x^9 y^6)
    f.f = -et * (x9 * y8 + 72.0 * x7 * y8 + 56.0 * x9 * y6);
    f.fx = -et * (9.0 * x8 * y8 + 504.0 * x6 * y8 + 504.0 * x8 * y6);
    f.fy = -et * (8.0 * x9 * y7 + 576.0 * x7 * y7 + 336.0 * x9 * y5);
    f.ft = -f.f;
    f.fxx = -et * (72.0 * x7 * y8 + 3024.0 * x5 * y8 + 4032.0 * x7 * y6);
    f.fxy = -et * (72.0 * x8 * y7 + 4032.0 * x6 * y7 + 3024.0 * x8 * y5);
    f.fyy = -et * (56.0 * x9 * y6 + 4032.0 * x7 * y6 + 1680.0 * x9 * y4);
    return f;
  }
};

class Tp3a final : public TestProblem {
 public:
  explicit Tp3a(bool caption_variant) : caption_(caption_variant) {}

  std::string id() const override { return "tp3a"; }
  DomainKind kind() const override { return DomainKind::Single; }
  bool lambda_time_dependent() const override { return true; }

  double lambda(int, double t) const override {
    return caption_ ? 1.1 + std::sin(kPi * t) : 1.1 + std::sin(10.0 * kPi * t);
  }
  double lambda_dot(int, double t) const override {
    return caption_ ? kPi * std::cos(kPi * t)
                    : 10.0 * kPi * std::cos(10.0 * kPi * t);
  }

  PointEval exact_eval(int, double x, double y, double t) const override {
    return poly98_exact(x, y, t);
  }

  ForcingEval forcing_eval(int, double x, double y, double t) const override {
    const double et = std::exp(-t);
    const double lam = lambda(1, t), dlam = lambda_dot(1, t);
    const double x5 = std::pow(x, 5), y4 = std::pow(y, 4);
    const double x6 = x5 * x, x7 = x6 * x, x8 = x7 * x, x9 = x8 * x;
    const double y5 = y4 * y, y6 = y5 * y, y7 = y6 * y, y8 = y7 * y;
    const double Q = 72.0 * x7 * y8 + 56.0 * x9 * y6;
    const double Qx = 504.0 * x6 * y8 + 504.0 * x8 * y6;
    const double Qy = 576.0 * x7 * y7 + 336.0 * x9 * y5;
    const double Qxx = 3024.0 * x5 * y8 + 4032.0 * x7 * y6;
    const double Qxy = 4032.0 * x6 * y7 + 3024.0 * x8 * y5;
    const double Qyy = 4032.0 * x7 * y6 + 1680.0 * x9 * y4;
    ForcingEval f;
    f.f = -et * x9 * y8 - lam * et * Q;
    f.fx = -et * 9.0 * x8 * y8 - lam * et * Qx;
    f.fy = -et * 8.0 * x9 * y7 - lam * et * Qy;
    f.ft = et * x9 * y8 - dlam * et * Q + lam * et * Q;
    f.fxx = -et * 72.0 * x7 * y8 - lam * et * Qxx;
    f.fxy = -et * 72.0 * x8 * y7 - lam * et * Qxy;
    f.fyy = -et * 56.0 * x9 * y6 - lam * et * Qyy;
    return f;
  }

 private:
  bool caption_;
};

// side 2 of the three composite problems below: u2 = e^{-t}(x^2 - y^2)
PointEval harmonic_exact(double x, double y, double t) {
  const double et = std::exp(-t);
  PointEval e;
  e.u = et * (x * x - y * y);
  e.ux = 2.0 * x * et;
  e.uy = -2.0 * y * et;
  e.ut = -e.u;
  return e;
}

ForcingEval harmonic_forcing(double x, double y, double t) {
  const double et = std::exp(-t);
  ForcingEval f;  // f = u_t = -e^{-t}(x^2 - y^2) since Δu = 0
  f.f = -et * (x * x - y * y);
  f.fx = -2.0 * x * et;
  f.fy = 2.0 * y * et;
  f.ft = et * (x * x - y * y);
  f.fxx = -2.0 * et;
  f.fxy = 0.0;
  f.fyy = 2.0 * et;
  return f;
}

class Tp2a final : public TestProblem {
 public:
  std::string id() const override { return "tp2a"; }
  DomainKind kind() const override { return DomainKind::Composite; }
  double lambda(int side, double) const override { return side == 1 ? 10.0 : 1.0; }
  int default_independent_side() const override { return 2; }
  int default_basis_modes() const override { return 33; }

  PointEval exact_eval(int side, double x, double y, double t) const override {
    if (side == 2) return harmonic_exact(x, y, t);
    const double et = std::exp(-t);
    PointEval e;
    e.u = et * std::sin(x) * std::cos(y);
    e.ux = et * std::cos(x) * std::cos(y);
    e.uy = -et * std::sin(x) * std::sin(y);
    e.ut = -e.u;
    return e;
  }

  ForcingEval forcing_eval(int side, double x, double y, double t) const override {
    if (side == 2) return harmonic_forcing(x, y, t);
    // Δu1 = −2 u1, so f1 = u1_t − 10 Δu1 = 19 u1
    const double et = std::exp(-t);
    const double sc = std::sin(x) * std::cos(y);
    ForcingEval f;
    f.f = 19.0 * et * sc;
    f.fx = 19.0 * et * std::cos(x) * std::cos(y);
    f.fy = -19.0 * et * std::sin(x) * std::sin(y);
    f.ft = -19.0 * et * sc;
    f.fxx = -19.0 * et * sc;
    f.fxy = -19.0 * et * std::cos(x) * std::sin(y);
    f.fyy = -19.0 * et * sc;
    return f;
  }
};

class Tp2b final : public TestProblem {
 public:
  std::string id() const override { return "tp2b"; }
  DomainKind kind() const override { return DomainKind::Composite; }
  double lambda(int side, double) const override { return side == 1 ? 10.0 : 1.0; }
  int default_independent_side() const override { return 2; }
  int default_basis_modes() const override { return 97; }

  PointEval exact_eval(int side, double x, double y, double t) const override {
    if (side == 2) return harmonic_exact(x, y, t);
    const double et = std::exp(-t);
    const double a = 3.0 * kPi, b = 7.0 * kPi;
    PointEval e;
    e.u = et * std::sin(a * x) * std::cos(b * y);
    e.ux = a * et * std::cos(a * x) * std::cos(b * y);
    e.uy = -b * et * std::sin(a * x) * std::sin(b * y);
    e.ut = -e.u;
    return e;
  }

  ForcingEval forcing_eval(int side, double x, double y, double t) const override {
    if (side == 2) return harmonic_forcing(x, y, t);
    // Δu1 = −58 π² u1, so f1 = (580 π² − 1) u1
    const double c = 580.0 * kPi * kPi - 1.0;
    const double et = std::exp(-t);
    const double a = 3.0 * kPi, b = 7.0 * kPi;
    const double s = std::sin(a * x), cx = std::cos(a * x);
    const double cy = std::cos(b * y), sy = std::sin(b * y);
    ForcingEval f;
    f.f = c * et * s * cy;
    f.fx = c * a * et * cx * cy;
    f.fy = -c * b * et * s * sy;
    f.ft = -c * et * s * cy;
    f.fxx = -c * a * a * et * s * cy;
    f.fxy = -c * a * b * et * cx * sy;
    f.fyy = -c * b * b * et * s * cy;
    return f;
  }
};

class Tp2c final : public TestProblem {
 public:
  std::string id() const override { return "tp2c"; }
  DomainKind kind() const override { return DomainKind::Composite; }
  double lambda(int side, double) const override { return side == 1 ? 1000.0 : 1.0; }
  int default_independent_side() const override { return 1; }
  int default_basis_modes() const override { return 25; }

  PointEval exact_eval(int side, double x, double y, double t) const override {
    if (side == 1) return PointEval{};
    const double s = 1000.0 * std::sin(10.0 * t);
    const double x3 = x * x * x, y4 = y * y * y * y;
    PointEval e;
    e.u = s * x3 * x * y4 * y;
    e.ux = 4.0 * s * x3 * y4 * y;
    e.uy = 5.0 * s * x3 * x * y4;
    e.ut = 10000.0 * std::cos(10.0 * t) * x3 * x * y4 * y;
    return e;
  }

  ForcingEval forcing_eval(int side, double x, double y, double t) const override {
    if (side == 1) return ForcingEval{};
    const double s = 1000.0 * std::sin(10.0 * t);
    const double c = 10000.0 * std::cos(10.0 * t);
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const double y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y;
    // Δu2 = s (12 x² y⁵ + 20 x⁴ y³); f2 = u2_t − Δu2
    ForcingEval f;
    f.f = c * x4 * y5 - s * (12.0 * x2 * y5 + 20.0 * x4 * y3);
    f.fx = 4.0 * c * x3 * y5 - s * (24.0 * x * y5 + 80.0 * x3 * y3);
    f.fy = 5.0 * c * x4 * y4 - s * (60.0 * x2 * y4 + 60.0 * x4 * y2);
    f.ft = -100.0 * s * x4 * y5 - c * (12.0 * x2 * y5 + 20.0 * x4 * y3);
    f.fxx = 12.0 * c * x2 * y5 - s * (24.0 * y5 + 240.0 * x2 * y3);
    f.fxy = 20.0 * c * x3 * y4 - s * (120.0 * x * y4 + 240.0 * x3 * y2);
    f.fyy = 20.0 * c * x4 * y3 - s * (240.0 * x2 * y3 + 120.0 * x4 * y);
    return f;
  }
};

}  // namespace

std::shared_ptr<TestProblem> make_problem(const std::string& id,
                                          bool tp3a_caption_lambda) {
  if (id == "tp1a") return std::make_shared<Tp1a>();
  if (id == "tp3a") return std::make_shared<Tp3a>(tp3a_caption_lambda);
  if (id == "tp2a") return std::make_shared<Tp2a>();
  if (id == "tp2b") return std::make_shared<Tp2b>();
  if (id == "tp2c") return std::make_shared<Tp2c>();
  fail("unknown test problem id: " + id);
}

}  // namespace dpm
