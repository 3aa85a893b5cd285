#include "dpm/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dpm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<QuadratureNode> Curve::quadrature(int n_nodes) const {
  DPM_REQUIRE(n_nodes >= 2, "curve quadrature needs at least 2 nodes");
  const double len = total_length();
  const double w = len / n_nodes;
  std::vector<QuadratureNode> nodes;
  nodes.reserve(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    nodes.push_back({point_at(i * w), w});
  }
  return nodes;
}

double Curve::wrap_arclength(double s) const {
  const double len = total_length();
  s = std::fmod(s, len);
  if (s < 0) s += len;
  return s;
}

// ---------------------------------------------------------------------------
// Circle
// ---------------------------------------------------------------------------

Circle::Circle(Vec2 center, double radius) : center_(center), radius_(radius) {
  DPM_REQUIRE(radius > 0.0, "circle radius must be positive");
}

double Circle::total_length() const { return 2.0 * kPi * radius_; }

double Circle::side_value(const Vec2& p) const { return signed_distance(p); }

double Circle::signed_distance(const Vec2& p) const {
  return (p - center_).norm() - radius_;
}

CurvePoint Circle::project(const Vec2& p) const {
  Vec2 r = p - center_;
  double n = r.norm();
  DPM_REQUIRE(n > 1e-14 * radius_, "cannot project the circle center");
  Vec2 dir = r * (1.0 / n);
  CurvePoint cp;
  cp.position = center_ + dir * radius_;
  double angle = std::atan2(dir.y, dir.x);
  if (angle < 0) angle += 2.0 * kPi;
  cp.arclength = angle * radius_;
  cp.unit_normal = dir;
  cp.curvature = 1.0 / radius_;
  return cp;
}

CurvePoint Circle::point_at(double arclength) const {
  const double angle = wrap_arclength(arclength) / radius_;
  CurvePoint cp;
  cp.unit_normal = {std::cos(angle), std::sin(angle)};
  cp.position = center_ + cp.unit_normal * radius_;
  cp.arclength = wrap_arclength(arclength);
  cp.curvature = 1.0 / radius_;
  return cp;
}

double Circle::curvature_at(double) const { return 1.0 / radius_; }

// ---------------------------------------------------------------------------
// LevelSetField
// ---------------------------------------------------------------------------

LevelSetField LevelSetField::read(std::istream& in) {
  LevelSetField f;
  in >> f.nx >> f.ny >> f.xmin >> f.xmax >> f.ymin >> f.ymax;
  DPM_REQUIRE(in.good() && f.nx >= 2 && f.ny >= 2 && f.xmax > f.xmin && f.ymax > f.ymin,
              "invalid level-set grid header");
  f.values.resize(static_cast<size_t>(f.nx) * f.ny);
  for (auto& v : f.values) {
    in >> v;
    DPM_REQUIRE(!in.fail(), "truncated level-set grid file");
  }
  return f;
}

LevelSetField LevelSetField::read_file(const std::string& path) {
  std::ifstream in(path);
  DPM_REQUIRE(in.good(), "cannot open level-set file: " + path);
  return read(in);
}

void LevelSetField::write(std::ostream& out) const {
  out << nx << " " << ny << " " << xmin << " " << xmax << " " << ymin << " "
      << ymax << "\n";
  char buf[32];
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", at(i, j));
      out << buf << (i + 1 == nx ? "\n" : " ");
    }
  }
}

LevelSetField LevelSetField::sample(const std::function<double(double, double)>& f,
                                    int nx, int ny, double xmin, double xmax,
                                    double ymin, double ymax) {
  LevelSetField out;
  out.nx = nx;
  out.ny = ny;
  out.xmin = xmin;
  out.xmax = xmax;
  out.ymin = ymin;
  out.ymax = ymax;
  out.values.resize(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    const double y = ymin + j * (ymax - ymin) / (ny - 1);
    for (int i = 0; i < nx; ++i) {
      const double x = xmin + i * (xmax - xmin) / (nx - 1);
      out.at(i, j) = f(x, y);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// LevelSetCurve
// ---------------------------------------------------------------------------

namespace {

// 1D Lagrange basis on uniform nodes x0 + h*{0..deg}: values and first two
// derivatives at x for every basis polynomial.
struct Lagrange1d {
  std::array<double, 5> v{}, d1{}, d2{};
  int n = 0;

  Lagrange1d(double x, double x0, double h, int deg) : n(deg + 1) {
    for (int i = 0; i < n; ++i) {
      const double xi = x0 + i * h;
      double p = 1.0, dp = 0.0, ddp = 0.0;
      for (int m = 0; m < n; ++m) {
        if (m == i) continue;
        const double xm = x0 + m * h;
        const double w = 1.0 / (xi - xm);
        const double t = (x - xm) * w;
        // multiply the running product by t, tracking derivatives
        ddp = ddp * t + 2.0 * dp * w;
        dp = dp * t + p * w;
        p *= t;
      }
      v[i] = p;
      d1[i] = dp;
      d2[i] = ddp;
    }
  }
};

}  // namespace

LevelSetCurve::LevelSetCurve(LevelSetField field, int interpolant_degree,
                             double tube_width)
    : field_(std::move(field)),
      degree_(interpolant_degree),
      tube_width_(tube_width) {
  DPM_REQUIRE(degree_ >= 2 && degree_ <= 4, "interpolant degree must be 2..4");
  DPM_REQUIRE(field_.nx > degree_ && field_.ny > degree_,
              "level-set grid too small for the interpolant degree");
  trace_curve();
}

LevelSetCurve::FieldEval LevelSetCurve::evaluate_field(const Vec2& p) const {
  const double hx = field_.dx(), hy = field_.dy();
  DPM_REQUIRE(p.x >= field_.xmin - hx && p.x <= field_.xmax + hx &&
                  p.y >= field_.ymin - hy && p.y <= field_.ymax + hy,
              "level-set query outside the sampled box");
  // nearest-node centered block, clamped to the grid
  auto block_start = [&](double coord, double lo, double h, int n) {
    int c = static_cast<int>(std::lround((coord - lo) / h));
    int s = c - degree_ / 2;
    return std::clamp(s, 0, n - 1 - degree_);
  };
  const int i0 = block_start(p.x, field_.xmin, hx, field_.nx);
  const int j0 = block_start(p.y, field_.ymin, hy, field_.ny);
  Lagrange1d lx(p.x, field_.xmin + i0 * hx, hx, degree_);
  Lagrange1d ly(p.y, field_.ymin + j0 * hy, hy, degree_);

  FieldEval e{0, 0, 0, 0, 0, 0};
  for (int j = 0; j <= degree_; ++j) {
    double r = 0, rx = 0, rxx = 0;
    for (int i = 0; i <= degree_; ++i) {
      const double fij = field_.at(i0 + i, j0 + j);
      r += lx.v[i] * fij;
      rx += lx.d1[i] * fij;
      rxx += lx.d2[i] * fij;
    }
    e.f += ly.v[j] * r;
    e.fx += ly.v[j] * rx;
    e.fxx += ly.v[j] * rxx;
    e.fy += ly.d1[j] * r;
    e.fxy += ly.d1[j] * rx;
    e.fyy += ly.d2[j] * r;
  }
  return e;
}

Vec2 LevelSetCurve::gradient(const Vec2& p) const {
  const FieldEval e = evaluate_field(p);
  return {e.fx, e.fy};
}

double LevelSetCurve::curvature_from_field(const FieldEval& e) const {
  const double g2 = e.fx * e.fx + e.fy * e.fy;
  DPM_REQUIRE(g2 > 1e-24, "degenerate level set: vanishing gradient on the curve");
  const double g = std::sqrt(g2);
  return (e.fxx * e.fy * e.fy - 2.0 * e.fxy * e.fx * e.fy + e.fyy * e.fx * e.fx) /
         (g2 * g);
}

Vec2 LevelSetCurve::unit_tangent(const Vec2& p) const {
  return gradient(p).perp().normalized();
}

Vec2 LevelSetCurve::snap_to_curve(Vec2 q) const {
  for (int it = 0; it < 8; ++it) {
    const FieldEval e = evaluate_field(q);
    const double g2 = e.fx * e.fx + e.fy * e.fy;
    DPM_REQUIRE(g2 > 1e-24, "degenerate level set during snap");
    const double step = e.f / g2;
    q = {q.x - step * e.fx, q.y - step * e.fy};
    if (std::abs(e.f) < 1e-15 * (1.0 + g2)) break;
  }
  return q;
}

double LevelSetCurve::side_value(const Vec2& p) const {
  return evaluate_field(p).f;
}

double LevelSetCurve::signed_distance(const Vec2& p) const {
  const CurvePoint cp = project(p);
  const double dist = (p - cp.position).norm();
  return evaluate_field(p).f >= 0.0 ? dist : -dist;
}

CurvePoint LevelSetCurve::project(const Vec2& p) const {
  // Newton on (F(q) = 0, (p − q) × ∇F(q) = 0), initial guess q = p.
  Vec2 q = p;
  double res = 0.0;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const FieldEval e = evaluate_field(q);
    const Vec2 g{e.fx, e.fy};
    DPM_REQUIRE(g.squared_norm() > 1e-24, "degenerate level set in projection");
    const Vec2 r = p - q;
    const double f1 = e.f;
    const double f2 = r.cross(g);  // r.x*fy − r.y*fx
    res = std::abs(f1) + std::abs(f2);
    if (res < 1e-12) {
      converged = true;
      break;
    }
    // Jacobian rows of (f1, f2) w.r.t. q
    const double a11 = e.fx, a12 = e.fy;
    const double a21 = -e.fy + r.x * e.fxy - r.y * e.fxx;
    const double a22 = e.fx + r.x * e.fyy - r.y * e.fxy;
    const double det = a11 * a22 - a12 * a21;
    DPM_REQUIRE(std::abs(det) > 1e-20, "singular Newton system in projection");
    const double dx = (f1 * a22 - f2 * a12) / det;
    const double dy = (a11 * f2 - a21 * f1) / det;
    q = {q.x - dx, q.y - dy};
  }
  if (!converged)
    fail("level-set projection did not converge; last residual " +
         std::to_string(res));
  const double dist = (p - q).norm();
  if (dist > tube_width_)
    fail("point outside the projection tube (|d| = " + std::to_string(dist) + ")");
  const FieldEval e = evaluate_field(q);
  CurvePoint cp;
  cp.position = q;
  cp.unit_normal = Vec2{e.fx, e.fy}.normalized();
  cp.curvature = curvature_from_field(e);
  cp.arclength = arclength_of(q);
  return cp;
}

void LevelSetCurve::trace_curve() {
  // Reference point: intersection of the curve with the positive x-axis.
  {
    const int scan = 512;
    const double x_lo = std::max(field_.xmin, 0.0) + 4.0 * field_.dx();
    const double x_hi = field_.xmax - 2.0 * field_.dx();
    DPM_REQUIRE(x_hi > x_lo, "level-set box does not cover the positive x-axis");
    double prev_x = x_lo, prev_f = evaluate_field({x_lo, 0.0}).f;
    bool found = false;
    for (int i = 1; i <= scan; ++i) {
      const double x = x_lo + (x_hi - x_lo) * i / scan;
      const double f = evaluate_field({x, 0.0}).f;
      if (prev_f < 0.0 && f >= 0.0) {
        double a = prev_x, b = x;
        for (int it = 0; it < 80; ++it) {
          const double m = 0.5 * (a + b);
          (evaluate_field({m, 0.0}).f < 0.0 ? a : b) = m;
        }
        start_point_ = snap_to_curve({0.5 * (a + b), 0.0});
        found = true;
        break;
      }
      prev_x = x;
      prev_f = f;
    }
    DPM_REQUIRE(found, "level set does not cross the positive x-axis");
  }

  // Trace q' = T(q) with adaptive RK45 (Dormand–Prince), snapping back to the
  // zero set after every accepted step. Arclength accumulates step sizes.
  const Vec2 t0 = unit_tangent(start_point_);
  const double h_cell = std::min(field_.dx(), field_.dy());
  // dense samples keep the periodic-spline arclength table well below the
  // solver's noise floor
  const double h_max = 0.25 * h_cell;
  double h = 0.125 * h_cell;
  const double tol = 1e-13;

  auto rhs = [&](const Vec2& q) { return unit_tangent(q); };
  // Dormand–Prince coefficients
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2;
  (void)c3;
  (void)c4;
  (void)c5;

  auto dp_step = [&](const Vec2& q, double hh, Vec2& out, double& err) {
    const Vec2 k1 = rhs(q);
    const Vec2 k2 = rhs(q + hh * (a21 * k1));
    const Vec2 k3 = rhs(q + hh * (a31 * k1 + a32 * k2));
    const Vec2 k4 = rhs(q + hh * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec2 k5 = rhs(q + hh * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec2 k6 =
        rhs(q + hh * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    out = q + hh * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec2 k7 = rhs(out);
    const Vec2 ev =
        hh * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    err = ev.norm();
  };

  sample_s_.clear();
  sample_q_.clear();
  sample_s_.push_back(0.0);
  sample_q_.push_back(start_point_);

  Vec2 q = start_point_;
  double s = 0.0;
  bool closed = false;
  const size_t max_steps = 2000000;
  for (size_t n = 0; n < max_steps && !closed; ++n) {
    Vec2 q_new;
    double err;
    dp_step(q, h, q_new, err);
    if (err > tol && h > 1e-9 * h_cell) {
      h = std::max(0.3 * h, h * 0.9 * std::pow(tol / err, 0.2));
      continue;
    }
    q_new = snap_to_curve(q_new);
    const double s_new = s + h;

    // closure: crossing of the plane through the start point normal to t0
    if (s_new > 6.0 * h_max && (q_new - start_point_).norm() < 3.0 * h_max) {
      const double d_prev = (q - start_point_).dot(t0);
      const double d_new = (q_new - start_point_).dot(t0);
      if (d_prev < 0.0 && d_new >= 0.0) {
        // refine the crossing with small fixed RK4 substeps from q
        double lo = 0.0, hi = h;
        Vec2 q_lo = q;
        for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
          const double mid = 0.5 * (lo + hi);
          // integrate by (mid - lo) from q_lo in 4 RK4 substeps
          Vec2 z = q_lo;
          const double dd = (mid - lo) / 4.0;
          for (int m = 0; m < 4; ++m) {
            const Vec2 r1 = rhs(z);
            const Vec2 r2 = rhs(z + (0.5 * dd) * r1);
            const Vec2 r3 = rhs(z + (0.5 * dd) * r2);
            const Vec2 r4 = rhs(z + dd * r3);
            z += (dd / 6.0) * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
          }
          z = snap_to_curve(z);
          if ((z - start_point_).dot(t0) < 0.0) {
            lo = mid;
            q_lo = z;
          } else {
            hi = mid;
          }
        }
        length_ = s + hi;
        closed = true;
        break;
      }
    }

    q = q_new;
    s = s_new;
    sample_s_.push_back(s);
    sample_q_.push_back(q);
    if (err > 0.0)
      h = std::min(h_max, h * 0.9 * std::pow(tol / std::max(err, 1e-16), 0.2));
    else
      h = std::min(h_max, 2.0 * h);
    h = std::min(h, h_max);
  }
  DPM_REQUIRE(closed, "curve tracing did not close the curve");
  DPM_REQUIRE(length_ > 0.0, "traced curve has nonpositive length");
  DPM_REQUIRE(sample_s_.size() >= 8, "too few trace samples");

  // periodic cubic spline through the samples (period = length_)
  const size_t m = sample_s_.size();
  std::vector<double> hseg(m);
  for (size_t i = 0; i + 1 < m; ++i) hseg[i] = sample_s_[i + 1] - sample_s_[i];
  hseg[m - 1] = length_ - sample_s_[m - 1];
  auto qv = [&](size_t i) { return sample_q_[i % m]; };

  // cyclic tridiagonal solve (Sherman–Morrison) for each component
  spline_m_.assign(m, Vec2{});
  for (int comp = 0; comp < 2; ++comp) {
    auto val = [&](size_t i) {
      const Vec2 v = qv(i);
      return comp == 0 ? v.x : v.y;
    };
    std::vector<double> a(m), b(m), c(m), d(m);
    for (size_t i = 0; i < m; ++i) {
      const double hm = hseg[(i + m - 1) % m];
      const double hi = hseg[i];
      a[i] = hm / 6.0;
      b[i] = (hm + hi) / 3.0;
      c[i] = hi / 6.0;
      d[i] = (val(i + 1) - val(i)) / hi - (val(i) - val((i + m - 1) % m)) / hm;
    }
    // Sherman–Morrison for the cyclic terms a[0] (to last) and c[m−1] (to 0)
    std::vector<double> bb = b;
    const double alpha = a[0], beta = c[m - 1];
    const double gamma = -b[0];
    bb[0] = b[0] - gamma;
    bb[m - 1] = b[m - 1] - alpha * beta / gamma;
    auto tri_solve = [&](std::vector<double> rhsv) {
      std::vector<double> cp(m), x(m);
      cp[0] = c[0] / bb[0];
      rhsv[0] /= bb[0];
      for (size_t i = 1; i < m; ++i) {
        const double mlt = 1.0 / (bb[i] - a[i] * cp[i - 1]);
        cp[i] = c[i] * mlt;
        rhsv[i] = (rhsv[i] - a[i] * rhsv[i - 1]) * mlt;
      }
      x[m - 1] = rhsv[m - 1];
      for (size_t i = m - 1; i-- > 0;) x[i] = rhsv[i] - cp[i] * x[i + 1];
      return x;
    };
    std::vector<double> u(m, 0.0);
    u[0] = gamma;
    u[m - 1] = beta;
    const auto y = tri_solve(d);
    const auto z = tri_solve(u);
    const double fac = (y[0] + alpha * y[m - 1] / gamma) /
                       (1.0 + z[0] + alpha * z[m - 1] / gamma);
    for (size_t i = 0; i < m; ++i) {
      const double mi = y[i] - fac * z[i];
      if (comp == 0)
        spline_m_[i].x = mi;
      else
        spline_m_[i].y = mi;
    }
  }
}

Vec2 LevelSetCurve::spline_eval(double s, Vec2* d1, Vec2* d2) const {
  s = wrap_arclength(s);
  const size_t m = sample_s_.size();
  size_t i = static_cast<size_t>(
      std::upper_bound(sample_s_.begin(), sample_s_.end(), s) -
      sample_s_.begin());
  i = (i == 0) ? 0 : i - 1;
  const double s0 = sample_s_[i];
  const double s1 = (i + 1 < m) ? sample_s_[i + 1] : length_;
  const double h = s1 - s0;
  const Vec2 q0 = sample_q_[i];
  const Vec2 q1 = sample_q_[(i + 1) % m];
  const Vec2 m0 = spline_m_[i];
  const Vec2 m1 = spline_m_[(i + 1) % m];
  const double A = (s1 - s) / h, B = (s - s0) / h;
  const double A3 = (A * A * A - A) * h * h / 6.0;
  const double B3 = (B * B * B - B) * h * h / 6.0;
  if (d1) {
    const double dA = -1.0 / h, dB = 1.0 / h;
    const double dA3 = (3.0 * A * A - 1.0) * dA * h * h / 6.0;
    const double dB3 = (3.0 * B * B - 1.0) * dB * h * h / 6.0;
    *d1 = dA * q0 + dB * q1 + dA3 * m0 + dB3 * m1;
  }
  if (d2) *d2 = A * m0 + B * m1;
  return A * q0 + B * q1 + A3 * m0 + B3 * m1;
}

double LevelSetCurve::arclength_of(const Vec2& p) const {
  // nearest dense sample, then Newton on (spl(s) − p)·spl'(s) = 0
  const size_t m = sample_s_.size();
  size_t best = 0;
  double best_d = (sample_q_[0] - p).squared_norm();
  for (size_t i = 1; i < m; ++i) {
    const double d = (sample_q_[i] - p).squared_norm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  double s = sample_s_[best];
  for (int it = 0; it < 30; ++it) {
    Vec2 d1, d2;
    const Vec2 q = spline_eval(s, &d1, &d2);
    const Vec2 r = q - p;
    const double g = r.dot(d1);
    const double gp = d1.squared_norm() + r.dot(d2);
    if (std::abs(gp) < 1e-14) break;
    const double step = g / gp;
    s -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return wrap_arclength(s);
}

CurvePoint LevelSetCurve::point_at(double arclength) const {
  const double s = wrap_arclength(arclength);
  const Vec2 q = snap_to_curve(spline_eval(s));
  const FieldEval e = evaluate_field(q);
  CurvePoint cp;
  cp.position = q;
  cp.arclength = s;
  cp.unit_normal = Vec2{e.fx, e.fy}.normalized();
  cp.curvature = curvature_from_field(e);
  return cp;
}

double LevelSetCurve::curvature_at(double arclength) const {
  return point_at(arclength).curvature;
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

const LevelSetRegistryEntry& level_set_registry(const std::string& name) {
  static const LevelSetRegistryEntry unit_circle{
      [](double x, double y) { return x * x + y * y - 1.0; },
      -2.2, 2.2, -2.2, 2.2};
  if (name == "unit-circle" || name == "unit_circle") return unit_circle;
  fail("unknown level-set registry entry: " + name);
}

std::shared_ptr<LevelSetCurve> make_level_set_curve(const std::string& name_or_path,
                                                    int interpolant_degree,
                                                    int samples_per_axis) {
  if (name_or_path.find('.') != std::string::npos ||
      name_or_path.find('/') != std::string::npos) {
    return std::make_shared<LevelSetCurve>(LevelSetField::read_file(name_or_path),
                                           interpolant_degree);
  }
  const auto& entry = level_set_registry(name_or_path);
  auto field = LevelSetField::sample(entry.f, samples_per_axis, samples_per_axis,
                                     entry.xmin, entry.xmax, entry.ymin, entry.ymax);
  return std::make_shared<LevelSetCurve>(std::move(field), interpolant_degree);
}

}  // namespace dpm
