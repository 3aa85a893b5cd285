#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dpm/common.hpp"

namespace dpm {

/// A point on the curve with its local frame data. The normal field is fixed
/// once per problem: it points away from the enclosed region (radially outward
/// for a circle), and `curvature` is the divergence of that normal field
/// (+1/R for a circle). `arclength` is measured counterclockwise from the
/// intersection of the curve with the positive x-axis.
struct CurvePoint {
  Vec2 position;
  double arclength = 0.0;
  Vec2 unit_normal;
  double curvature = 0.0;
};

struct QuadratureNode {
  CurvePoint point;
  double weight = 0.0;
};

/// Closed smooth curve. Signed distance is positive on the side the normal
/// points toward (outside the enclosed region).
class Curve {
 public:
  virtual ~Curve() = default;

  virtual double total_length() const = 0;

  /// Cheap quantity with the sign of the signed distance, usable on the whole
  /// sampled box (no projection). For the circle it is the distance itself.
  virtual double side_value(const Vec2& p) const = 0;

  virtual double signed_distance(const Vec2& p) const = 0;
  virtual CurvePoint project(const Vec2& p) const = 0;
  virtual CurvePoint point_at(double arclength) const = 0;
  virtual double curvature_at(double arclength) const = 0;

  /// Periodic trapezoid rule: n nodes equispaced in arclength, weight |Γ|/n.
  std::vector<QuadratureNode> quadrature(int n_nodes) const;

  double wrap_arclength(double s) const;
};

class Circle final : public Curve {
 public:
  Circle(Vec2 center, double radius);

  double total_length() const override;
  double side_value(const Vec2& p) const override;
  double signed_distance(const Vec2& p) const override;
  CurvePoint project(const Vec2& p) const override;
  CurvePoint point_at(double arclength) const override;
  double curvature_at(double arclength) const override;

  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec2 center_;
  double radius_;
};

/// Scalar field sampled on a uniform grid. Plain-text format:
/// one header line "nx ny xmin xmax ymin ymax", then nx*ny values in row-major
/// order (y rows, x fastest).
struct LevelSetField {
  int nx = 0, ny = 0;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  std::vector<double> values;

  double dx() const { return (xmax - xmin) / (nx - 1); }
  double dy() const { return (ymax - ymin) / (ny - 1); }
  double& at(int i, int j) { return values[static_cast<size_t>(j) * nx + i]; }
  double at(int i, int j) const { return values[static_cast<size_t>(j) * nx + i]; }

  static LevelSetField read(std::istream& in);
  static LevelSetField read_file(const std::string& path);
  void write(std::ostream& out) const;

  static LevelSetField sample(const std::function<double(double, double)>& f,
                              int nx, int ny, double xmin, double xmax,
                              double ymin, double ymax);
};

/// Curve defined implicitly as the zero set of an interpolated grid field.
/// The field must be negative inside the enclosed region and change sign
/// across the curve. A local tensor-product interpolant of the given degree
/// supplies values and derivatives; the curve is parameterized by arclength
/// by tracing it once with an adaptive RK45 integrator and interpolating the
/// dense samples with periodic cubic splines.
class LevelSetCurve final : public Curve {
 public:
  LevelSetCurve(LevelSetField field, int interpolant_degree,
                double tube_width = 0.8);

  double total_length() const override { return length_; }
  double side_value(const Vec2& p) const override;
  double signed_distance(const Vec2& p) const override;
  CurvePoint project(const Vec2& p) const override;
  CurvePoint point_at(double arclength) const override;
  double curvature_at(double arclength) const override;

  int interpolant_degree() const { return degree_; }
  double tube_width() const { return tube_width_; }

  struct FieldEval {
    double f, fx, fy, fxx, fxy, fyy;
  };
  FieldEval evaluate_field(const Vec2& p) const;

  /// Dense arclength samples recorded during tracing (strictly increasing).
  const std::vector<double>& arclength_samples() const { return sample_s_; }

 private:
  Vec2 gradient(const Vec2& p) const;
  double curvature_from_field(const FieldEval& e) const;
  Vec2 unit_tangent(const Vec2& p) const;
  /// Newton step sequence pulling a near-curve point onto the zero set.
  Vec2 snap_to_curve(Vec2 q) const;
  void trace_curve();
  Vec2 spline_eval(double s, Vec2* d1 = nullptr, Vec2* d2 = nullptr) const;
  double arclength_of(const Vec2& on_curve_point) const;

  LevelSetField field_;
  int degree_;
  double tube_width_;
  double length_ = 0.0;
  Vec2 start_point_;

  std::vector<double> sample_s_;
  std::vector<Vec2> sample_q_;
  // periodic cubic spline second derivatives for x(s) and y(s)
  std::vector<Vec2> spline_m_;
};

/// Built-in analytic level sets, addressable by name from the CLI.
struct LevelSetRegistryEntry {
  std::function<double(double, double)> f;
  double xmin, xmax, ymin, ymax;
};
const LevelSetRegistryEntry& level_set_registry(const std::string& name);

/// Builds a LevelSetCurve from a registry name or a grid file path.
std::shared_ptr<LevelSetCurve> make_level_set_curve(const std::string& name_or_path,
                                                    int interpolant_degree,
                                                    int samples_per_axis = 441);

}  // namespace dpm
