#include "dpm/operators.hpp"

#include <array>

namespace dpm {

double sigma_of(int order, double dt) {
  DPM_REQUIRE(dt > 0.0, "time step must be positive");
  switch (order) {
    case 1: return 1.0 / dt;
    case 2: return 3.0 / (2.0 * dt);
    case 3: return 11.0 / (6.0 * dt);
    case 4: return 25.0 / (12.0 * dt);
    default: fail("unsupported BDF order " + std::to_string(order));
  }
}

TimeDerivativeWeights bdf_first_derivative(int order, double dt) {
  TimeDerivativeWeights w;
  switch (order) {
    case 1:
      w.lead = 1.0 / dt;
      w.tail = {-1.0 / dt};
      break;
    case 2:
      w.lead = 3.0 / (2.0 * dt);
      w.tail = {-4.0 / (2.0 * dt), 1.0 / (2.0 * dt)};
      break;
    case 3:
      w.lead = 11.0 / (6.0 * dt);
      w.tail = {-18.0 / (6.0 * dt), 9.0 / (6.0 * dt), -2.0 / (6.0 * dt)};
      break;
    case 4:
      w.lead = 25.0 / (12.0 * dt);
      w.tail = {-48.0 / (12.0 * dt), 36.0 / (12.0 * dt), -16.0 / (12.0 * dt),
                3.0 / (12.0 * dt)};
      break;
    default:
      fail("unsupported BDF order " + std::to_string(order));
  }
  return w;
}

TimeDerivativeWeights bdf_second_derivative(int levels_back, double dt) {
  TimeDerivativeWeights w;
  const double s = 1.0 / (dt * dt);
  if (levels_back >= 5) {
    w.lead = 15.0 / 4.0 * s;
    w.tail = {-77.0 / 6.0 * s, 107.0 / 6.0 * s, -13.0 * s, 61.0 / 12.0 * s,
              -5.0 / 6.0 * s};
  } else if (levels_back == 4) {
    w.lead = 35.0 / 12.0 * s;
    w.tail = {-104.0 / 12.0 * s, 114.0 / 12.0 * s, -56.0 / 12.0 * s,
              11.0 / 12.0 * s};
  } else if (levels_back == 3) {
    w.lead = 2.0 * s;
    w.tail = {-5.0 * s, 4.0 * s, -1.0 * s};
  } else if (levels_back == 2) {
    w.lead = 1.0 * s;
    w.tail = {-2.0 * s, 1.0 * s};
  } else {
    w.lead = 0.0;  // first bootstrap step: no usable second-derivative data
  }
  return w;
}

Eigen::VectorXd bdf_rhs(const BdfHistory& history, const Eigen::VectorXd& f_next,
                        int order, double dt, const std::vector<int>& m_plus,
                        int lattice_size) {
  DPM_REQUIRE(history.size() >= order,
              "BDF history shorter than the method order");
  const TimeDerivativeWeights w = bdf_first_derivative(order, dt);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(lattice_size);
  for (int n : m_plus) {
    double tail = 0.0;
    for (size_t m = 0; m < w.tail.size(); ++m)
      tail += w.tail[m] * history[static_cast<int>(m)][n];
    F[n] = -f_next[n] + tail;  // λΔu − σu = −f + Σ tail·u_old
  }
  return F;
}

const std::array<double, 6>& DiscreteOperator::one_sided_axis_weights() {
  // offsets −1, 0, 1, 2, 3, 4 from the row node; exact through degree 5
  static const std::array<double, 6> w = {10.0, -15.0, -4.0, 14.0, -6.0, 1.0};
  return w;
}

DiscreteOperator::DiscreteOperator(const AuxiliaryGrid& grid, StencilKind stencil,
                                   bool corrected_ring)
    : grid_(grid), stencil_(stencil), corrected_ring_(corrected_ring) {
  if (stencil_ == StencilKind::NinePoint)
    DPM_REQUIRE(grid_.nx >= 8 && grid_.ny >= 8,
                "the nine-point stencil needs at least 8 nodes per axis");
  const int n = grid_.total_nodes();
  const double h = grid_.h();
  const double ih2 = 1.0 / (h * h);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(n) * (stencil == StencilKind::FivePoint ? 5 : 10));

  auto add = [&](int row, int j, int k, double w) {
    // out-of-lattice references fall into the zero closure
    if (j >= 0 && j < grid_.nx && k >= 0 && k < grid_.ny)
      trip.emplace_back(row, grid_.id(j, k), w);
  };

  for (int j = 1; j <= grid_.nx - 2; ++j) {
    for (int k = 1; k <= grid_.ny - 2; ++k) {
      const int row = grid_.id(j, k);
      if (stencil_ == StencilKind::FivePoint) {
        add(row, j, k, -4.0 * ih2);
        add(row, j - 1, k, ih2);
        add(row, j + 1, k, ih2);
        add(row, j, k - 1, ih2);
        add(row, j, k + 1, ih2);
        continue;
      }
      const double s = ih2 / 12.0;
      auto axis = [&](bool x_axis, int idx, int limit) {
        if (corrected_ring_ && idx == 1) {
          const auto& w = one_sided_axis_weights();
          for (int o = -1; o <= 4; ++o) {
            const int jj = x_axis ? idx + o : j;
            const int kk = x_axis ? k : idx + o;
            add(row, jj, kk, w[o + 1] * s);
          }
        } else if (corrected_ring_ && idx == limit - 2) {
          const auto& w = one_sided_axis_weights();
          for (int o = -1; o <= 4; ++o) {
            const int jj = x_axis ? idx - o : j;
            const int kk = x_axis ? k : idx - o;
            add(row, jj, kk, w[o + 1] * s);
          }
        } else {
          static const std::array<double, 5> wide = {-1.0, 16.0, -30.0, 16.0, -1.0};
          for (int o = -2; o <= 2; ++o) {
            const int jj = x_axis ? idx + o : j;
            const int kk = x_axis ? k : idx + o;
            add(row, jj, kk, wide[o + 2] * s);
          }
        }
      };
      axis(true, j, grid_.nx);
      axis(false, k, grid_.ny);
    }
  }
  delta_.resize(n, n);
  delta_.setFromTriplets(trip.begin(), trip.end());
  delta_.makeCompressed();

  interior_index_.assign(n, -1);
  for (int k = 1; k <= grid_.ny - 2; ++k)
    for (int j = 1; j <= grid_.nx - 2; ++j) {
      interior_index_[grid_.id(j, k)] = static_cast<int>(interior_nodes_.size());
      interior_nodes_.push_back(grid_.id(j, k));
    }
}

DiscreteOperator::CorrectedRow DiscreteOperator::boundary_corrected_row(
    int j, int k) const {
  DPM_REQUIRE(stencil_ == StencilKind::NinePoint,
              "the five-point stencil needs no boundary correction");
  DPM_REQUIRE(corrected_ring_,
              "this operator uses the plain wide stencil at the lattice edge");
  DPM_REQUIRE(grid_.is_interior(j, k) &&
                  (j == 1 || j == grid_.nx - 2 || k == 1 || k == grid_.ny - 2),
              "corrected rows exist only one node away from the lattice edge");
  CorrectedRow row;
  for (RowSparse::InnerIterator it(delta_, grid_.id(j, k)); it; ++it) {
    const int node = static_cast<int>(it.index());
    if (grid_.is_ring(grid_.jx(node), grid_.ky(node)))
      row.ring.emplace_back(node, it.value());
    else
      row.interior.emplace_back(node, it.value());
  }
  return row;
}

double DiscreteOperator::apply_laplacian(const Eigen::VectorXd& u, int j,
                                         int k) const {
  DPM_REQUIRE(grid_.is_interior(j, k),
              "laplacian rows exist only at interior nodes");
  const int row = grid_.id(j, k);
  double v = 0.0;
  for (RowSparse::InnerIterator it(delta_, row); it; ++it)
    v += it.value() * u[it.index()];
  return v;
}

Eigen::SparseMatrix<double> DiscreteOperator::system_matrix(double lambda,
                                                            double sigma) const {
  DPM_REQUIRE(lambda > 0.0 && sigma > 0.0,
              "operator regime requires lambda > 0 and sigma > 0");
  const int ni = static_cast<int>(interior_nodes_.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(delta_.nonZeros());
  for (int node : interior_nodes_) {
    const int row = interior_index_[node];
    for (RowSparse::InnerIterator it(delta_, node); it; ++it) {
      const int ci = interior_index_[it.index()];
      if (ci >= 0) trip.emplace_back(row, ci, lambda * it.value());
    }
    trip.emplace_back(row, row, -sigma);
  }
  Eigen::SparseMatrix<double> A(ni, ni);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

}  // namespace dpm
