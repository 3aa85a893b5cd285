#pragma once

#include <Eigen/Sparse>
#include <deque>
#include <vector>

#include "dpm/common.hpp"
#include "dpm/grid.hpp"

namespace dpm {

/// Implicit-shift coefficient of the fully discrete operator
/// λΔ_h − σI: σ = a0/Δt with a0 the leading BDF coefficient.
double sigma_of(int order, double dt);

/// Backward-difference surrogate for a time derivative at the new level:
/// value ≈ lead·u^{i+1} + Σ tail[m]·u^{i−m}.
struct TimeDerivativeWeights {
  double lead = 0.0;
  std::vector<double> tail;
};

TimeDerivativeWeights bdf_first_derivative(int order, double dt);

/// Second-derivative surrogate using the deepest backward formula the
/// available history supports (levels_back = number of stored old levels).
TimeDerivativeWeights bdf_second_derivative(int levels_back, double dt);

/// Ring buffer of prior grid snapshots, most recent first.
class BdfHistory {
 public:
  explicit BdfHistory(int capacity) : capacity_(capacity) {}
  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(snaps_.size()); }
  void push(Eigen::VectorXd u) {
    snaps_.push_front(std::move(u));
    if (size() > capacity_) snaps_.pop_back();
  }
  const Eigen::VectorXd& operator[](int i) const { return snaps_[i]; }
  void clear() { snaps_.clear(); }

 private:
  int capacity_;
  std::deque<Eigen::VectorXd> snaps_;
};

/// Right-hand side of the fully discrete equations on M+:
///   F^{i+1} = −f^{i+1} − (σ/a0·Δt)·Σ a_m u^{i+1−m}
/// evaluated only at m_plus nodes (zero elsewhere).
Eigen::VectorXd bdf_rhs(const BdfHistory& history, const Eigen::VectorXd& f_next,
                        int order, double dt, const std::vector<int>& m_plus,
                        int lattice_size);

/// Discrete Laplacian on the auxiliary lattice. Interior rows hold the
/// five-point or wide nine-point stencil. With `corrected_ring`, nine-point
/// rows one node away from the lattice edge switch to the fourth-order
/// one-sided corrected form whose outermost sample sits on the edge ring —
/// required when the ring carries physical Dirichlet data, since those are
/// M+ rows and must stay consistent. Fictitious auxiliary edges (the usual
/// case) keep the plain wide stencil with a zero closure beyond the lattice,
/// which leaves the operator symmetric. Ring rows are identically zero.
class DiscreteOperator {
 public:
  DiscreteOperator(const AuxiliaryGrid& grid, StencilKind stencil,
                   bool corrected_ring = false);

  bool corrected_ring() const { return corrected_ring_; }
  bool symmetric() const {
    return stencil_ == StencilKind::FivePoint || !corrected_ring_;
  }

  using RowSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  const AuxiliaryGrid& grid() const { return grid_; }
  StencilKind stencil() const { return stencil_; }

  /// Lattice-sized sparse Laplacian (zero ring rows).
  const RowSparse& delta() const { return delta_; }

  double apply_laplacian(const Eigen::VectorXd& u, int j, int k) const;

  /// Per-axis weights of the one-sided corrected row in units of 1/(12h^2),
  /// ordered from the edge sample outward: offsets −1..4 relative to the row
  /// node. Only meaningful for the nine-point stencil.
  static const std::array<double, 6>& one_sided_axis_weights();

  /// Full row of a boundary-corrected node, split into couplings to interior
  /// unknowns and to edge-ring data samples. Throws for the five-point
  /// stencil (which needs no correction), for operators without corrected
  /// rows, and for nodes that are not adjacent to the lattice edge.
  struct CorrectedRow {
    std::vector<std::pair<int, double>> interior;  // (lattice node, weight)
    std::vector<std::pair<int, double>> ring;      // boundary-data coupling
  };
  CorrectedRow boundary_corrected_row(int j, int k) const;

  /// λΔ − σI over the interior unknowns (ring columns dropped).
  Eigen::SparseMatrix<double> system_matrix(double lambda, double sigma) const;

  const std::vector<int>& interior_index() const { return interior_index_; }
  const std::vector<int>& interior_nodes() const { return interior_nodes_; }

 private:
  AuxiliaryGrid grid_;
  StencilKind stencil_;
  bool corrected_ring_;
  RowSparse delta_;                            // lattice × lattice
  std::vector<int> interior_index_;            // lattice → interior id or −1
  std::vector<int> interior_nodes_;            // interior id → lattice node
};

}  // namespace dpm
