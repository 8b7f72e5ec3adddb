#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fgl {

enum class BoundaryCondition { dirichlet, neumann, robin };

/// Uniform midpoint grid over a truncated 1-D domain: the open interval
/// Ω = (omega_lo, omega_hi) split into n_interior cells, extended on each
/// side by an exterior collar of width R = collar_factor·|Ω| with the same
/// spacing. Nodes are cell midpoints in ascending order:
/// [left collar | interior | right collar]. Immutable after construction.
class Grid1D {
 public:
  static Grid1D build(double omega_lo, double omega_hi, std::size_t n_interior,
                      double collar_factor);

  double omega_lo() const { return omega_lo_; }
  double omega_hi() const { return omega_hi_; }
  double spacing() const { return spacing_; }
  /// Requested collar width; the realized collar is per_side()·h ≥ R.
  double truncation_radius() const { return radius_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t interior_count() const { return n_interior_; }
  std::size_t exterior_count() const { return nodes_.size() - n_interior_; }
  std::size_t exterior_per_side() const { return per_side_; }

  double node(std::size_t i) const { return nodes_[i]; }
  std::span<const double> nodes() const { return nodes_; }

  bool is_interior(std::size_t i) const {
    return i >= per_side_ && i < per_side_ + n_interior_;
  }
  /// Interior nodes occupy the contiguous index range
  /// [interior_begin, interior_begin + interior_count).
  std::size_t interior_begin() const { return per_side_; }

  /// Exterior nodes enumerated by ordinal (left collar ascending, then right
  /// collar ascending); used for per-node Robin weights.
  std::size_t exterior_node(std::size_t ordinal) const;
  std::size_t exterior_ordinal(std::size_t node_index) const;

 private:
  double omega_lo_ = 0.0, omega_hi_ = 0.0, spacing_ = 0.0, radius_ = 0.0;
  std::size_t n_interior_ = 0, per_side_ = 0;
  std::vector<double> nodes_;
};

/// Real values on every grid node, tagged with the boundary condition that
/// governs the exterior degrees of freedom. Dirichlet fields keep exterior
/// entries identically zero; construction enforces it and set() rejects
/// writes that would break it.
class Field {
 public:
  Field(const Grid1D& grid, BoundaryCondition bc);
  Field(const Grid1D& grid, BoundaryCondition bc, std::span<const double> values);

  double operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, double v);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  BoundaryCondition bc() const { return bc_; }
  const Grid1D& grid() const { return *grid_; }

  /// Same values under a different boundary tag (exterior re-zeroed when
  /// retagging to Dirichlet).
  Field retagged(BoundaryCondition bc) const;

  Field& scale(double t);

 private:
  const Grid1D* grid_;
  BoundaryCondition bc_;
  std::vector<double> values_;
};

/// s-Hölder quotient (u_i − u_j)/|x_i − x_j|^s of a field over a node pair.
double holder_quotient(const Grid1D& grid, const Field& u, std::size_t i,
                       std::size_t j, double s);

/// Midpoint quadrature weight h²/|x_i − x_j| of the measure dx·dy/|x−y| on
/// the cell pair (i, j).
double pair_weight(const Grid1D& grid, std::size_t i, std::size_t j);

/// Precomputed geometry for the singular pair sums: every unordered node
/// pair {i, j} with at least one interior node, with the dμ weight and
/// |x_i−x_j|^{−s}. Pairs with both nodes exterior never contribute to the
/// star-restricted sums, and contribute zero to the full sums in the only
/// case they are admissible (Dirichlet fields vanish there), so they are not
/// stored. Diagonal pairs are excluded: the quotient on the diagonal cell is
/// a principal value and its midpoint contribution is dropped.
struct KernelPair {
  std::uint32_t i;
  std::uint32_t j;
  double weight;      // h² / |x_i − x_j|
  double inv_dist_s;  // |x_i − x_j|^{−s}
};

class KernelTable {
 public:
  KernelTable(const Grid1D& grid, double s);

  std::span<const KernelPair> pairs() const { return pairs_; }
  double s() const { return s_; }
  const Grid1D& grid() const { return *grid_; }

 private:
  const Grid1D* grid_;
  double s_;
  std::vector<KernelPair> pairs_;
};

}  // namespace fgl
