#include "fgl/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fgl {

Grid1D Grid1D::build(double omega_lo, double omega_hi, std::size_t n_interior,
                     double collar_factor) {
  if (!(omega_lo < omega_hi)) {
    throw std::invalid_argument("grid: omega_lo must be < omega_hi");
  }
  if (n_interior < 4) {
    throw std::invalid_argument("grid: n_interior must be >= 4");
  }
  if (!(collar_factor > 0.0)) {
    throw std::invalid_argument("grid: collar_factor must be positive");
  }
  Grid1D grid;
  grid.omega_lo_ = omega_lo;
  grid.omega_hi_ = omega_hi;
  grid.n_interior_ = n_interior;
  grid.spacing_ = (omega_hi - omega_lo) / double(n_interior);
  grid.radius_ = collar_factor * (omega_hi - omega_lo);
  grid.per_side_ = std::size_t(std::ceil(grid.radius_ / grid.spacing_ - 1e-12));
  const std::size_t total = n_interior + 2 * grid.per_side_;
  grid.nodes_.resize(total);
  const double origin = omega_lo - double(grid.per_side_) * grid.spacing_;
  for (std::size_t i = 0; i < total; ++i) {
    grid.nodes_[i] = origin + (double(i) + 0.5) * grid.spacing_;
  }
  return grid;
}

std::size_t Grid1D::exterior_node(std::size_t ordinal) const {
  if (ordinal >= exterior_count()) {
    throw std::out_of_range("grid: exterior ordinal out of range");
  }
  return ordinal < per_side_ ? ordinal : ordinal + n_interior_;
}

std::size_t Grid1D::exterior_ordinal(std::size_t node_index) const {
  if (is_interior(node_index) || node_index >= node_count()) {
    throw std::out_of_range("grid: node is not exterior");
  }
  return node_index < per_side_ ? node_index : node_index - n_interior_;
}

Field::Field(const Grid1D& grid, BoundaryCondition bc)
    : grid_(&grid), bc_(bc), values_(grid.node_count(), 0.0) {}

Field::Field(const Grid1D& grid, BoundaryCondition bc,
             std::span<const double> values)
    : grid_(&grid), bc_(bc), values_(values.begin(), values.end()) {
  if (values_.size() != grid.node_count()) {
    throw std::invalid_argument("field: value count does not match the grid");
  }
  if (bc_ == BoundaryCondition::dirichlet) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!grid_->is_interior(i)) values_[i] = 0.0;
    }
  }
}

void Field::set(std::size_t i, double v) {
  if (i >= values_.size()) throw std::out_of_range("field: index out of range");
  if (bc_ == BoundaryCondition::dirichlet && !grid_->is_interior(i) &&
      v != 0.0) {
    throw std::invalid_argument(
        "field: Dirichlet exterior entries are identically zero");
  }
  values_[i] = v;
}

Field Field::retagged(BoundaryCondition bc) const {
  return Field(*grid_, bc, values_);
}

Field& Field::scale(double t) {
  for (double& v : values_) v *= t;
  return *this;
}

double holder_quotient(const Grid1D& grid, const Field& u, std::size_t i,
                       std::size_t j, double s) {
  if (i == j) {
    throw std::invalid_argument("holder_quotient: degenerate pair i == j");
  }
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("holder_quotient: s must lie in (0,1)");
  }
  const double d = std::abs(grid.node(i) - grid.node(j));
  return (u[i] - u[j]) / std::pow(d, s);
}

double pair_weight(const Grid1D& grid, std::size_t i, std::size_t j) {
  if (i == j) {
    throw std::invalid_argument("pair_weight: degenerate pair i == j");
  }
  const double h = grid.spacing();
  return h * h / std::abs(grid.node(i) - grid.node(j));
}

KernelTable::KernelTable(const Grid1D& grid, double s) : grid_(&grid), s_(s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("kernel table: s must lie in (0,1)");
  }
  const std::size_t n = grid.node_count();
  const std::size_t ib = grid.interior_begin();
  const std::size_t ie = ib + grid.interior_count();
  const double h = grid.spacing();
  pairs_.reserve(grid.interior_count() * (n - grid.interior_count()) +
                 grid.interior_count() * (grid.interior_count() - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    // j > i with at least one of (i, j) interior.
    std::size_t j_begin, j_end;
    if (grid.is_interior(i)) {
      j_begin = i + 1;
      j_end = n;
    } else if (i < ib) {
      j_begin = ib;  // left collar pairs only with interior nodes
      j_end = ie;
    } else {
      continue;  // right collar: every j > i is exterior too
    }
    for (std::size_t j = j_begin; j < j_end; ++j) {
      const double d = grid.node(j) - grid.node(i);
      pairs_.push_back(KernelPair{std::uint32_t(i), std::uint32_t(j),
                                  h * h / d, std::pow(d, -s)});
    }
  }
}

}  // namespace fgl
