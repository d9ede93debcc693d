#pragma once
// Core value types shared across the solver: rectangular domains,
// cell-centered grids, and shaped real arrays in physical space (Field)
// and spectral space (CoeffField).

#include <cstddef>
#include <string>
#include <vector>

namespace fracrd {

enum class BoundaryKind { Dirichlet, Neumann };

std::string to_string(BoundaryKind bc);

// Rectangular box (a_1,b_1) x ... x (a_d,b_d), d in {1,2,3}.
struct Domain {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double length(int axis) const { return hi[axis] - lo[axis]; }

  static Domain interval(double a, double b) { return {{a}, {b}}; }
  static Domain rect(double ax, double bx, double ay, double by) {
    return {{ax, ay}, {bx, by}};
  }
};

// Throws std::invalid_argument unless hi > lo on every axis and dim in {1,2,3}.
void validate_domain(const Domain& d);

// Cell-centered grid: nodes[axis][j] = lo + (j + 1/2) h, h = (hi - lo) / n.
// The same staggered node set serves both boundary-condition kinds.
struct Grid {
  Domain domain;
  std::vector<std::size_t> n;
  std::vector<double> h;
  std::vector<std::vector<double>> nodes;

  int dim() const { return static_cast<int>(n.size()); }
  std::size_t total() const;
  double cell_volume() const;  // product of h over axes
};

Grid build_grid(const Domain& domain, const std::vector<std::size_t>& n);

// Real d-dimensional array in physical space, C (axis-0-major) layout.
struct Field {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

// Same layout in spectral space; entry (k_1-1, ..., k_d-1) holds the
// coefficient of the mode with 1-based per-axis indices k_i.
struct CoeffField {
  std::vector<std::size_t> shape;
  std::vector<double> coeffs;

  std::size_t size() const { return coeffs.size(); }
  double& operator[](std::size_t i) { return coeffs[i]; }
  double operator[](std::size_t i) const { return coeffs[i]; }
};

Field make_field(const Grid& grid, double fill = 0.0);
Field make_field(const std::vector<std::size_t>& shape, double fill = 0.0);
CoeffField make_coeff_field(const std::vector<std::size_t>& shape, double fill = 0.0);

std::size_t shape_total(const std::vector<std::size_t>& shape);
bool same_shape(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

// Row-major flat index of a multi-index (last axis contiguous).
std::size_t flat_index(const std::vector<std::size_t>& shape,
                       const std::vector<std::size_t>& idx);

bool all_finite(const double* data, std::size_t count);

double max_abs(const Field& f);

// Discrete L2 norm weighted by the cell volume: sqrt(prod(h) * sum f^2).
double grid_l2_norm(const Field& f, const Grid& grid);

}  // namespace fracrd
