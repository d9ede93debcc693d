#include "fracrd/core.hpp"

#include <cmath>
#include <stdexcept>

namespace fracrd {

std::string to_string(BoundaryKind bc) {
  return bc == BoundaryKind::Dirichlet ? "dirichlet" : "neumann";
}

void validate_domain(const Domain& d) {
  if (d.lo.size() != d.hi.size())
    throw std::invalid_argument("domain: lo and hi must have the same length");
  if (d.lo.empty() || d.lo.size() > 3)
    throw std::invalid_argument("domain: dim must be 1, 2 or 3");
  for (std::size_t a = 0; a < d.lo.size(); ++a) {
    if (!(d.hi[a] > d.lo[a]))
      throw std::invalid_argument("domain: hi must exceed lo on axis " +
                                  std::to_string(a));
  }
}

std::size_t Grid::total() const {
  std::size_t t = 1;
  for (std::size_t na : n) t *= na;
  return t;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (double ha : h) v *= ha;
  return v;
}

Grid build_grid(const Domain& domain, const std::vector<std::size_t>& n) {
  validate_domain(domain);
  if (n.size() != domain.lo.size())
    throw std::invalid_argument("grid: need one node count per axis");
  Grid g;
  g.domain = domain;
  g.n = n;
  g.h.resize(n.size());
  g.nodes.resize(n.size());
  for (std::size_t a = 0; a < n.size(); ++a) {
    if (n[a] < 2)
      throw std::invalid_argument("grid: need at least 2 nodes per axis, got " +
                                  std::to_string(n[a]) + " on axis " +
                                  std::to_string(a));
    const double h = domain.length(static_cast<int>(a)) / static_cast<double>(n[a]);
    g.h[a] = h;
    g.nodes[a].resize(n[a]);
    for (std::size_t j = 0; j < n[a]; ++j)
      g.nodes[a][j] = domain.lo[a] + (static_cast<double>(j) + 0.5) * h;
  }
  return g;
}

Field make_field(const Grid& grid, double fill) {
  return Field{grid.n, std::vector<double>(grid.total(), fill)};
}

Field make_field(const std::vector<std::size_t>& shape, double fill) {
  return Field{shape, std::vector<double>(shape_total(shape), fill)};
}

CoeffField make_coeff_field(const std::vector<std::size_t>& shape, double fill) {
  return CoeffField{shape, std::vector<double>(shape_total(shape), fill)};
}

std::size_t shape_total(const std::vector<std::size_t>& shape) {
  std::size_t t = 1;
  for (std::size_t s : shape) t *= s;
  return t;
}

bool same_shape(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return a == b;
}

std::size_t flat_index(const std::vector<std::size_t>& shape,
                       const std::vector<std::size_t>& idx) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) flat = flat * shape[a] + idx[a];
  return flat;
}

bool all_finite(const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    if (!std::isfinite(data[i])) return false;
  return true;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double grid_l2_norm(const Field& f, const Grid& grid) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(grid.cell_volume() * s);
}

}  // namespace fracrd
