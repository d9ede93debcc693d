#include "fracrd/mesh_spectra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracrd {

std::vector<double> axis_wavenumbers(const Domain& domain, int axis,
                                     std::size_t n, BoundaryKind bc) {
  validate_domain(domain);
  if (axis < 0 || axis >= domain.dim())
    throw std::invalid_argument("axis_wavenumbers: axis out of range");
  if (n < 2)
    throw std::invalid_argument("axis_wavenumbers: need n >= 2");
  const double len = domain.length(axis);
  std::vector<double> lambda(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double j = bc == BoundaryKind::Dirichlet ? static_cast<double>(k)
                                                   : static_cast<double>(k - 1);
    lambda[k - 1] = j * std::numbers::pi / len;
  }
  return lambda;
}

std::vector<double> build_symbol(const std::vector<std::vector<double>>& wavenumbers,
                                 double alpha, double diffusion) {
  if (!(alpha > 1.0) || !(alpha <= 2.0))
    throw std::invalid_argument("symbol: alpha must satisfy 1 < alpha <= 2");
  if (!(diffusion > 0.0))
    throw std::invalid_argument("symbol: diffusion must be positive");
  if (wavenumbers.empty() || wavenumbers.size() > 3)
    throw std::invalid_argument("symbol: need 1 to 3 axes");

  std::vector<std::size_t> shape(wavenumbers.size());
  for (std::size_t a = 0; a < wavenumbers.size(); ++a) shape[a] = wavenumbers[a].size();

  const std::size_t total = shape_total(shape);
  const bool classical = alpha == 2.0;
  const double half_alpha = 0.5 * alpha;

  std::vector<double> mu(total);
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t m = 0; m < total; ++m) {
    double s = 0.0;
    for (std::size_t a = 0; a < shape.size(); ++a) {
      const double lam = wavenumbers[a][idx[a]];
      s += lam * lam;
    }
    // At alpha = 2 skip pow entirely so the classical eigenvalue is exact.
    mu[m] = classical ? diffusion * s : diffusion * std::pow(s, half_alpha);
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return mu;
}

SpectrumTable build_spectrum(const Grid& grid, const std::vector<BoundaryKind>& bc,
                             double alpha, double diffusion) {
  if (bc.size() != grid.n.size())
    throw std::invalid_argument("spectrum: need one boundary kind per axis");
  SpectrumTable t;
  t.alpha = alpha;
  t.diffusion = diffusion;
  t.shape = grid.n;
  t.axis_wavenumbers.resize(grid.n.size());
  for (std::size_t a = 0; a < grid.n.size(); ++a)
    t.axis_wavenumbers[a] =
        axis_wavenumbers(grid.domain, static_cast<int>(a), grid.n[a], bc[a]);
  t.symbol = build_symbol(t.axis_wavenumbers, alpha, diffusion);
  return t;
}

}  // namespace fracrd
