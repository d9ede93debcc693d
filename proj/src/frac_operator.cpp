#include "fracrd/frac_operator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracrd/transforms.hpp"

namespace fracrd {

Field apply_diffusion_operator(const Field& f, const SpectrumTable& spectra,
                               const std::vector<BoundaryKind>& bc) {
  if (!same_shape(f.shape, spectra.shape))
    throw std::invalid_argument("apply: field shape does not match spectrum table");
  TransformPlan plan(f.shape, bc);
  CoeffField c = plan.forward(f);
  for (std::size_t m = 0; m < c.size(); ++m) c.coeffs[m] *= -spectra.symbol[m];
  return plan.inverse(c);
}

std::vector<double> DenseOperator::multiply(const std::vector<double>& x) const {
  if (x.size() != n) throw std::invalid_argument("dense operator: size mismatch");
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const double* row = a.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseOperator dense_operator_matrix(const Grid& grid, const SpectrumTable& spectra,
                                    const std::vector<BoundaryKind>& bc) {
  if (!same_shape(grid.n, spectra.shape))
    throw std::invalid_argument("dense operator: grid does not match spectrum table");
  if (bc.size() != grid.n.size())
    throw std::invalid_argument("dense operator: need one boundary kind per axis");
  const std::size_t total = grid.total();
  if (total > 4096)
    throw std::invalid_argument("dense operator: exceeds the 4096-mode guard");

  // Per-axis eigenfunctions evaluated from the actual node coordinates,
  // sin(k pi (x-a)/(b-a)) or cos((k-1) pi (x-a)/(b-a)), then normalized by
  // their measured norm. This is a separate route from the transform module's
  // index-based sampling.
  const std::size_t dim = grid.n.size();
  std::vector<std::vector<std::vector<double>>> axis_phi(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const double lo = grid.domain.lo[a];
    const double len = grid.domain.length(static_cast<int>(a));
    axis_phi[a].resize(grid.n[a]);
    for (std::size_t k = 1; k <= grid.n[a]; ++k) {
      std::vector<double>& phi = axis_phi[a][k - 1];
      phi.resize(grid.n[a]);
      for (std::size_t j = 0; j < grid.n[a]; ++j) {
        const double s = (grid.nodes[a][j] - lo) / len;
        phi[j] = bc[a] == BoundaryKind::Dirichlet
                     ? std::sin(static_cast<double>(k) * std::numbers::pi * s)
                     : std::cos(static_cast<double>(k - 1) * std::numbers::pi * s);
      }
      double nrm2 = 0.0;
      for (double v : phi) nrm2 += v * v;
      const double scale = 1.0 / std::sqrt(nrm2);
      for (double& v : phi) v *= scale;
    }
  }

  // Phi column per mode (tensor product), A = Phi diag(-mu) Phi^T accumulated
  // one rank-1 term at a time.
  DenseOperator op;
  op.n = total;
  op.a.assign(total * total, 0.0);

  std::vector<std::size_t> mode(dim, 0);
  std::vector<double> col(total);
  for (std::size_t m = 0; m < total; ++m) {
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t i = 0; i < total; ++i) {
      double v = 1.0;
      for (std::size_t a = 0; a < dim; ++a) v *= axis_phi[a][mode[a]][idx[a]];
      col[i] = v;
      for (std::size_t a = dim; a-- > 0;) {
        if (++idx[a] < grid.n[a]) break;
        idx[a] = 0;
      }
    }
    const double w = -spectra.symbol[m];
    for (std::size_t i = 0; i < total; ++i) {
      const double wi = w * col[i];
      double* row = op.a.data() + i * total;
      for (std::size_t j = 0; j < total; ++j) row[j] += wi * col[j];
    }
    for (std::size_t a = dim; a-- > 0;) {
      if (++mode[a] < grid.n[a]) break;
      mode[a] = 0;
    }
  }
  return op;
}

}  // namespace fracrd
