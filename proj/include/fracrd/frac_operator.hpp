#pragma once
// Matrix-free application of the signed diffusion term -D (-Laplacian)^(alpha/2)
// via forward transform, per-mode symbol multiply, inverse transform, plus a
// dense small-grid comparator assembled from explicitly sampled orthonormal
// eigenvectors.

#include <cstddef>
#include <vector>

#include "fracrd/core.hpp"
#include "fracrd/mesh_spectra.hpp"

namespace fracrd {

// Returns inverse(-mu * forward(f)); the sign convention is the right-hand
// side of the evolution equation, so steppers never handle signs.
Field apply_diffusion_operator(const Field& f, const SpectrumTable& spectra,
                               const std::vector<BoundaryKind>& bc);

struct DenseOperator {
  std::size_t n = 0;                 // total grid nodes
  std::vector<double> a;             // row-major n x n

  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  std::vector<double> multiply(const std::vector<double>& x) const;
};

// Dense A = Phi diag(-mu) Phi^T with Phi columns the sampled eigenfunctions,
// evaluated from the grid node coordinates and normalized by their measured
// discrete norm. Guarded to at most 4096 modes.
DenseOperator dense_operator_matrix(const Grid& grid, const SpectrumTable& spectra,
                                    const std::vector<BoundaryKind>& bc);

}  // namespace fracrd
