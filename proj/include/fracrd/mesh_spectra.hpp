#pragma once
// Eigenvalue/symbol tables for the fractional Laplacian on the cell-centered
// grid. A Dirichlet axis carries wavenumbers k*pi/(b-a) for k = 1..L, a
// Neumann axis (k-1)*pi/(b-a) for k = 1..L (the first entry is the zero
// mode). The spectral symbol of D (-Laplacian)^(alpha/2) at a mode is
//
//   mu = D * (sum over axes of lambda^2)^(alpha/2),   1 < alpha <= 2,
//
// which reduces to the classical Laplacian eigenvalue D * sum(lambda^2)
// at alpha = 2.

#include <cstddef>
#include <vector>

#include "fracrd/core.hpp"

namespace fracrd {

// Per-mode symbol table for one species (one diffusion coefficient).
struct SpectrumTable {
  std::vector<std::vector<double>> axis_wavenumbers;  // lambda per axis
  double alpha = 2.0;
  double diffusion = 1.0;
  std::vector<std::size_t> shape;  // mode counts, equal to the grid shape
  std::vector<double> symbol;      // mu, flat in CoeffField layout
};

std::vector<double> axis_wavenumbers(const Domain& domain, int axis,
                                     std::size_t n, BoundaryKind bc);

// Assembles the flat symbol array from per-axis wavenumbers.
// Requires 1 < alpha <= 2 and diffusion > 0.
std::vector<double> build_symbol(const std::vector<std::vector<double>>& wavenumbers,
                                 double alpha, double diffusion);

SpectrumTable build_spectrum(const Grid& grid, const std::vector<BoundaryKind>& bc,
                             double alpha, double diffusion);

}  // namespace fracrd
