#pragma once
// Discrete trigonometric transforms between Field and CoeffField on the
// cell-centered grid. A Dirichlet axis pairs with the type-II discrete sine
// transform (basis sin(k pi (2j-1) / (2L)), k = 1..L), a Neumann axis with
// the type-II discrete cosine transform (basis cos((k-1) pi (2j-1) / (2L))).
// Both use orthonormal scaling: each sampled eigenfunction has unit discrete
// norm, forward and inverse are transposes of one another, and the plain
// discrete 2-norm is preserved. Multi-dimensional fields are transformed
// axis by axis in increasing axis order (the result is order-independent).
//
// reference_forward is a deliberately slow O(L^2)-per-axis direct summation
// against explicitly sampled eigenfunctions; it shares no code with the fast
// path and serves as its oracle.

#include <cstddef>
#include <memory>
#include <vector>

#include "fracrd/core.hpp"

namespace fracrd {

namespace detail {
struct AxisKernel;
}

// Immutable per-(shape, bc) plan; safe to share across threads.
class TransformPlan {
 public:
  TransformPlan(std::vector<std::size_t> shape, std::vector<BoundaryKind> bc);
  ~TransformPlan();
  TransformPlan(TransformPlan&&) noexcept;
  TransformPlan& operator=(TransformPlan&&) noexcept;
  TransformPlan(const TransformPlan&) = delete;
  TransformPlan& operator=(const TransformPlan&) = delete;

  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<BoundaryKind>& boundary() const { return bc_; }

  CoeffField forward(const Field& f) const;
  Field inverse(const CoeffField& c) const;

  // In-place variants on shaped flat data (hot path for the stepper).
  // Inputs must be finite; shape must match the plan.
  void forward_values(std::vector<double>& data) const;
  void inverse_values(std::vector<double>& data) const;

 private:
  void apply(std::vector<double>& data, bool forward) const;

  std::vector<std::size_t> shape_;
  std::vector<BoundaryKind> bc_;
  std::vector<std::unique_ptr<detail::AxisKernel>> axes_;
};

// Convenience one-shot wrappers (build a plan per call).
CoeffField forward(const Field& f, const std::vector<BoundaryKind>& bc);
Field inverse(const CoeffField& c, const std::vector<BoundaryKind>& bc);

// Direct-summation oracle; rejects axes longer than 64 nodes.
CoeffField reference_forward(const Field& f, const std::vector<BoundaryKind>& bc);

// Transforms one axis of shaped flat data, leaving the other axes untouched.
void transform_axis(std::vector<double>& data, const std::vector<std::size_t>& shape,
                    std::size_t axis, BoundaryKind bc, bool forward);

// Values of the (unnormalized) sampled eigenfunction on one axis:
// Dirichlet sin(mode pi (2j-1)/(2L)), Neumann cos((mode-1) pi (2j-1)/(2L)),
// with 1-based mode in 1..L.
std::vector<double> sampled_eigenfunction(std::size_t length, std::size_t mode,
                                          BoundaryKind bc);

// Product of per-axis sampled eigenfunctions scaled by amplitude.
Field eigenfunction_field(const Grid& grid, const std::vector<std::size_t>& modes,
                          const std::vector<BoundaryKind>& bc, double amplitude = 1.0);

}  // namespace fracrd
