#include "fracrd/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracrd/fft.hpp"
#include "fracrd/parallel.hpp"

namespace fracrd {

namespace {

struct Workspace {
  std::vector<double> a, b;
  std::vector<fft::cplx> v, fs;
  explicit Workspace(std::size_t L, std::size_t fft_scratch)
      : a(L), b(L), v(L), fs(fft_scratch) {}
};

}  // namespace

// One axis of the tensor-product transform: an orthonormal DST-II (Dirichlet)
// or DCT-II (Neumann) of length L plus their type-III inverses, all routed
// through a complex FFT of the same length via even/odd reordering.
struct detail::AxisKernel {
  std::size_t L;
  BoundaryKind bc;
  fft::Plan plan;
  std::vector<fft::cplx> tw;              // e^{-i pi k / (2L)}
  std::vector<double> norm_f, norm_i;

  AxisKernel(std::size_t length, BoundaryKind kind)
      : L(length), bc(kind), plan(length), tw(length), norm_f(length), norm_i(length) {
    for (std::size_t k = 0; k < L; ++k) {
      const double ang = -std::numbers::pi * static_cast<double>(k) /
                         (2.0 * static_cast<double>(L));
      tw[k] = {std::cos(ang), std::sin(ang)};
    }
    const double s1 = std::sqrt(1.0 / static_cast<double>(L));
    const double s2 = std::sqrt(2.0 / static_cast<double>(L));
    for (std::size_t k = 0; k < L; ++k) {
      const bool unit_norm_mode =
          bc == BoundaryKind::Neumann ? (k == 0) : (k == L - 1);
      norm_f[k] = unit_norm_mode ? s1 : s2;
      norm_i[k] = 1.0 / norm_f[k];
    }
  }

  Workspace make_workspace() const { return Workspace(L, plan.scratch_size()); }

  // Unnormalized DCT-II: out[k] = sum_j x[j] cos(pi k (2j+1) / (2L)).
  void dct2_core(const double* x, double* out, Workspace& ws) const {
    for (std::size_t i = 0; 2 * i < L; ++i) ws.v[i] = fft::cplx{x[2 * i], 0.0};
    for (std::size_t i = 0; 2 * i + 1 < L; ++i)
      ws.v[L - 1 - i] = fft::cplx{x[2 * i + 1], 0.0};
    plan.forward(ws.v.data(), ws.fs.data());
    for (std::size_t k = 0; k < L; ++k)
      out[k] = tw[k].real() * ws.v[k].real() - tw[k].imag() * ws.v[k].imag();
  }

  // Exact inverse of dct2_core.
  void dct2_core_inverse(const double* c, double* out, Workspace& ws) const {
    ws.v[0] = fft::cplx{c[0], 0.0};
    for (std::size_t k = 1; k < L; ++k)
      ws.v[k] = std::conj(tw[k]) * fft::cplx{c[k], -c[L - k]};
    plan.inverse(ws.v.data(), ws.fs.data());
    for (std::size_t i = 0; 2 * i < L; ++i) out[2 * i] = ws.v[i].real();
    for (std::size_t i = 0; 2 * i + 1 < L; ++i) out[2 * i + 1] = ws.v[L - 1 - i].real();
  }

  void forward_line(double* line, Workspace& ws) const {
    if (bc == BoundaryKind::Neumann) {
      dct2_core(line, ws.a.data(), ws);
      for (std::size_t k = 0; k < L; ++k) line[k] = ws.a[k] * norm_f[k];
    } else {
      // DST-II(x)[k] = DCT-II(y)[L-1-k] with y[j] = (-1)^j x[j].
      for (std::size_t j = 0; j < L; ++j) ws.a[j] = (j & 1) ? -line[j] : line[j];
      dct2_core(ws.a.data(), ws.b.data(), ws);
      for (std::size_t k = 0; k < L; ++k) line[k] = ws.b[L - 1 - k] * norm_f[k];
    }
  }

  void inverse_line(double* line, Workspace& ws) const {
    if (bc == BoundaryKind::Neumann) {
      for (std::size_t k = 0; k < L; ++k) ws.a[k] = line[k] * norm_i[k];
      dct2_core_inverse(ws.a.data(), ws.b.data(), ws);
      for (std::size_t j = 0; j < L; ++j) line[j] = ws.b[j];
    } else {
      for (std::size_t m = 0; m < L; ++m)
        ws.a[m] = line[L - 1 - m] * norm_i[L - 1 - m];
      dct2_core_inverse(ws.a.data(), ws.b.data(), ws);
      for (std::size_t j = 0; j < L; ++j) line[j] = (j & 1) ? -ws.b[j] : ws.b[j];
    }
  }
};

namespace {

// Applies a kernel along one axis of shaped flat data.
void apply_axis(std::vector<double>& data, const std::vector<std::size_t>& shape,
                std::size_t axis, const detail::AxisKernel& kern, bool forward) {
  const std::size_t L = shape[axis];
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) stride *= shape[a];
  const std::size_t block = L * stride;
  const std::size_t lines = data.size() / L;
  double* base = data.data();

  parallel_for(lines, [&](std::size_t lo, std::size_t hi) {
    Workspace ws = kern.make_workspace();
    std::vector<double> line(L);
    for (std::size_t ell = lo; ell < hi; ++ell) {
      const std::size_t outer = ell / stride;
      const std::size_t inner = ell % stride;
      double* p = base + outer * block + inner;
      if (stride == 1) {
        if (forward)
          kern.forward_line(p, ws);
        else
          kern.inverse_line(p, ws);
      } else {
        for (std::size_t j = 0; j < L; ++j) line[j] = p[j * stride];
        if (forward)
          kern.forward_line(line.data(), ws);
        else
          kern.inverse_line(line.data(), ws);
        for (std::size_t j = 0; j < L; ++j) p[j * stride] = line[j];
      }
    }
  });
}

void require_finite(const std::vector<double>& data, const char* what) {
  if (!all_finite(data.data(), data.size()))
    throw std::invalid_argument(std::string(what) + ": non-finite input");
}

}  // namespace

TransformPlan::TransformPlan(std::vector<std::size_t> shape, std::vector<BoundaryKind> bc)
    : shape_(std::move(shape)), bc_(std::move(bc)) {
  if (shape_.empty() || shape_.size() > 3)
    throw std::invalid_argument("transforms: dim must be 1, 2 or 3");
  if (bc_.size() != shape_.size())
    throw std::invalid_argument("transforms: need one boundary kind per axis");
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (shape_[a] == 0) throw std::invalid_argument("transforms: empty axis");
    axes_.push_back(std::make_unique<detail::AxisKernel>(shape_[a], bc_[a]));
  }
}

TransformPlan::~TransformPlan() = default;
TransformPlan::TransformPlan(TransformPlan&&) noexcept = default;
TransformPlan& TransformPlan::operator=(TransformPlan&&) noexcept = default;

void TransformPlan::apply(std::vector<double>& data, bool forward) const {
  if (data.size() != shape_total(shape_))
    throw std::invalid_argument("transforms: data size does not match plan shape");
  for (std::size_t a = 0; a < axes_.size(); ++a)
    apply_axis(data, shape_, a, *axes_[a], forward);
}

void TransformPlan::forward_values(std::vector<double>& data) const {
  require_finite(data, "forward");
  apply(data, true);
}

void TransformPlan::inverse_values(std::vector<double>& data) const {
  require_finite(data, "inverse");
  apply(data, false);
}

CoeffField TransformPlan::forward(const Field& f) const {
  if (!same_shape(f.shape, shape_))
    throw std::invalid_argument("forward: field shape does not match plan");
  CoeffField c{f.shape, f.values};
  require_finite(c.coeffs, "forward");
  apply(c.coeffs, true);
  return c;
}

Field TransformPlan::inverse(const CoeffField& c) const {
  if (!same_shape(c.shape, shape_))
    throw std::invalid_argument("inverse: coefficient shape does not match plan");
  Field f{c.shape, c.coeffs};
  require_finite(f.values, "inverse");
  apply(f.values, false);
  return f;
}

CoeffField forward(const Field& f, const std::vector<BoundaryKind>& bc) {
  return TransformPlan(f.shape, bc).forward(f);
}

Field inverse(const CoeffField& c, const std::vector<BoundaryKind>& bc) {
  return TransformPlan(c.shape, bc).inverse(c);
}

void transform_axis(std::vector<double>& data, const std::vector<std::size_t>& shape,
                    std::size_t axis, BoundaryKind bc, bool forward) {
  if (axis >= shape.size()) throw std::invalid_argument("transform_axis: bad axis");
  if (data.size() != shape_total(shape))
    throw std::invalid_argument("transform_axis: data size does not match shape");
  detail::AxisKernel kern(shape[axis], bc);
  apply_axis(data, shape, axis, kern, forward);
}

std::vector<double> sampled_eigenfunction(std::size_t length, std::size_t mode,
                                          BoundaryKind bc) {
  if (mode < 1 || mode > length)
    throw std::invalid_argument("eigenfunction: mode must be in 1..L");
  std::vector<double> phi(length);
  const double pi = std::numbers::pi;
  for (std::size_t j = 0; j < length; ++j) {
    const double frac = static_cast<double>(2 * j + 1) / (2.0 * static_cast<double>(length));
    phi[j] = bc == BoundaryKind::Dirichlet
                 ? std::sin(static_cast<double>(mode) * pi * frac)
                 : std::cos(static_cast<double>(mode - 1) * pi * frac);
  }
  return phi;
}

Field eigenfunction_field(const Grid& grid, const std::vector<std::size_t>& modes,
                          const std::vector<BoundaryKind>& bc, double amplitude) {
  if (modes.size() != grid.n.size() || bc.size() != grid.n.size())
    throw std::invalid_argument("eigenfunction_field: per-axis modes and bc required");
  std::vector<std::vector<double>> phi(grid.n.size());
  for (std::size_t a = 0; a < grid.n.size(); ++a)
    phi[a] = sampled_eigenfunction(grid.n[a], modes[a], bc[a]);

  Field f = make_field(grid);
  std::vector<std::size_t> idx(grid.n.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double v = amplitude;
    for (std::size_t a = 0; a < grid.n.size(); ++a) v *= phi[a][idx[a]];
    f.values[i] = v;
    for (std::size_t a = grid.n.size(); a-- > 0;) {
      if (++idx[a] < grid.n[a]) break;
      idx[a] = 0;
    }
  }
  return f;
}

CoeffField reference_forward(const Field& f, const std::vector<BoundaryKind>& bc) {
  if (bc.size() != f.shape.size())
    throw std::invalid_argument("reference_forward: need one boundary kind per axis");
  require_finite(f.values, "reference_forward");
  for (std::size_t len : f.shape)
    if (len > 64)
      throw std::invalid_argument("reference_forward: axis exceeds the 64-node guard");

  CoeffField out{f.shape, f.values};
  for (std::size_t axis = 0; axis < f.shape.size(); ++axis) {
    const std::size_t L = f.shape[axis];
    // Row k of the direct transform is the sampled eigenfunction of mode
    // k+1 scaled by its measured (not assumed) discrete norm.
    std::vector<std::vector<double>> rows(L);
    for (std::size_t k = 0; k < L; ++k) {
      rows[k] = sampled_eigenfunction(L, k + 1, bc[axis]);
      double nrm2 = 0.0;
      for (double v : rows[k]) nrm2 += v * v;
      const double scale = 1.0 / std::sqrt(nrm2);
      for (double& v : rows[k]) v *= scale;
    }

    std::size_t stride = 1;
    for (std::size_t a = axis + 1; a < f.shape.size(); ++a) stride *= f.shape[a];
    const std::size_t block = L * stride;
    const std::size_t lines = out.size() / L;
    std::vector<double> line(L);
    for (std::size_t ell = 0; ell < lines; ++ell) {
      double* p = out.coeffs.data() + (ell / stride) * block + (ell % stride);
      for (std::size_t j = 0; j < L; ++j) line[j] = p[j * stride];
      for (std::size_t k = 0; k < L; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < L; ++j) s += rows[k][j] * line[j];
        p[k * stride] = s;
      }
    }
  }
  return out;
}

}  // namespace fracrd
