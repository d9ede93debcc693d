#include "fracrd/fft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace fracrd::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

Plan::Plan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("fft: length must be positive");
  pow2_ = is_pow2(n);
  padded_ = pow2_ ? n : next_pow2(2 * n - 1);

  bitrev_.assign(padded_, 0);
  std::size_t log2m = 0;
  for (std::size_t x = padded_; x > 1; x >>= 1) ++log2m;
  for (std::size_t i = 1; i < padded_; ++i)
    bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) << (log2m - 1));

  twiddle_.resize(padded_ / 2);
  for (std::size_t k = 0; k < padded_ / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(padded_);
    twiddle_[k] = {std::cos(ang), std::sin(ang)};
  }

  if (!pow2_) {
    // chirp_[j] = e^{-i pi j^2 / n}; reduce j^2 mod 2n so the angle stays small.
    chirp_.resize(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t q = (static_cast<std::uint64_t>(j) * j) % two_n;
      const double ang =
          -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
      chirp_[j] = {std::cos(ang), std::sin(ang)};
    }
    // Wrapped kernel b[m] = conj(chirp_[|m|]) for m in (-(n-1), n-1].
    chirp_kernel_.assign(padded_, cplx{0.0, 0.0});
    chirp_kernel_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n; ++j) {
      chirp_kernel_[j] = std::conj(chirp_[j]);
      chirp_kernel_[padded_ - j] = std::conj(chirp_[j]);
    }
    pow2_forward(chirp_kernel_.data());
  }
}

// In-place radix-2 transform of length padded_.
void Plan::pow2_forward(cplx* a) const {
  const std::size_t m = padded_;
  if (m <= 1) return;
  for (std::size_t i = 1; i < m; ++i)
    if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = m / len;
    for (std::size_t start = 0; start < m; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx w = twiddle_[k * stride];
        const cplx t = a[start + k + half] * w;
        a[start + k + half] = a[start + k] - t;
        a[start + k] += t;
      }
    }
  }
}

void Plan::forward(cplx* data, cplx* scratch) const {
  if (pow2_) {
    pow2_forward(data);
    return;
  }
  // Bluestein: X[k] = chirp[k] * (a conv b)[k] with a[j] = x[j] chirp[j].
  for (std::size_t j = 0; j < n_; ++j) scratch[j] = data[j] * chirp_[j];
  for (std::size_t j = n_; j < padded_; ++j) scratch[j] = cplx{0.0, 0.0};
  pow2_forward(scratch);
  for (std::size_t j = 0; j < padded_; ++j)
    scratch[j] = std::conj(scratch[j] * chirp_kernel_[j]);
  pow2_forward(scratch);
  const double inv_m = 1.0 / static_cast<double>(padded_);
  for (std::size_t k = 0; k < n_; ++k)
    data[k] = chirp_[k] * std::conj(scratch[k]) * inv_m;
}

void Plan::inverse(cplx* data, cplx* scratch) const {
  for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]);
  forward(data, scratch);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]) * inv_n;
}

}  // namespace fracrd::fft
