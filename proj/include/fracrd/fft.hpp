#pragma once
// Complex-to-complex FFT backing the fast trigonometric transforms.
// Power-of-two lengths use an iterative radix-2 kernel; all other lengths go
// through Bluestein's chirp-z reduction onto a padded power-of-two FFT, so
// every length is O(n log n).

#include <complex>
#include <cstddef>
#include <vector>

namespace fracrd::fft {

using cplx = std::complex<double>;

// Immutable after construction and safe to share across threads; callers
// supply scratch so concurrent transforms never contend.
class Plan {
 public:
  explicit Plan(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t scratch_size() const { return pow2_ ? 0 : padded_; }

  // In-place transform of data[0..n): forward uses e^{-2 pi i jk/n},
  // inverse includes the 1/n factor.
  void forward(cplx* data, cplx* scratch) const;
  void inverse(cplx* data, cplx* scratch) const;

 private:
  void pow2_forward(cplx* data) const;

  std::size_t n_ = 0;
  bool pow2_ = true;
  std::size_t padded_ = 0;             // power-of-two working length
  std::vector<std::size_t> bitrev_;    // permutation for the padded length
  std::vector<cplx> twiddle_;          // e^{-2 pi i k/padded}, k < padded/2
  std::vector<cplx> chirp_;            // e^{-i pi k^2 / n}, k < n
  std::vector<cplx> chirp_kernel_;     // forward FFT of the wrapped conjugate chirp
};

}  // namespace fracrd::fft
