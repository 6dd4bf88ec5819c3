#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace kreisslab::fft {

using cplx = std::complex<double>;

/// In place: data[j] <- sum_n data[n] exp(+2 pi i n j / m).
/// Turns coefficients (indexed mod m) into samples at gamma_j = e^{2 pi i j/m}.
void to_samples(std::span<cplx> data);

/// In place inverse of to_samples, including the 1/m factor.
void to_coefficients(std::span<cplx> data);

/// Smallest power of two >= n (and >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace kreisslab::fft
