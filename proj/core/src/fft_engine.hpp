#pragma once

#include <complex>
#include <vector>

namespace mnv::detail {

// Unnormalized 2-D complex DFTs backed by FFTW, with a process-wide plan
// cache. forward uses exp(-2 pi i k j / n), backward exp(+2 pi i k j / n).
// Buffers are row-major n1 x n2 and may alias (in == out is allowed).
void fft2_forward(const std::complex<double>* in, std::complex<double>* out,
                  int n1, int n2);
void fft2_backward(const std::complex<double>* in, std::complex<double>* out,
                   int n1, int n2);
void fft1_forward(const std::complex<double>* in, std::complex<double>* out,
                  int n);
void fft1_backward(const std::complex<double>* in, std::complex<double>* out,
                   int n);

}  // namespace mnv::detail
