#pragma once

#include <complex>
#include <vector>

namespace wigsim {

// In-place power-of-two complex FFT (FFTW backend).  Sign convention:
// forward applies sum_j a_j exp(-2*pi*i*j*k/n), unnormalized; backward is
// its unnormalized inverse.  Plans are cached per length and may be
// executed concurrently from several threads.
void fft_forward(std::vector<std::complex<double>>& a);
void fft_backward(std::vector<std::complex<double>>& a);

}  // namespace wigsim
