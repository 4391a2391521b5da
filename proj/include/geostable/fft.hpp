#pragma once

#include <complex>
#include <vector>

namespace geostable::fft {

/// In-place unnormalized DFT: X_k = Σ_j x_j exp(sign·2πi jk/n), sign = ±1.
/// FFTW planning is serialized internally; execution is not.
void transform(std::vector<std::complex<double>>& data, int sign);

}  // namespace geostable::fft
