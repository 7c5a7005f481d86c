#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace salaffect::fft {

using Complex = std::complex<double>;

/// In-place DFT of any length (FFTW). The inverse is scaled by 1/n.
void transform(std::span<Complex> data, bool inverse);

/// Row-major 2-D DFT, inverse scaled by 1/(w*h).
void transform_2d(std::span<Complex> data, std::size_t width, std::size_t height, bool inverse);

}  // namespace salaffect::fft
