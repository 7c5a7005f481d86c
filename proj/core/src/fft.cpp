#include "salaffect/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "salaffect/error.hpp"

namespace salaffect::fft {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void execute(std::span<Complex> data, int rank, const int* dims, bool inverse) {
  if (data.empty()) return;
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = nullptr;
  {
    const std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE leaves the input untouched while planning
    plan = fftw_plan_dft(rank, dims, buffer, buffer, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw Error(ErrorCode::InvalidArgument, "FFTW could not plan the transform");
  fftw_execute(plan);
  {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& c : data) c *= scale;
  }
}

}  // namespace

void transform(std::span<Complex> data, bool inverse) {
  const int dims[1] = {static_cast<int>(data.size())};
  execute(data, 1, dims, inverse);
}

void transform_2d(std::span<Complex> data, std::size_t width, std::size_t height, bool inverse) {
  if (data.size() != width * height) throw Error(ErrorCode::DimensionMismatch, "FFT buffer does not match width x height");
  const int dims[2] = {static_cast<int>(height), static_cast<int>(width)};  // row-major
  execute(data, 2, dims, inverse);
}

}  // namespace salaffect::fft
