#pragma once
// n points in R^d, row-major flat storage.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace standardness {

struct SampleCloud {
  std::vector<double> data;  // n * d doubles, point i at [i*d, (i+1)*d)
  std::int64_t n = 0;
  int d = 0;

  SampleCloud() = default;
  SampleCloud(std::vector<double> data_, std::int64_t n_, int d_)
      : data(std::move(data_)), n(n_), d(d_) {
    if (n < 1 || d < 1 || data.size() != static_cast<size_t>(n) * d)
      throw std::invalid_argument("sample cloud shape mismatch");
  }

  std::span<const double> point(std::int64_t i) const {
    return {data.data() + i * d, static_cast<size_t>(d)};
  }
};

}  // namespace standardness
