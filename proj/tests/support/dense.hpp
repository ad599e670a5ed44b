#pragma once

// Dense row-major matrices for brute-force oracles.

#include <cmath>
#include <cstddef>
#include <vector>

#include "lsc/tensor/tensor.hpp"

namespace lsc::testing {

using Mat = std::vector<std::vector<double>>;

inline Mat to_mat(const Tensor& t) {
  Mat m(t.rows(), std::vector<double>(t.cols()));
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      m[i][j] = t.at(i, j);
    }
  }
  return m;
}

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<double>(c, 0.0)); }

inline Mat mm(const Mat& a, const Mat& b) {
  Mat out = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < out[i].size(); ++j) {
        out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

inline Mat madd(Mat a, const Mat& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      a[i][j] += b[i][j];
    }
  }
  return a;
}

inline Mat melu(Mat a) {
  for (auto& row : a) {
    for (auto& x : row) {
      x = x > 0 ? x : std::expm1(x);
    }
  }
  return a;
}

inline double max_abs_diff(const Tensor& t, const Mat& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      worst = std::max(worst, std::abs(t.at(i, j) - m[i][j]));
    }
  }
  return worst;
}

}  // namespace lsc::testing
