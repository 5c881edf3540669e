#pragma once

#include <cstddef>
#include <vector>

namespace sasaki {

/// Dense rank-3 array indexed (a, b, c).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int n0, int n1, int n2) : n0_(n0), n1_(n1), n2_(n2), data_(std::size_t(n0) * n1 * n2, 0.0) {}
  explicit Tensor3(int n) : Tensor3(n, n, n) {}

  double& operator()(int a, int b, int c) { return data_[(std::size_t(a) * n1_ + b) * n2_ + c]; }
  double operator()(int a, int b, int c) const { return data_[(std::size_t(a) * n1_ + b) * n2_ + c]; }

  int extent(int k) const { return k == 0 ? n0_ : (k == 1 ? n1_ : n2_); }
  const std::vector<double>& data() const { return data_; }

 private:
  int n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<double> data_;
};

/// Dense rank-4 array with uniform extent n.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(std::size_t(n) * n * n * n, 0.0) {}

  double& operator()(int a, int b, int c, int d) { return data_[((std::size_t(a) * n_ + b) * n_ + c) * n_ + d]; }
  double operator()(int a, int b, int c, int d) const {
    return data_[((std::size_t(a) * n_ + b) * n_ + c) * n_ + d];
  }
  int extent() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

}  // namespace sasaki
