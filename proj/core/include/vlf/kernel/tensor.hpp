/* Copyright 2026 The VLF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef VLF_KERNEL_TENSOR_HPP_
#define VLF_KERNEL_TENSOR_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace vlf::kernel {

// Dense row-major array of doubles. Rank 1 tensors are vectors, rank 2
// tensors are matrices; the kernel never needs anything higher.
class Tensor {
 public:
  Tensor() = default;
  // Zero-filled tensor of the given shape. Every dimension must be positive.
  explicit Tensor(std::vector<std::size_t> shape);
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values);
  static Tensor matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor identity(std::size_t n);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  // Matrix view. A rank-1 tensor of length n reads as a 1 x n row.
  std::size_t rows() const;
  std::size_t cols() const;

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols() + c];
  }

  std::span<double> row(std::size_t r);
  std::span<const double> row(std::size_t r) const;

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  const std::vector<double>& data() const { return data_; }

  void fill(double v);
  bool all_finite() const;
  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  // "[2x3]" style rendering for error messages.
  std::string shape_string() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

std::string shape_string(const std::vector<std::size_t>& shape);

// Elementwise helpers used by layers. All of them check shapes.
Tensor add(const Tensor& a, const Tensor& b);
void add_inplace(Tensor& a, const Tensor& b);
void scale_inplace(Tensor& a, double s);

// a[m x k] * b[k x n]
Tensor matmul(const Tensor& a, const Tensor& b);
// a^T * b, a[k x m], b[k x n] -> [m x n]
Tensor matmul_tn(const Tensor& a, const Tensor& b);
// a * b^T, a[m x k], b[n x k] -> [m x n]
Tensor matmul_nt(const Tensor& a, const Tensor& b);

Tensor transpose(const Tensor& a);

// Selects rows of a matrix, in the given order.
Tensor gather_rows(const Tensor& a, std::span<const std::size_t> rows);
// Horizontal concatenation of two matrices with equal row counts.
Tensor concat_cols(const Tensor& a, const Tensor& b);

double sum(const Tensor& a);
double max_abs(const Tensor& a);

}  // namespace vlf::kernel

#endif  // VLF_KERNEL_TENSOR_HPP_
