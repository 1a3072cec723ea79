// include/derev/core/tensor.h

// Copyright 2026  Derev Toolkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DEREV_CORE_TENSOR_H_
#define DEREV_CORE_TENSOR_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace derev {

using Shape = std::vector<int64_t>;

inline int64_t NumElements(const Shape& shape) {
  int64_t n = 1;
  for (int64_t d : shape) {
    if (d <= 0) throw std::invalid_argument("tensor dimension must be > 0");
    n *= d;
  }
  return n;
}

inline std::string ShapeToString(const Shape& shape) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ")";
  return os.str();
}

// Dense row-major tensor.  Training uses Tensor<float>; gradient verification
// instantiates the same code with double.
template <typename T>
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(Shape shape)
      : shape_(std::move(shape)), data_(NumElements(shape_), T(0)) {}

  Tensor(Shape shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (static_cast<int64_t>(data_.size()) != NumElements(shape_)) {
      throw std::invalid_argument("tensor data length does not match shape " +
                                  ShapeToString(shape_));
    }
  }

  static Tensor Zeros(Shape shape) { return Tensor(std::move(shape)); }

  static Tensor Full(Shape shape, T value) {
    Tensor t(std::move(shape));
    for (T& v : t.data_) v = value;
    return t;
  }

  const Shape& shape() const { return shape_; }
  int64_t dim(size_t i) const { return shape_.at(i); }
  size_t rank() const { return shape_.size(); }
  int64_t size() const { return static_cast<int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& vec() { return data_; }
  const std::vector<T>& vec() const { return data_; }

  T& operator[](int64_t i) { return data_[i]; }
  const T& operator[](int64_t i) const { return data_[i]; }

  // 2-D / 3-D accessors (row-major).
  T& at(int64_t r, int64_t c) { return data_[r * shape_[1] + c]; }
  const T& at(int64_t r, int64_t c) const { return data_[r * shape_[1] + c]; }
  T& at(int64_t i, int64_t j, int64_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  const T& at(int64_t i, int64_t j, int64_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  // Pointer to row j of step i in a {S,B,D} tensor.
  T* row_ptr(int64_t i, int64_t j) {
    return data_.data() + (i * shape_[1] + j) * shape_[2];
  }
  const T* row_ptr(int64_t i, int64_t j) const {
    return data_.data() + (i * shape_[1] + j) * shape_[2];
  }

  // Same data, new shape (element counts must agree).
  Tensor Reshaped(Shape new_shape) const& {
    return Tensor(std::move(new_shape), data_);
  }
  Tensor Reshaped(Shape new_shape) && {
    return Tensor(std::move(new_shape), std::move(data_));
  }

  void Fill(T value) {
    for (T& v : data_) v = value;
  }
  void SetZero() { Fill(T(0)); }

  bool AllFinite() const {
    for (T v : data_) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }

  template <typename U>
  Tensor<U> Cast() const {
    std::vector<U> out(data_.size());
    for (size_t i = 0; i < data_.size(); ++i) out[i] = static_cast<U>(data_[i]);
    return Tensor<U>(shape_, std::move(out));
  }

  bool SameShape(const Tensor& other) const { return shape_ == other.shape_; }

 private:
  Shape shape_;
  std::vector<T> data_;
};

template <typename T>
void CheckFinite(const Tensor<T>& t, const std::string& context) {
  if (!t.AllFinite()) {
    throw std::runtime_error("non-finite values in " + context);
  }
}

template <typename T>
void CheckSameShape(const Tensor<T>& a, const Tensor<T>& b,
                    const std::string& context) {
  if (!a.SameShape(b)) {
    throw std::invalid_argument(context + ": shape mismatch " +
                                ShapeToString(a.shape()) + " vs " +
                                ShapeToString(b.shape()));
  }
}

}  // namespace derev

#endif  // DEREV_CORE_TENSOR_H_
