// tests/core_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "derev/core/adam.h"
#include "derev/core/gradcheck.h"
#include "derev/core/init.h"
#include "derev/core/kernels.h"
#include "derev/core/param.h"
#include "derev/core/rng.h"
#include "derev/core/tensor.h"

using namespace derev;

TEST_CASE("tensor shape validation") {
  CHECK_THROWS(Tensor<float>({0, 3}));
  CHECK_THROWS(Tensor<float>({2, 2}, {1.0f, 2.0f, 3.0f}));
  Tensor<float> t({2, 3});
  CHECK(t.size() == 6);
  t.at(1, 2) = 5.0f;
  CHECK(t[5] == 5.0f);
}

TEST_CASE("rng determinism and gaussian moments") {
  Rng a(77), b(77);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
  Rng g(123);
  double sum = 0.0, sumsq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = g.Gaussian();
    sum += v;
    sumsq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sumsq / n - 1.0) < 0.02);
}

TEST_CASE("xavier variance matches 2/(fan_in+fan_out)") {
  const auto t = XavierInit<float>({1000, 1000}, 42);
  double sum = 0.0, sumsq = 0.0;
  for (int64_t i = 0; i < t.size(); ++i) {
    sum += t[i];
    sumsq += static_cast<double>(t[i]) * t[i];
  }
  const double mean = sum / t.size();
  const double var = sumsq / t.size() - mean * mean;
  CHECK(var == doctest::Approx(1e-3).epsilon(0.10));
}

TEST_CASE("xavier is deterministic per seed") {
  const auto a = XavierInit<float>({37, 53}, 9);
  const auto b = XavierInit<float>({37, 53}, 9);
  const auto c = XavierInit<float>({37, 53}, 10);
  CHECK(a.vec() == b.vec());
  CHECK(a.vec() != c.vec());
}

TEST_CASE("xavier bound for 257x2827") {
  // Bound recomputed here from the fan sums.
  const double bound = std::sqrt(6.0 / (257.0 + 2827.0));
  const auto t = XavierInit<float>({257, 2827}, 3);
  float lo = 0.0f, hi = 0.0f;
  for (int64_t i = 0; i < t.size(); ++i) {
    lo = std::min(lo, t[i]);
    hi = std::max(hi, t[i]);
  }
  CHECK(lo >= -bound);
  CHECK(hi <= bound);
  // The draw should actually fill the range.
  CHECK(hi > 0.9 * bound);
  CHECK(lo < -0.9 * bound);
}

TEST_CASE("xavier conv kernel fans") {
  int64_t fan_in = 0, fan_out = 0;
  XavierFans({24, 12, 7}, &fan_in, &fan_out);
  CHECK(fan_in == 12 * 7);
  CHECK(fan_out == 24 * 7);
  CHECK_THROWS(XavierInit<float>({3, 0}, 1));
}

TEST_CASE("adam zero gradient is a fixed point") {
  Parameter<float> p("w", XavierInit<float>({4, 4}, 5));
  const auto before = p.value.vec();
  AdamState<float> st(p.value.shape());
  AdamStep(p, st, 0.001);
  CHECK(p.value.vec() == before);
  CHECK(st.t == 1);
  for (int64_t i = 0; i < st.m.size(); ++i) {
    CHECK(st.m[i] == 0.0f);
    CHECK(st.v[i] == 0.0f);
  }
}

TEST_CASE("adam first step with unit gradient") {
  // Hand evaluation at t=1: m-hat = v-hat = 1, update = -lr / (1 + eps).
  Parameter<double> p("w", Tensor<double>({1}, {1.0}));
  p.grad[0] = 1.0;
  AdamState<double> st(p.value.shape());
  AdamStep(p, st, 0.001);
  CHECK(p.value[0] == doctest::Approx(1.0 - 0.001).epsilon(1e-7));
  CHECK(st.t == 1);
}

TEST_CASE("adam determinism across identical replicas") {
  Parameter<float> p1("a", XavierInit<float>({8, 8}, 11));
  Parameter<float> p2("b", p1.value);
  p1.grad = XavierInit<float>({8, 8}, 12);
  p2.grad = p1.grad;
  AdamState<float> s1(p1.value.shape()), s2(p2.value.shape());
  for (int i = 0; i < 5; ++i) {
    AdamStep(p1, s1, 0.01);
    AdamStep(p2, s2, 0.01);
  }
  CHECK(p1.value.vec() == p2.value.vec());
  CHECK(s1.m.vec() == s2.m.vec());
}

TEST_CASE("adam rejects non-finite gradients") {
  Parameter<float> p("w", Tensor<float>({2}, {1.0f, 2.0f}));
  p.grad[0] = std::numeric_limits<float>::quiet_NaN();
  AdamState<float> st(p.value.shape());
  CHECK_THROWS(AdamStep(p, st, 0.001));
}

TEST_CASE("global norm clip") {
  Parameter<float> p("w", Tensor<float>({3}));
  p.grad = Tensor<float>({3}, {3.0f, 4.0f, 0.0f});
  const double norm = ClipGlobalNorm<float>({&p}, 2.5);
  CHECK(norm == doctest::Approx(5.0));
  double after = 0.0;
  for (int64_t i = 0; i < 3; ++i) after += p.grad[i] * p.grad[i];
  CHECK(std::sqrt(after) == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("gradient check on quadratic loss") {
  Parameter<double> w("w", XavierInit<double>({10}, 21));
  auto loss = [&](bool with_grads) {
    double l = 0.0;
    for (int64_t i = 0; i < w.value.size(); ++i) {
      l += 0.5 * w.value[i] * w.value[i];
    }
    if (with_grads) {
      w.ZeroGrad();
      for (int64_t i = 0; i < w.value.size(); ++i) w.grad[i] = w.value[i];
    }
    return l;
  };
  const double err = GradientCheck(loss, {&w}, 50, 1e-6);
  CHECK(err < 1e-8);
}

TEST_CASE("gradient check flags non-deterministic losses") {
  Parameter<double> w("w", Tensor<double>({2}, {1.0, 2.0}));
  int calls = 0;
  auto loss = [&](bool) { return static_cast<double>(++calls); };
  CHECK_THROWS(GradientCheck(loss, {&w}, 5, 1e-6));
}

TEST_CASE("gemm kernels agree with hand loops") {
  Rng rng(5);
  const int m = 7, k = 5, n = 6;
  Tensor<double> a({m, k}), b({k, n}), bt({n, k});
  for (int64_t i = 0; i < a.size(); ++i) a[i] = rng.Gaussian();
  for (int64_t i = 0; i < b.size(); ++i) b[i] = rng.Gaussian();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) bt.at(i, j) = b.at(j, i);
  }
  Tensor<double> c1({m, n}), c2({m, n}), ref({m, n});
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < k; ++l) acc += a.at(i, l) * b.at(l, j);
      ref.at(i, j) = acc;
    }
  }
  GemmNN(a.data(), m, k, b.data(), n, c1.data());
  GemmNT(a.data(), m, k, bt.data(), n, c2.data());
  for (int64_t i = 0; i < ref.size(); ++i) {
    CHECK(c1[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    CHECK(c2[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}
