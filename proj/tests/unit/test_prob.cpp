// Copyright 2026 The cheaptalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cheaptalk/model.hpp"
#include "cheaptalk/prob.hpp"

namespace {

using cheaptalk::GameSpec;
using cheaptalk::kNegInf;
using cheaptalk::SenderStrategy;
using Big = boost::multiprecision::cpp_bin_float_50;

// Exact binomial mass in 50-digit arithmetic.
Big exact_binomial(int n, int k, double p) {
  Big c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  const Big bp = p;
  return c * pow(bp, k) * pow(Big(1) - bp, n - k);
}

double exact_log_binomial(int n, int k, double p) {
  return static_cast<double>(log(exact_binomial(n, k, p)));
}

}  // namespace

TEST_CASE("binomial log-pmf matches exact arithmetic") {
  for (int n : {1, 7, 50, 400, 2000}) {
    for (double p : {0.01, 0.2, 0.5, 0.93}) {
      for (int k : {0, 1, n / 3, n / 2, n - 1, n}) {
        if (k < 0 || k > n) continue;
        const double want = exact_log_binomial(n, k, p);
        const double got = cheaptalk::binomial_logpmf(n, k, p).value;
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("binomial log-pmf has exact point masses at the endpoints") {
  CHECK(cheaptalk::binomial_logpmf(10, 0, 0.0).value == 0.0);
  CHECK(cheaptalk::binomial_logpmf(10, 3, 0.0).value == kNegInf);
  CHECK(cheaptalk::binomial_logpmf(10, 10, 1.0).value == 0.0);
  CHECK(cheaptalk::binomial_logpmf(10, 9, 1.0).value == kNegInf);
  CHECK(cheaptalk::binomial_logpmf(10, 11, 0.5).value == kNegInf);
}

TEST_CASE("upper tails match exact sums") {
  const int n = 300;
  const double p = 0.37;
  const auto tails = cheaptalk::binomial_log_upper_tails(n, p);
  REQUIRE(tails.size() == static_cast<std::size_t>(n + 2));
  CHECK(tails[n + 1] == kNegInf);
  CHECK(std::abs(tails[0]) < 1e-14);
  for (int k : {1, 50, 111, 200, 299, 300}) {
    Big sum = 0;
    for (int j = k; j <= n; ++j) sum += exact_binomial(n, j, p);
    CHECK(tails[k] == doctest::Approx(static_cast<double>(log(sum))).epsilon(1e-11));
  }
}

TEST_CASE("log-sum-exp is stable and ignores empty terms") {
  const std::vector<double> big{1000.0, 1000.0};
  CHECK(cheaptalk::log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)));
  const std::vector<double> with_empty{kNegInf, -3.0};
  CHECK(cheaptalk::log_sum_exp(with_empty) == doctest::Approx(-3.0));
  const std::vector<double> empty{kNegInf, kNegInf};
  CHECK(cheaptalk::log_sum_exp(empty) == kNegInf);
  CHECK(cheaptalk::log_add(std::log(0.25), std::log(0.5)) == doctest::Approx(std::log(0.75)));
}

TEST_CASE("log-choose matches exact coefficients") {
  Big c = 1;
  const int n = 1500;
  for (int k = 1; k <= 700; ++k) {
    c = c * (n - k + 1) / k;
    if (k % 97 == 0) {
      CHECK(cheaptalk::log_choose(n, k) ==
            doctest::Approx(static_cast<double>(log(c))).epsilon(1e-13));
    }
  }
}

TEST_CASE("approval probability mixes the two signal actions") {
  const SenderStrategy s{0.1, 0.7};
  CHECK(cheaptalk::approval_probability(0.4, s) == doctest::Approx(0.4 * 0.7 + 0.6 * 0.1));
  CHECK(cheaptalk::approval_probability(0.3, SenderStrategy::truthful()) == doctest::Approx(0.3));
}

TEST_CASE("tally and pivot laws are binomial in the approval probability") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const SenderStrategy s = SenderStrategy::on_high(0.35);
  const int n = 80;
  for (int state = 0; state < 3; ++state) {
    const double a = spec.rho[state] * 0.35;
    for (int t : {0, 5, 28, 80}) {
      CHECK(cheaptalk::tally_logpmf(spec, s, n, t, state).value ==
            doctest::Approx(exact_log_binomial(n, t, a)).epsilon(1e-12));
    }
    for (int cutoff : {1, 9, 80}) {
      CHECK(cheaptalk::pivot_logpmf(spec, s, n, cutoff, state).value ==
            doctest::Approx(exact_log_binomial(n - 1, cutoff - 1, a)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(cheaptalk::pivot_logpmf(spec, s, n, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(cheaptalk::pivot_logpmf(spec, s, n, n + 1, 0), std::out_of_range);
}

TEST_CASE("relative entropies match their definitions") {
  const double a = 0.3, b = 0.55;
  CHECK(cheaptalk::kl_bernoulli(a, b) ==
        doctest::Approx(a * std::log(a / b) + (1 - a) * std::log((1 - a) / (1 - b))));
  CHECK(cheaptalk::kl_bernoulli(0.0, b) == doctest::Approx(-std::log(1 - b)));
  CHECK(cheaptalk::kl_bernoulli(b, b) == 0.0);
  const std::vector<double> gamma{0.0, 0.4, 0.6};
  const std::vector<double> g{0.2, 0.3, 0.5};
  CHECK(cheaptalk::kl_categorical(gamma, g) ==
        doctest::Approx(0.4 * std::log(0.4 / 0.3) + 0.6 * std::log(0.6 / 0.5)));
}

TEST_CASE("tally ratio through relative entropy equals the direct ratio") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const SenderStrategy s = SenderStrategy::on_high(0.8);
  for (int n : {1, 13, 400, 2000}) {
    for (int t : {0, n / 4, n / 2, n}) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const double direct = exact_log_binomial(n, t, spec.rho[i] * 0.8) -
                                exact_log_binomial(n, t, spec.rho[j] * 0.8);
          CHECK(std::abs(cheaptalk::tally_ratio_via_kl(spec, s, n, t, i, j) - direct) < 1e-9);
        }
      }
    }
  }
}
