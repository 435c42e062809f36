// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "cubic/parallel.hpp"

using namespace cubic;

TEST_CASE("Neumaier summation recovers cancelled low-order terms") {
  NeumaierSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
  ComplexNeumaierSum c;
  c.add({1e20, 1.0});
  c.add({1.0, -1e20});
  c.add({-1e20, 1e20});
  CHECK(c.value() == std::complex<double>(1.0, 1.0));
}

TEST_CASE("parallel_map is independent of the worker count") {
  auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e-3 + static_cast<double>(i % 7); };
  const auto one = parallel_map(10007, 1, f);
  for (int w : {2, 3, 8, 64}) CHECK(parallel_map(10007, w, f) == one);
  CHECK(parallel_map(0, 4, f).empty());
  CHECK(parallel_map(3, 16, f).size() == 3);
}

TEST_CASE("parallel_map rethrows worker exceptions") {
  auto f = [](std::size_t i) -> int {
    if (i == 777) throw std::runtime_error("boom");
    return static_cast<int>(i);
  };
  CHECK_THROWS_AS(parallel_map(1000, 4, f), std::runtime_error);
  CHECK_THROWS_AS(parallel_map(1000, 1, f), std::runtime_error);
}

TEST_CASE("thread count from the environment") {
  setenv("CUBIC_THREADS", "3", 1);
  CHECK(default_threads() == 3);
  setenv("CUBIC_THREADS", "junk", 1);
  CHECK(default_threads() >= 1);
  setenv("CUBIC_THREADS", "0", 1);
  CHECK(default_threads() >= 1);
  unsetenv("CUBIC_THREADS");
  CHECK(default_threads() >= 1);
}
