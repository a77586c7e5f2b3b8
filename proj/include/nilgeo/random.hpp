#pragma once

#include <cstdint>
#include <random>

#include "nilgeo/algebra.hpp"

namespace nilgeo {

/// Deterministic source of random rational test data. Every consumer takes an
/// explicit seed so concurrent runs stay reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t raw() { return g_(); }
  long int_in(long lo, long hi) {  // inclusive
    return std::uniform_int_distribution<long>(lo, hi)(g_);
  }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(int_in(0, static_cast<long>(n) - 1));
  }

  /// Rational with numerator in [-height, height], denominator in [1, height].
  Rat rat(long height = 5) {
    return Rat(int_in(-height, height), int_in(1, height));
  }
  Rat nonzero_rat(long height = 5) {
    while (true) {
      Rat r = rat(height);
      if (!r.is_zero()) return r;
    }
  }

  VecQ vec(std::size_t n, long height = 5) {
    VecQ v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rat(height);
    return v;
  }
  VecQ nonzero_vec(std::size_t n, long height = 5) {
    while (true) {
      VecQ v = vec(n, height);
      if (!v.is_zero()) return v;
    }
  }

  Vector vector(std::size_t p, std::size_t m, long height = 5) {
    return {vec(p, height), vec(m, height)};
  }

  MatQ mat(std::size_t r, std::size_t c, long height = 5) {
    MatQ m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rat(height);
    return m;
  }

  MatQ symmetric(std::size_t n, long height = 5) {
    MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Rat r = rat(height);
        m.at(i, j) = r;
        m.at(j, i) = r;
      }
    return m;
  }

  MatQ nondegenerate_symmetric(std::size_t n, long height = 5) {
    while (true) {
      MatQ m = symmetric(n, height);
      if (!m.det().is_zero()) return m;
    }
  }

  MatQ invertible(std::size_t n, long height = 5) {
    while (true) {
      MatQ m = mat(n, n, height);
      if (!m.det().is_zero()) return m;
    }
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace nilgeo
