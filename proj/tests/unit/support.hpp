#pragma once

#include <random>
#include <string>

#include <doctest.h>

#include "banarith/rational.hpp"

namespace banarith::testing {

using Rng = std::mt19937_64;

inline Rational q(const char* text) { return parse_rational(text); }

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, long num_bound, long den_bound) {
  Rational x(uniform(rng, -num_bound, num_bound), uniform(rng, 1, den_bound));
  x.canonicalize();
  return x;
}

inline Rational random_positive(Rng& rng, long num_bound, long den_bound) {
  Rational x(uniform(rng, 1, num_bound), uniform(rng, 1, den_bound));
  x.canonicalize();
  return x;
}

}  // namespace banarith::testing
