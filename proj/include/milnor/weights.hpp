#pragma once

#include <optional>
#include <vector>

#include "milnor/polynomial.hpp"

namespace milnor {

/// Type (d1,...,dn; d) of a weighted homogeneous polynomial.
struct Weights {
  std::vector<int> d_i;
  int d = 0;

  friend bool operator==(const Weights&, const Weights&) = default;
};

struct WeightSearch {
  int max_weight = 32;
};

/// Smallest positive integer weights making `p` weighted homogeneous, or
/// nothing when no such weights exist within the search bound.
std::optional<Weights> detect_weights(const Polynomial& p, WeightSearch search = {});

/// True when every monomial of `p` has weighted degree w.d.
bool is_weighted_homogeneous(const Polynomial& p, const Weights& w);

/// sum_i d_i x_i dp/dx_i, which equals d*p for weighted homogeneous p.
Polynomial euler_vector_field(const Polynomial& p, const Weights& w);

}  // namespace milnor
