#pragma once

#include <string>

#include "elastica/constants.hpp"
#include "elastica/errors.hpp"

namespace elastica {

// Uniform parameter grid on the circle: n vertices at theta_i = 2*pi*i/n,
// data living in R^d. Edge i joins vertex i to vertex (i+1) mod n.
struct GridInfo {
  int n;
  int d;

  GridInfo(int n_, int d_) : n(n_), d(d_) {
    if (n < 2) throw ValidationError("grid: need at least 2 vertices, got " + std::to_string(n));
    if (d < 2) throw ValidationError("grid: need ambient dimension >= 2, got " + std::to_string(d));
  }

  double cell_width() const { return kTwoPi / n; }
  double theta(int i) const { return kTwoPi * i / n; }

  friend bool operator==(const GridInfo&, const GridInfo&) = default;
};

inline void require_same_grid(const GridInfo& a, const GridInfo& b, const char* where) {
  if (!(a == b))
    throw ValidationError(std::string(where) + ": grid mismatch (" + std::to_string(a.n) + "x" +
                          std::to_string(a.d) + " vs " + std::to_string(b.n) + "x" +
                          std::to_string(b.d) + ")");
}

}  // namespace elastica
