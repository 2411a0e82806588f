#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dihom/errors.hpp"

namespace dihom {

// Combinatorial model of trace-space cohomology for box complements of
// partially ordered point obstacles with half-integer coordinates: basis
// classes are chains of obstacles between the endpoints, the cup product is
// the union of compatible chains, and concatenation of chains realizes the
// composition operation on cohomology.

/// An obstacle; coordinates are stored doubled so that half-integers stay
/// exact (every stored coordinate is an odd integer).
struct Obstacle {
  int id = 0;
  std::vector<int> twice_coords;
};

struct ObstacleModel {
  std::vector<int> extents;
  std::vector<Obstacle> obstacles;
  // trace-space degree contributed per obstacle in a chain:
  // 0 for planar models, 1 for ambient dimension 3 (codimension-2 classes)
  int class_degree = 0;

  int ambient_dim() const { return static_cast<int>(extents.size()); }
  void validate() const;
  /// Componentwise strict order on obstacle coordinates.
  bool less(int i, int j) const;
};

/// A basis class: the interval and a strictly increasing chain of obstacles
/// inside it (possibly empty).
struct ChainClass {
  std::vector<int> u, v;          // integer endpoints
  std::vector<int> obstacle_ids;  // increasing along the model order

  int size() const { return static_cast<int>(obstacle_ids.size()); }
  friend bool operator==(const ChainClass& a, const ChainClass& b) {
    return a.u == b.u && a.v == b.v && a.obstacle_ids == b.obstacle_ids;
  }
  friend bool operator<(const ChainClass& a, const ChainClass& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    if (a.obstacle_ids.size() != b.obstacle_ids.size())
      return a.obstacle_ids.size() < b.obstacle_ids.size();
    return a.obstacle_ids < b.obstacle_ids;
  }
};

/// All chains through obstacles strictly inside the open interval (u, v),
/// sorted by size then obstacle ids.  The trace-space degree of a chain of
/// size s is s * class_degree (reported as HM^{s*class_degree + 1}).
std::vector<ChainClass> enumerate_classes(const ObstacleModel& M,
                                          const std::vector<int>& u,
                                          const std::vector<int>& v);

/// Cup product result: zero, or a signed chain (the sign is relevant only
/// for class_degree = 1 where generators have odd degree).
struct CupResult {
  int coeff = 0;
  std::optional<ChainClass> chain;

  bool is_zero() const { return coeff == 0; }
};

/// Cup product of two classes on the same interval: the union when it is
/// totally ordered (and, for class_degree = 1, the factors are disjoint),
/// zero otherwise.  For class_degree = 1 the sign is (-1)^inversions of the
/// merge, which makes the product graded-commutative.
CupResult cup(const ObstacleModel& M, const ChainClass& a,
              const ChainClass& b);

/// Concatenation of a chain on (u, b) with a chain on (b, v): always a valid
/// chain on (u, v) since everything in a is < b < everything in b's chain.
ChainClass cap_chain(const ObstacleModel& M, const ChainClass& a,
                     const ChainClass& b);

/// Ranks by trace-space degree (index d counts chains of size s with
/// s * class_degree = d); trailing zeros trimmed.
std::vector<int> betti_profile(const ObstacleModel& M,
                               const std::vector<int>& u,
                               const std::vector<int>& v);

std::string chain_to_string(const ChainClass& c);

}  // namespace dihom
