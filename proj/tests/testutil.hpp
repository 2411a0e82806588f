#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dihom/obstacles.hpp"
#include "dihom/precubical.hpp"

namespace dihom::testing {

// The planar four-obstacle model: a 4x4 grid with the cells at
// (0,0), (1,2), (2,1), (3,3) removed.
inline GridSpec four_obstacle_grid() {
  return GridSpec{{4, 4}, {{0, 0}, {1, 2}, {2, 1}, {3, 3}}};
}

// The same model in obstacle form: centers of the removed cells.
inline ObstacleModel four_obstacle_planar() {
  ObstacleModel M;
  M.extents = {4, 4};
  M.class_degree = 0;
  M.obstacles = {{1, {1, 1}}, {2, {3, 5}}, {3, {5, 3}}, {4, {7, 7}}};
  M.validate();
  return M;
}

// The spatial four-obstacle model (codimension-2 avoidance classes, so each
// obstacle contributes trace degree 1).  Labels are assigned so that the
// interval (0,0,0)->(2,3,2) contains obstacles 1 and 3, matching the
// planar model's reachability pattern for the worked intervals.
inline ObstacleModel four_obstacle_spatial() {
  ObstacleModel M;
  M.extents = {4, 4, 4};
  M.class_degree = 1;
  M.obstacles = {{1, {1, 1, 1}},
                 {2, {5, 3, 5}},
                 {3, {3, 5, 3}},
                 {4, {7, 7, 7}}};
  M.validate();
  return M;
}

inline std::string pv_mutex_source() {
  return "sem a 1;\n"
         "proc p1 = P(a); V(a);\n"
         "proc p2 = P(a); V(a);\n";
}

// Two elementary obstacles on the diagonal of a 2x2 grid; between the
// extreme corners this has four schedule classes.
inline GridSpec double_diagonal_grid() {
  return GridSpec{{2, 2}, {{0, 0}, {1, 1}}};
}

// A complex that is not proper: two parallel edges between two vertices.
inline PrecubicalSet two_parallel_edges() {
  std::vector<std::vector<std::int64_t>> ids{{0, 1}, {2, 3}};
  std::vector<std::vector<PrecubicalSet::FaceRow>> faces(2);
  faces[1] = {{{0}, {1}}, {{0}, {1}}};
  return PrecubicalSet(std::move(ids), std::move(faces));
}

// A square next to a parallel path of three edges between the same corners;
// dimension-0 chains between the corners then have lengths 2 and 3, so the
// equal-length hypothesis fails.
inline PrecubicalSet square_and_long_path() {
  // vertices: 0 = v, 1 = w, 2, 3 (path interior), 4, 5 (square sides)
  std::vector<std::vector<std::int64_t>> ids{
      {0, 1, 2, 3, 4, 5}, {10, 11, 12, 13, 14, 15, 16}, {20}};
  std::vector<std::vector<PrecubicalSet::FaceRow>> faces(3);
  // edges: 10: v->2, 11: 2->3, 12: 3->w (the long path)
  //        13: v->4, 14: 4->w, 15: v->5, 16: 5->w (the square's sides)
  faces[1] = {{{0}, {2}}, {{2}, {3}}, {{3}, {1}}, {{0}, {4}},
              {{4}, {1}}, {{0}, {5}}, {{5}, {1}}};
  // square 20 with d0 = (13, 15), d1 = (16, 14):
  // d^0_0 = v->4, d^1_0 = 5->w, d^0_1 = v->5, d^1_1 = 4->w
  faces[2] = {{{3, 5}, {6, 4}}};
  return PrecubicalSet(std::move(ids), std::move(faces));
}

// A single loop edge at one vertex.
inline PrecubicalSet loop_edge() {
  std::vector<std::vector<std::int64_t>> ids{{0}, {1}};
  std::vector<std::vector<PrecubicalSet::FaceRow>> faces(2);
  faces[1] = {{{0}, {0}}};
  return PrecubicalSet(std::move(ids), std::move(faces));
}

// Deterministic bounded RNG helper (distribution-free for reproducibility).
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint64_t raw() { return gen(); }
  int below(int n) { return static_cast<int>(gen() % n); }
};

// Random grid models: ambient dimension 2 or 3, extents in 1..4, up to
// `max_forbidden` distinct removed top cells.
inline GridSpec random_grid_spec(Rng& rng, int dims, int max_forbidden = 5,
                                 int max_volume = 1 << 30) {
  GridSpec spec;
  for (;;) {
    spec.extents.clear();
    int volume = 1;
    for (int l = 0; l < dims; ++l) {
      int k = 1 + rng.below(4);
      spec.extents.push_back(k);
      volume *= k;
    }
    if (volume <= max_volume) break;
  }
  int cells = 1;
  for (int k : spec.extents) cells *= k;
  int want = rng.below(max_forbidden + 1);
  spec.forbidden.clear();
  for (int t = 0; t < want * 4 &&
                  static_cast<int>(spec.forbidden.size()) < std::min(want, cells);
       ++t) {
    std::vector<int> cell;
    for (int k : spec.extents) cell.push_back(rng.below(k));
    spec.forbidden.insert(cell);
  }
  return spec;
}

// Independent oracle: the number of monotone lattice paths between grid
// points (a product-of-binomials count; removed top cells never block edge
// paths).
inline unsigned long long lattice_path_count(const std::vector<int>& delta) {
  unsigned long long paths = 1;
  int total = 0;
  for (int d : delta) {
    for (int i = 1; i <= d; ++i) {
      paths = paths * static_cast<unsigned long long>(total + i) / i;
      // exact at each step: C(total+i, i) accumulates integrally in this
      // order for the multinomial product
    }
    total += d;
  }
  return paths;
}

}  // namespace dihom::testing
