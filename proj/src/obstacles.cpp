#include "dihom/obstacles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace dihom {

void ObstacleModel::validate() const {
  const int n = ambient_dim();
  if (class_degree != 0 && class_degree != 1)
    throw ModelError("class_degree must be 0 or 1");
  for (int k : extents)
    if (k < 1) throw ModelError("obstacle model extents must be >= 1");
  std::map<int, const Obstacle*> ids;
  for (const Obstacle& o : obstacles) {
    if (static_cast<int>(o.twice_coords.size()) != n)
      throw ModelError("obstacle " + std::to_string(o.id) +
                       " has wrong arity");
    for (int l = 0; l < n; ++l) {
      int t = o.twice_coords[l];
      if (t % 2 == 0)
        throw ModelError("obstacle " + std::to_string(o.id) +
                         " coordinates must be odd multiples of 1/2");
      if (t < 0 || t > 2 * extents[l])
        throw ModelError("obstacle " + std::to_string(o.id) +
                         " lies outside the box");
    }
    if (!ids.emplace(o.id, &o).second)
      throw ModelError("duplicate obstacle id " + std::to_string(o.id));
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i)
    for (std::size_t j = i + 1; j < obstacles.size(); ++j)
      for (int l = 0; l < n; ++l)
        if (obstacles[i].twice_coords[l] == obstacles[j].twice_coords[l])
          throw ModelError("obstacles " + std::to_string(obstacles[i].id) +
                           " and " + std::to_string(obstacles[j].id) +
                           " share coordinate " + std::to_string(l));
}

bool ObstacleModel::less(int i, int j) const {
  const Obstacle *a = nullptr, *b = nullptr;
  for (const Obstacle& o : obstacles) {
    if (o.id == i) a = &o;
    if (o.id == j) b = &o;
  }
  if (!a || !b) throw DomainError("unknown obstacle id");
  for (std::size_t l = 0; l < a->twice_coords.size(); ++l)
    if (a->twice_coords[l] >= b->twice_coords[l]) return false;
  return true;
}

namespace {

bool strictly_inside(const Obstacle& o, const std::vector<int>& u,
                     const std::vector<int>& v) {
  for (std::size_t l = 0; l < o.twice_coords.size(); ++l)
    if (o.twice_coords[l] <= 2 * u[l] || o.twice_coords[l] >= 2 * v[l])
      return false;
  return true;
}

}  // namespace

std::vector<ChainClass> enumerate_classes(const ObstacleModel& M,
                                          const std::vector<int>& u,
                                          const std::vector<int>& v) {
  const int n = M.ambient_dim();
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
    throw DomainError("interval endpoints have wrong arity");
  for (int l = 0; l < n; ++l)
    if (u[l] > v[l]) return {};  // u not below v: nothing reachable

  // obstacles strictly inside the open box, sorted by id
  std::vector<const Obstacle*> inside;
  for (const Obstacle& o : M.obstacles)
    if (strictly_inside(o, u, v)) inside.push_back(&o);
  std::sort(inside.begin(), inside.end(),
            [](const Obstacle* a, const Obstacle* b) { return a->id < b->id; });

  auto dominates = [&](const Obstacle* a, const Obstacle* b) {
    for (int l = 0; l < n; ++l)
      if (a->twice_coords[l] >= b->twice_coords[l]) return false;
    return true;
  };

  std::vector<ChainClass> out;
  std::vector<int> chain;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    ChainClass c;
    c.u = u;
    c.v = v;
    c.obstacle_ids = chain;
    out.push_back(std::move(c));
    for (std::size_t k = from; k < inside.size(); ++k) {
      if (!chain.empty()) {
        // extend only by obstacles above the current maximum
        const Obstacle* last = nullptr;
        for (const Obstacle* o : inside)
          if (o->id == chain.back()) last = o;
        if (!dominates(last, inside[k])) continue;
      }
      chain.push_back(inside[k]->id);
      grow(k + 1);
      chain.pop_back();
    }
  };
  grow(0);
  std::sort(out.begin(), out.end());
  return out;
}

CupResult cup(const ObstacleModel& M, const ChainClass& a,
              const ChainClass& b) {
  if (a.u != b.u || a.v != b.v)
    throw DomainError("cup factors must share the interval");
  CupResult zero;
  if (M.class_degree == 1) {
    // odd-degree generators square to zero
    for (int i : a.obstacle_ids)
      for (int j : b.obstacle_ids)
        if (i == j) return zero;
  }
  // merge and count inversions between the two (already sorted) chains
  std::vector<int> merged;
  int inversions = 0;
  std::size_t i = 0, j = 0;
  while (i < a.obstacle_ids.size() || j < b.obstacle_ids.size()) {
    if (j == b.obstacle_ids.size()) {
      merged.push_back(a.obstacle_ids[i++]);
    } else if (i == a.obstacle_ids.size()) {
      inversions += static_cast<int>(a.obstacle_ids.size() - i);
      merged.push_back(b.obstacle_ids[j++]);
    } else if (M.less(a.obstacle_ids[i], b.obstacle_ids[j])) {
      merged.push_back(a.obstacle_ids[i++]);
    } else if (M.less(b.obstacle_ids[j], a.obstacle_ids[i])) {
      inversions += static_cast<int>(a.obstacle_ids.size() - i);
      merged.push_back(b.obstacle_ids[j++]);
    } else if (M.class_degree == 0 && a.obstacle_ids[i] == b.obstacle_ids[j]) {
      merged.push_back(a.obstacle_ids[i++]);  // idempotent overlap
      ++j;
    } else {
      return zero;  // incomparable pair: the union is not a chain
    }
  }
  CupResult r;
  r.chain = ChainClass{a.u, a.v, std::move(merged)};
  r.coeff = (M.class_degree == 1 && inversions % 2 != 0) ? -1 : 1;
  return r;
}

ChainClass cap_chain(const ObstacleModel& M, const ChainClass& a,
                     const ChainClass& b) {
  if (a.v != b.u)
    throw DomainError("chain concatenation needs matching interval ends");
  // every obstacle of a is < the shared endpoint < every obstacle of b,
  // strictness coming from half-integer versus integer coordinates
  ChainClass out;
  out.u = a.u;
  out.v = b.v;
  out.obstacle_ids = a.obstacle_ids;
  out.obstacle_ids.insert(out.obstacle_ids.end(), b.obstacle_ids.begin(),
                          b.obstacle_ids.end());
  if (!a.obstacle_ids.empty() && !b.obstacle_ids.empty() &&
      !M.less(a.obstacle_ids.back(), b.obstacle_ids.front()))
    throw IntegrityError("concatenated chains fail to be ordered");
  return out;
}

std::vector<int> betti_profile(const ObstacleModel& M,
                               const std::vector<int>& u,
                               const std::vector<int>& v) {
  std::vector<int> profile;
  for (const ChainClass& c : enumerate_classes(M, u, v)) {
    const int d = c.size() * M.class_degree;
    if (d >= static_cast<int>(profile.size())) profile.resize(d + 1, 0);
    ++profile[d];
  }
  return profile;
}

std::string chain_to_string(const ChainClass& c) {
  std::ostringstream os;
  os << "(u";
  for (int id : c.obstacle_ids) os << " < O" << id;
  os << " < v)";
  return os.str();
}

}  // namespace dihom
