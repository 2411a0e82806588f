#include "dihom/json_io.hpp"

#include <fstream>
#include <map>

namespace dihom {

ordered_json model_to_json(const PrecubicalSet& X) {
  ordered_json j;
  j["dims"] = X.top_dim();
  ordered_json cells = ordered_json::array();
  for (int n = 0; n <= X.top_dim(); ++n) {
    ordered_json per_dim = ordered_json::array();
    for (int i = 0; i < X.size(n); ++i)
      per_dim.push_back(X.cell_id(CellId{n, i}));
    cells.push_back(std::move(per_dim));
  }
  j["cells"] = std::move(cells);
  ordered_json faces = ordered_json::object();
  for (int n = 1; n <= X.top_dim(); ++n)
    for (int i = 0; i < X.size(n); ++i) {
      CellId c{n, i};
      ordered_json d0 = ordered_json::array(), d1 = ordered_json::array();
      for (int k = 0; k < n; ++k) {
        d0.push_back(X.cell_id(X.face(c, 0, k)));
        d1.push_back(X.cell_id(X.face(c, 1, k)));
      }
      faces[std::to_string(X.cell_id(c))] = {{"d0", std::move(d0)},
                                             {"d1", std::move(d1)}};
    }
  j["faces"] = std::move(faces);
  return j;
}

PrecubicalSet model_from_json(const ordered_json& j) {
  if (!j.contains("dims") || !j.contains("cells"))
    throw IoError("model JSON needs 'dims' and 'cells'");
  const int top = j.at("dims").get<int>();
  if (top < 0 || top > 16) throw IoError("unreasonable model dimension");
  std::vector<std::vector<std::int64_t>> cell_ids(top + 1);
  const auto& cells = j.at("cells");
  if (!cells.is_array() || static_cast<int>(cells.size()) != top + 1)
    throw IoError("'cells' must list ids for each dimension 0..dims");
  std::map<std::int64_t, std::pair<int, int>> where;
  for (int n = 0; n <= top; ++n) {
    for (const auto& id : cells[n]) {
      if (!id.is_number_integer()) throw IoError("cell ids must be integers");
      std::int64_t v = id.get<std::int64_t>();
      if (!where.emplace(v, std::make_pair(n, static_cast<int>(
                                                  cell_ids[n].size())))
               .second)
        throw IoError("duplicate cell id " + std::to_string(v));
      cell_ids[n].push_back(v);
    }
  }
  std::vector<std::vector<PrecubicalSet::FaceRow>> faces(top + 1);
  for (int n = 1; n <= top; ++n)
    faces[n].resize(cell_ids[n].size());
  const auto faces_json =
      j.contains("faces") ? j.at("faces") : ordered_json::object();
  for (int n = 1; n <= top; ++n)
    for (std::size_t i = 0; i < cell_ids[n].size(); ++i) {
      const std::string key = std::to_string(cell_ids[n][i]);
      if (!faces_json.contains(key))
        throw IoError("missing face row for cell " + key);
      const auto& row = faces_json.at(key);
      PrecubicalSet::FaceRow fr;
      for (const char* side : {"d0", "d1"}) {
        if (!row.contains(side))
          throw IoError("face row for cell " + key + " lacks '" +
                        side + "'");
        for (const auto& f : row.at(side)) {
          std::int64_t fid = f.get<std::int64_t>();
          auto it = where.find(fid);
          if (it == where.end() || it->second.first != n - 1)
            throw IoError("cell " + key + " lists face " +
                          std::to_string(fid) +
                          " which is not a cell of dimension " +
                          std::to_string(n - 1));
          (side[1] == '0' ? fr.d0 : fr.d1)
              .push_back(static_cast<std::int32_t>(it->second.second));
        }
      }
      faces[n][i] = std::move(fr);
    }
  try {
    return PrecubicalSet(std::move(cell_ids), std::move(faces));
  } catch (const ModelError& e) {
    throw IoError(std::string("model JSON invalid: ") + e.what());
  }
}

ordered_json grid_spec_to_json(const GridSpec& spec) {
  ordered_json j;
  j["extents"] = spec.extents;
  ordered_json forb = ordered_json::array();
  for (const auto& cell : spec.forbidden) forb.push_back(cell);
  j["forbidden"] = std::move(forb);
  return j;
}

GridSpec grid_spec_from_json(const ordered_json& j) {
  GridSpec spec;
  if (!j.contains("extents")) throw IoError("grid JSON needs 'extents'");
  for (const auto& k : j.at("extents")) {
    if (!k.is_number_integer()) throw IoError("extents must be integers");
    spec.extents.push_back(k.get<int>());
  }
  if (j.contains("forbidden"))
    for (const auto& cell : j.at("forbidden")) {
      std::vector<int> c;
      for (const auto& x : cell) c.push_back(x.get<int>());
      spec.forbidden.insert(std::move(c));
    }
  return spec;
}

namespace {

std::string half_to_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

int parse_half(const std::string& s) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) {
    return 2 * std::stoi(s);
  }
  int num = std::stoi(s.substr(0, slash));
  int den = std::stoi(s.substr(slash + 1));
  if (den == 2) return num;
  if (den == 1) return 2 * num;
  throw IoError("obstacle coordinates must be halves, got '" + s + "'");
}

}  // namespace

ordered_json obstacle_model_to_json(const ObstacleModel& M) {
  ordered_json j;
  j["extents"] = M.extents;
  ordered_json obs = ordered_json::array();
  for (const Obstacle& o : M.obstacles) {
    ordered_json coords = ordered_json::array();
    for (int t : o.twice_coords) coords.push_back(half_to_string(t));
    obs.push_back({{"id", o.id}, {"coords", std::move(coords)}});
  }
  j["obstacles"] = std::move(obs);
  j["class_degree"] = M.class_degree;
  return j;
}

ObstacleModel obstacle_model_from_json(const ordered_json& j) {
  ObstacleModel M;
  if (!j.contains("extents")) throw IoError("obstacle JSON needs 'extents'");
  for (const auto& k : j.at("extents")) M.extents.push_back(k.get<int>());
  if (j.contains("obstacles"))
    for (const auto& o : j.at("obstacles")) {
      Obstacle ob;
      ob.id = o.at("id").get<int>();
      for (const auto& c : o.at("coords"))
        ob.twice_coords.push_back(parse_half(c.get<std::string>()));
      M.obstacles.push_back(std::move(ob));
    }
  M.class_degree = j.value("class_degree", 0);
  try {
    M.validate();
  } catch (const ModelError& e) {
    throw IoError(std::string("obstacle JSON invalid: ") + e.what());
  }
  return M;
}

ordered_json slice_to_json(const PrecubicalSet& X,
                           const ChainComplexSlice& slice) {
  ordered_json j;
  j["from"] = X.cell_id(CellId{0, slice.v});
  j["to"] = X.cell_id(CellId{0, slice.w});
  ordered_json basis = ordered_json::array();
  for (int d = 0; d <= slice.max_dim; ++d) {
    ordered_json per_dim = ordered_json::array();
    for (const CubeChain& c : slice.basis[d]) {
      ordered_json ids = ordered_json::array();
      for (CellId q : c.cubes) ids.push_back(X.cell_id(q));
      per_dim.push_back(std::move(ids));
    }
    basis.push_back(std::move(per_dim));
  }
  j["basis"] = std::move(basis);
  ordered_json bnds = ordered_json::array();
  for (int d = 0; d <= slice.max_dim; ++d) {
    ordered_json triplets = ordered_json::array();
    if (d >= 1)
      for (const auto& t : slice.bnd[d].entries)
        triplets.push_back({t.r, t.c, std::to_string(t.val)});
    bnds.push_back(std::move(triplets));
  }
  j["boundary"] = std::move(bnds);
  return j;
}

ordered_json summary_to_json(const PrecubicalSet& X,
                             const HomologySummary& s) {
  ordered_json j;
  j["from"] = X.cell_id(CellId{0, s.v});
  j["to"] = X.cell_id(CellId{0, s.w});
  j["from_label"] = X.vertex_label(s.v);
  j["to_label"] = X.vertex_label(s.w);
  ordered_json hm = ordered_json::object();
  for (std::size_t i = 0; i < s.ranks.size(); ++i)
    hm[std::to_string(i + 1)] = s.ranks[i];
  j["HM"] = std::move(hm);
  if (!s.reps.empty()) {
    ordered_json reps = ordered_json::object();
    for (std::size_t d = 0; d < s.reps.size(); ++d) {
      ordered_json per_degree = ordered_json::array();
      for (const auto& rep : s.reps[d]) {
        ordered_json vec = ordered_json::object();
        for (const auto& [i, coeff] : rep) vec[std::to_string(i)] = coeff;
        per_degree.push_back(std::move(vec));
      }
      reps[std::to_string(d + 1)] = std::move(per_degree);
    }
    j["representatives"] = std::move(reps);
  }
  return j;
}

ordered_json class_to_json(const PrecubicalSet& X, const std::string& kind,
                           int degree, int v, int w,
                           const std::vector<std::pair<int, std::string>>& rep) {
  ordered_json j;
  j["kind"] = kind;
  j["degree"] = degree;
  j["from"] = X.cell_id(CellId{0, v});
  j["to"] = X.cell_id(CellId{0, w});
  ordered_json r = ordered_json::object();
  for (const auto& [i, coeff] : rep) r[std::to_string(i)] = coeff;
  j["rep"] = std::move(r);
  return j;
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("JSON parse error in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace dihom
