// dihom: directed (co)homology of precubical models.
//
//   dihom homology  --input model --format grid-json ...   per-pair ranks
//   dihom product   --op conc|cap|cup0|obstacle-cup|obstacle-cap ...
//   dihom check     --input model ...                      invariant suite
//
// Exit codes: 0 ok, 1 check failures, 2 model errors, 3 operand errors,
// 4 I/O errors.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "dihom/bimodule.hpp"
#include "dihom/field.hpp"
#include "dihom/json_io.hpp"
#include "dihom/pvlang.hpp"

namespace {

using namespace dihom;

struct RunConfig {
  std::string input;
  std::string format = "grid-json";  // pv | grid-json | complex-json | obstacle-json
  std::string field = "rationals";   // rationals | prime p
  std::string pairs = "all-reachable";
  int max_degree = 1;
  std::string op;
  std::string from_spec, via_spec, to_spec;
  std::string degrees = "1,1";
  int threads = 0;  // 0: DIHOM_THREADS or 1
  std::string out;
  std::string emit_slices;
  bool representatives = false;
  int left_index = -1, right_index = -1;
  std::uint64_t seed = 20240915;
  int samples = 100;
};

int thread_count(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("DIHOM_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct LoadedModel {
  std::optional<PrecubicalSet> complex;
  std::optional<ObstacleModel> obstacles;
  std::optional<GridSpec> grid;
};

LoadedModel load_model(const RunConfig& cfg) {
  LoadedModel m;
  if (cfg.format == "pv") {
    std::ifstream in(cfg.input);
    if (!in) throw IoError("cannot open " + cfg.input);
    std::stringstream ss;
    ss << in.rdbuf();
    PVProgram prog = parse_pv(ss.str());
    m.grid = pv_semantics(prog);
    m.complex = build_grid(*m.grid);
  } else if (cfg.format == "grid-json") {
    m.grid = grid_spec_from_json(load_json_file(cfg.input));
    m.complex = build_grid(*m.grid);
  } else if (cfg.format == "complex-json") {
    m.complex = model_from_json(load_json_file(cfg.input));
  } else if (cfg.format == "obstacle-json") {
    m.obstacles = obstacle_model_from_json(load_json_file(cfg.input));
  } else {
    throw IoError("unknown format '" + cfg.format + "'");
  }
  return m;
}

std::vector<int> parse_point(const std::string& s) {
  if (s.empty() || s.front() != '(' || s.back() != ')')
    throw OperandError("expected a coordinate tuple like (0,0), got '" + s +
                       "'");
  std::vector<int> out;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string tok;
  try {
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  } catch (const std::exception&) {
    throw OperandError("bad coordinate tuple '" + s + "'");
  }
  return out;
}

std::string point_label(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i)
    s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

int resolve_vertex(const PrecubicalSet& X, const std::string& spec) {
  if (!spec.empty() && spec.front() == '(') {
    auto v = X.vertex_at(parse_point(spec));
    if (!v) throw OperandError("no vertex at " + spec + " in this model");
    return *v;
  }
  std::optional<CellId> cell;
  try {
    cell = X.find_id(std::stoll(spec));
  } catch (const std::exception&) {
    throw OperandError("bad vertex spec '" + spec + "'");
  }
  if (!cell || cell->dim != 0)
    throw OperandError("no vertex with id " + spec);
  return cell->idx;
}

std::vector<std::pair<int, int>> resolve_pairs(const PrecubicalSet& X,
                                               const ReachablePairs& reach,
                                               const std::string& spec) {
  if (spec == "all-reachable") return reach.all();
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.empty()) continue;
    auto arrow = tok.find("->");
    if (arrow == std::string::npos)
      throw OperandError("pair '" + tok + "' is not of the form a->b");
    out.push_back({resolve_vertex(X, tok.substr(0, arrow)),
                   resolve_vertex(X, tok.substr(arrow + 2))});
  }
  return out;
}

void validate_complex(const PrecubicalSet& X, const ReachablePairs& reach) {
  if (auto bad = X.verify_precubical_identity())
    throw ModelError("precubical identity fails on cell id " +
                     std::to_string(X.cell_id(bad->cell)));
  auto prop = is_proper(X);
  if (!prop.proper)
    throw ModelError("complex is not proper: cells " +
                     std::to_string(X.cell_id(prop.a)) + " and " +
                     std::to_string(X.cell_id(prop.b)) +
                     " share their corner pair");
  if (has_directed_loop(X, reach))
    throw ModelError(
        "complex has a directed loop; restrict to a window of the length "
        "covering first");
}

void write_report(const RunConfig& cfg, const ordered_json& report) {
  if (!cfg.out.empty()) write_json_file(cfg.out, report);
}

// ---------------------------------------------------------------------------
// homology

int run_obstacle_homology(const RunConfig& cfg, const ObstacleModel& M) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
  if (cfg.pairs == "all-reachable") {
    std::vector<std::vector<int>> points{{}};
    for (int k : M.extents) {
      std::vector<std::vector<int>> next;
      for (const auto& p : points)
        for (int x = 0; x <= k; ++x) {
          auto q = p;
          q.push_back(x);
          next.push_back(std::move(q));
        }
      points = std::move(next);
    }
    for (const auto& u : points)
      for (const auto& v : points) {
        bool le = true;
        for (std::size_t l = 0; l < u.size(); ++l)
          if (u[l] > v[l]) le = false;
        if (le) pairs.push_back({u, v});
      }
  } else {
    std::stringstream ss(cfg.pairs);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      if (tok.empty()) continue;
      auto arrow = tok.find("->");
      if (arrow == std::string::npos)
        throw OperandError("pair '" + tok + "' is not of the form a->b");
      pairs.push_back({parse_point(tok.substr(0, arrow)),
                       parse_point(tok.substr(arrow + 2))});
    }
  }
  ordered_json report;
  report["model"] = "obstacle";
  report["pairs"] = ordered_json::array();
  for (const auto& [u, v] : pairs) {
    auto profile = betti_profile(M, u, v);
    ordered_json entry;
    entry["from_label"] = point_label(u);
    entry["to_label"] = point_label(v);
    ordered_json hm = ordered_json::object();
    for (std::size_t d = 0; d < profile.size(); ++d)
      hm[std::to_string(d + 1)] = profile[d];
    entry["HM"] = std::move(hm);
    report["pairs"].push_back(entry);
    std::cout << "pair " << point_label(u) << "->" << point_label(v) << ":";
    for (std::size_t d = 0; d < profile.size(); ++d)
      std::cout << " HM" << d + 1 << "=" << profile[d];
    std::cout << "\n";
  }
  write_report(cfg, report);
  return 0;
}

template <class Fld>
int run_homology(const Fld& fld, const RunConfig& cfg) {
  LoadedModel m = load_model(cfg);
  if (cfg.max_degree < 1) throw OperandError("--max-degree must be >= 1");
  if (m.obstacles) return run_obstacle_homology(cfg, *m.obstacles);

  const PrecubicalSet& X = *m.complex;
  ReachablePairs reach = reachable_pairs(X);
  validate_complex(X, reach);
  {
    auto el = check_equal_length(X, reach, cfg.max_degree);
    if (!el.ok) {
      auto cubes = [&](const CubeChain& c) {
        std::string ids = "[";
        for (std::size_t i = 0; i < c.cubes.size(); ++i)
          ids += (i ? " " : "") + std::to_string(X.cell_id(c.cubes[i]));
        return ids + "]";
      };
      throw ModelError(
          "equal-length hypothesis fails between " + X.vertex_label(el.v) +
          " and " + X.vertex_label(el.w) + " in dimension " +
          std::to_string(el.dim) + ": chain " + cubes(el.a) + " has length " +
          std::to_string(el.a.length()) + " but chain " + cubes(el.b) +
          " has length " + std::to_string(el.b.length()));
    }
  }
  auto pairs = resolve_pairs(X, reach, cfg.pairs);

  std::vector<HomologySummary> results(pairs.size());
  std::vector<ordered_json> slice_dumps(
      cfg.emit_slices.empty() ? 0 : pairs.size());
  parallel_for(static_cast<int>(pairs.size()), thread_count(cfg), [&](int i) {
    auto [v, w] = pairs[i];
    auto slice = complex_slice(X, v, w, cfg.max_degree, reach);
    if (verify_dd_zero(slice))
      throw IntegrityError("d∘d != 0 on pair " + X.vertex_label(v) + "->" +
                           X.vertex_label(w));
    results[i] = summarize(fld, slice, cfg.max_degree, cfg.representatives);
    if (!cfg.emit_slices.empty()) slice_dumps[i] = slice_to_json(X, slice);
  });

  ordered_json report;
  report["field"] = fld.name();
  report["max_degree"] = cfg.max_degree;
  report["pairs"] = ordered_json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    report["pairs"].push_back(summary_to_json(X, results[i]));
    std::cout << "pair " << X.vertex_label(results[i].v) << "->"
              << X.vertex_label(results[i].w) << ":";
    for (std::size_t d = 0; d < results[i].ranks.size(); ++d)
      std::cout << " HM" << d + 1 << "=" << results[i].ranks[d];
    std::cout << "\n";
  }
  if (!cfg.emit_slices.empty()) {
    ordered_json dump = ordered_json::array();
    for (auto& s : slice_dumps) dump.push_back(std::move(s));
    write_json_file(cfg.emit_slices, dump);
  }
  write_report(cfg, report);
  return 0;
}

// ---------------------------------------------------------------------------
// products

std::pair<int, int> parse_degrees(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw OperandError("--degrees expects i,j");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw OperandError("--degrees expects integers i,j");
  }
}

int run_obstacle_product(const RunConfig& cfg, const ObstacleModel& M) {
  ordered_json report;
  report["op"] = cfg.op;
  if (cfg.op == "obstacle-cup") {
    auto u = parse_point(cfg.from_spec), v = parse_point(cfg.to_spec);
    auto classes = enumerate_classes(M, u, v);
    report["classes"] = ordered_json::array();
    for (const auto& c : classes)
      report["classes"].push_back(chain_to_string(c));
    report["table"] = ordered_json::array();
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = 0; j < classes.size(); ++j) {
        if (cfg.left_index >= 0 && static_cast<int>(i) != cfg.left_index)
          continue;
        if (cfg.right_index >= 0 && static_cast<int>(j) != cfg.right_index)
          continue;
        auto r = cup(M, classes[i], classes[j]);
        std::string product =
            r.is_zero()
                ? "0"
                : (r.coeff == 1 ? "" : "-") + chain_to_string(*r.chain);
        ordered_json row;
        row["left"] = static_cast<int>(i);
        row["right"] = static_cast<int>(j);
        row["product"] = product;
        report["table"].push_back(row);
        std::cout << chain_to_string(classes[i]) << " cup "
                  << chain_to_string(classes[j]) << " = " << product << "\n";
      }
    write_report(cfg, report);
    return 0;
  }
  // obstacle-cap
  auto u = parse_point(cfg.from_spec), b = parse_point(cfg.via_spec),
       v = parse_point(cfg.to_spec);
  auto left = enumerate_classes(M, u, b);
  auto right = enumerate_classes(M, b, v);
  std::vector<ChainClass> image;
  report["table"] = ordered_json::array();
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      auto r = cap_chain(M, left[i], right[j]);
      if (std::find(image.begin(), image.end(), r) == image.end())
        image.push_back(r);
      ordered_json row;
      row["left"] = static_cast<int>(i);
      row["right"] = static_cast<int>(j);
      row["product"] = chain_to_string(r);
      report["table"].push_back(row);
      std::cout << chain_to_string(left[i]) << " cap "
                << chain_to_string(right[j]) << " = " << chain_to_string(r)
                << "\n";
    }
  std::sort(image.begin(), image.end());
  report["image"] = ordered_json::array();
  for (const auto& c : image) report["image"].push_back(chain_to_string(c));
  report["image_size"] = static_cast<int>(image.size());
  std::cout << "image size: " << image.size() << "\n";
  write_report(cfg, report);
  return 0;
}

template <class Fld>
int run_product(const Fld& fld, const RunConfig& cfg) {
  LoadedModel m = load_model(cfg);

  if (cfg.op == "obstacle-cup" || cfg.op == "obstacle-cap") {
    if (!m.obstacles)
      throw OperandError("obstacle products need --format obstacle-json");
    return run_obstacle_product(cfg, *m.obstacles);
  }
  if (!m.complex)
    throw OperandError("cube-chain products need a precubical model");
  const PrecubicalSet& X = *m.complex;
  ReachablePairs reach = reachable_pairs(X);
  validate_complex(X, reach);
  auto [deg_i, deg_j] = parse_degrees(cfg.degrees);
  if (deg_i < 1 || deg_j < 1)
    throw OperandError("degrees are HM indices and must be >= 1");
  const int dim_a = deg_i - 1, dim_b = deg_j - 1;
  ordered_json report;
  report["op"] = cfg.op;
  report["field"] = fld.name();

  if (cfg.op == "cup0") {
    if (dim_a != 0 || dim_b != 0)
      throw OperandError("cup0 is defined on HM^1 classes");
    const int a = resolve_vertex(X, cfg.from_spec);
    const int b = resolve_vertex(X, cfg.to_spec);
    auto slice = complex_slice(X, a, b, 1, reach);
    auto comps = path_components(slice);
    std::vector<BimoduleClass<Fld>> classes(comps.count);
    for (int k = 0; k < comps.count; ++k) {
      Cochain<Fld> f;
      f.v = a;
      f.w = b;
      f.dim = 0;
      for (int i = 0; i < static_cast<int>(slice.basis[0].size()); ++i)
        if (comps.comp[i] == k) f.terms.emplace(slice.basis[0][i], fld.one());
      classes[k] = cohomology_class(fld, slice, f);
    }
    report["classes"] = comps.count;
    report["table"] = ordered_json::array();
    for (int i = 0; i < comps.count; ++i)
      for (int j = 0; j < comps.count; ++j) {
        if (cfg.left_index >= 0 && i != cfg.left_index) continue;
        if (cfg.right_index >= 0 && j != cfg.right_index) continue;
        auto prod = cup0(fld, slice, classes[i], classes[j]);
        ordered_json row;
        row["left"] = i;
        row["right"] = j;
        row["zero"] = prod.is_zero();
        row["equals_left"] = class_equal(prod, classes[i], fld);
        report["table"].push_back(row);
        std::cout << "e" << i << " cup e" << j << " = "
                  << (prod.is_zero()
                          ? std::string("0")
                          : (class_equal(prod, classes[i], fld)
                                 ? "e" + std::to_string(i)
                                 : std::string("<mixed>")))
                  << "\n";
      }
    write_report(cfg, report);
    return 0;
  }

  const int a = resolve_vertex(X, cfg.from_spec);
  const int b = resolve_vertex(X, cfg.via_spec);
  const int c = resolve_vertex(X, cfg.to_spec);
  {
    auto el = check_equal_length(X, reach, dim_a + dim_b + 1);
    if (!el.ok) throw ModelError("equal-length hypothesis fails");
  }
  auto slice_ab = complex_slice(X, a, b, dim_a + 1, reach);
  auto slice_bc = complex_slice(X, b, c, dim_b + 1, reach);
  auto slice_ac = complex_slice(X, a, c, dim_a + dim_b + 1, reach);

  if (cfg.op == "conc") {
    auto left = cycle_representatives(fld, slice_ab, dim_a);
    auto right = cycle_representatives(fld, slice_bc, dim_b);
    std::vector<SparseVec<Fld>> image_vectors;
    report["left_classes"] = static_cast<int>(left.size());
    report["right_classes"] = static_cast<int>(right.size());
    report["products"] = ordered_json::array();
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) {
        if (cfg.left_index >= 0 && static_cast<int>(i) != cfg.left_index)
          continue;
        if (cfg.right_index >= 0 && static_cast<int>(j) != cfg.right_index)
          continue;
        BimoduleClass<Fld> ca;
        ca.v = a;
        ca.w = b;
        ca.dim = dim_a;
        ca.rep = left[i];
        BimoduleClass<Fld> cb;
        cb.v = b;
        cb.w = c;
        cb.dim = dim_b;
        cb.rep = right[j];
        auto prod = conc_product(fld, X, slice_ab, slice_bc, slice_ac, ca, cb);
        if (!prod.is_zero()) image_vectors.push_back(prod.rep);
        ordered_json row;
        row["left"] = static_cast<int>(i);
        row["right"] = static_cast<int>(j);
        std::vector<std::pair<int, std::string>> printable;
        for (const auto& [k, x] : prod.rep)
          printable.push_back({k, fld.to_string(x)});
        row["product"] =
            class_to_json(X, "HM", dim_a + dim_b + 1, a, c, printable);
        report["products"].push_back(row);
      }
    auto ech =
        echelonize(fld, std::move(image_vectors),
                   static_cast<int>(slice_ac.basis[dim_a + dim_b].size()),
                   false);
    report["image_rank"] = ech.rank();
    std::cout << "conc: " << left.size() << " x " << right.size()
              << " classes, image rank " << ech.rank() << "\n";
    write_report(cfg, report);
    return 0;
  }
  if (cfg.op == "cap") {
    if (dim_a != 0 || dim_b != 0)
      throw OperandError("cap is computed on HM^1 classes");
    auto pa = path_components(slice_ab);
    auto pb = path_components(slice_bc);
    auto indicator = [&](const ChainComplexSlice& s, const PathComponents& p,
                         int k, int v, int w) {
      Cochain<Fld> f;
      f.v = v;
      f.w = w;
      f.dim = 0;
      for (int i = 0; i < static_cast<int>(s.basis[0].size()); ++i)
        if (p.comp[i] == k) f.terms.emplace(s.basis[0][i], fld.one());
      return f;
    };
    std::vector<SparseVec<Fld>> image_vectors;
    report["left_classes"] = pa.count;
    report["right_classes"] = pb.count;
    report["products"] = ordered_json::array();
    for (int i = 0; i < pa.count; ++i)
      for (int j = 0; j < pb.count; ++j) {
        if (cfg.left_index >= 0 && i != cfg.left_index) continue;
        if (cfg.right_index >= 0 && j != cfg.right_index) continue;
        auto ca =
            cohomology_class(fld, slice_ab, indicator(slice_ab, pa, i, a, b));
        auto cb =
            cohomology_class(fld, slice_bc, indicator(slice_bc, pb, j, b, c));
        auto prod = cap(fld, X, slice_ab, slice_bc, slice_ac, ca, cb);
        if (!prod.is_zero()) image_vectors.push_back(prod.rep);
        ordered_json row;
        row["left"] = i;
        row["right"] = j;
        std::vector<std::pair<int, std::string>> printable;
        for (const auto& [k, x] : prod.rep)
          printable.push_back({k, fld.to_string(x)});
        row["product"] =
            class_to_json(X, "HMdual", dim_a + dim_b + 1, a, c, printable);
        report["products"].push_back(row);
      }
    auto ech = echelonize(fld, std::move(image_vectors),
                          static_cast<int>(slice_ac.basis[0].size()), false);
    report["image_rank"] = ech.rank();
    std::cout << "cap: " << pa.count << " x " << pb.count
              << " classes, image rank " << ech.rank() << "\n";
    write_report(cfg, report);
    return 0;
  }
  throw OperandError("unknown product op '" + cfg.op + "'");
}

// ---------------------------------------------------------------------------
// check

template <class Fld>
int run_check(const Fld& fld, const RunConfig& cfg) {
  LoadedModel m = load_model(cfg);
  if (!m.complex) throw OperandError("check needs a precubical model");
  const PrecubicalSet& X = *m.complex;
  int failures = 0;
  ordered_json report;
  report["checks"] = ordered_json::array();
  auto record = [&](const std::string& name, bool ok,
                    const std::string& detail) {
    ordered_json entry;
    entry["name"] = name;
    entry["ok"] = ok;
    if (!detail.empty()) entry["detail"] = detail;
    report["checks"].push_back(entry);
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name
              << (detail.empty() ? "" : ": " + detail) << "\n";
    if (!ok) ++failures;
  };

  bool structure_ok = true;
  {
    auto bad = X.verify_precubical_identity();
    record("precubical identity", !bad,
           bad ? "cell id " + std::to_string(X.cell_id(bad->cell)) : "");
    structure_ok = !bad;
  }
  {
    auto prop = is_proper(X);
    record("properness", prop.proper,
           prop.proper ? ""
                       : "cells " + std::to_string(X.cell_id(prop.a)) +
                             " and " + std::to_string(X.cell_id(prop.b)) +
                             " share corners");
  }
  ReachablePairs reach = reachable_pairs(X);
  const bool loops = has_directed_loop(X, reach);
  record("no directed loops", !loops, loops ? "directed cycle found" : "");
  if (loops || !structure_ok) {
    // chain enumeration is meaningless on a broken or looping complex
    std::cout << "remaining checks skipped\n";
    write_report(cfg, report);
    return 1;
  }
  {
    auto el = check_equal_length(X, reach, cfg.max_degree);
    record("equal-length hypothesis", el.ok,
           el.ok ? ""
                 : X.vertex_label(el.v) + "->" + X.vertex_label(el.w) +
                       " dim " + std::to_string(el.dim) + " lengths " +
                       std::to_string(el.a.length()) + " vs " +
                       std::to_string(el.b.length()));
  }
  {
    bool ok = true;
    std::string detail;
    for (auto [v, w] : reach.all()) {
      auto slice = complex_slice(X, v, w, cfg.max_degree, reach);
      if (auto bad = verify_dd_zero(slice)) {
        ok = false;
        detail = X.vertex_label(v) + "->" + X.vertex_label(w) +
                 " at dimension " + std::to_string(bad->first);
        break;
      }
    }
    record("d∘d = 0", ok, detail);
  }
  {
    // Leibniz spot checks on random composable chain pairs
    std::mt19937_64 rng(cfg.seed);
    auto pairs = reach.all();
    bool ok = true;
    std::string detail;
    int done = 0;
    for (int attempt = 0; attempt < cfg.samples * 10 && done < cfg.samples;
         ++attempt) {
      auto [v, w] = pairs[rng() % pairs.size()];
      std::vector<int> mids;
      for (int u = 0; u < X.vertex_count(); ++u)
        if (reach(v, u) && reach(u, w)) mids.push_back(u);
      if (mids.empty()) continue;
      int u = mids[rng() % mids.size()];
      auto car = enumerate_chains(X, v, u, 2, reach);
      auto cdr = enumerate_chains(X, u, w, 2, reach);
      std::vector<CubeChain> all_a, all_b;
      for (auto& per_dim : car)
        for (auto& ch : per_dim) all_a.push_back(ch);
      for (auto& per_dim : cdr)
        for (auto& ch : per_dim) all_b.push_back(ch);
      if (all_a.empty() || all_b.empty()) continue;
      const CubeChain& cc = all_a[rng() % all_a.size()];
      const CubeChain& dd = all_b[rng() % all_b.size()];
      FormalChain<Fld> fa{v, u, cc.dimension(), {}};
      fa.terms.emplace(cc, fld.one());
      FormalChain<Fld> fb{u, w, dd.dimension(), {}};
      fb.terms.emplace(dd, fld.one());
      auto lhs = boundary_of(fld, X, tensor(fld, fa, fb));
      auto t1 = tensor(fld, boundary_of(fld, X, fa), fb);
      auto t2 = tensor(fld, fa, boundary_of(fld, X, fb));
      const int sign = cc.dimension() % 2 == 0 ? 1 : -1;
      FormalChain<Fld> rhs = t1;
      for (auto& [k, x] : t2.terms)
        add_term(fld, rhs.terms, k, sign == 1 ? x : fld.neg(x));
      if (!(lhs.terms == rhs.terms)) {
        ok = false;
        detail = "between " + X.vertex_label(v) + " and " + X.vertex_label(w);
        break;
      }
      ++done;
    }
    record("boundary Leibniz rule (" + std::to_string(done) + " samples)", ok,
           detail);
  }
  {
    // pairing adjunction <d*f, c> = <f, dc> on random cochains/chains
    std::mt19937_64 rng(cfg.seed + 1);
    auto pairs = reach.all();
    bool ok = true;
    std::string detail;
    int done = 0;
    for (int attempt = 0; attempt < cfg.samples * 10 && done < cfg.samples;
         ++attempt) {
      auto [v, w] = pairs[rng() % pairs.size()];
      auto slice = complex_slice(X, v, w, 2, reach);
      if (slice.basis[1].empty()) continue;
      Cochain<Fld> f;
      f.v = v;
      f.w = w;
      f.dim = 0;
      for (const CubeChain& cc : slice.basis[0])
        if (rng() % 2) f.terms.emplace(cc, fld.from_int(1 + (rng() % 5)));
      FormalChain<Fld> c{v, w, 1, {}};
      c.terms.emplace(slice.basis[1][rng() % slice.basis[1].size()],
                      fld.one());
      auto lhs = pairing(fld, coboundary(fld, slice, f), c);
      auto rhs = pairing(fld, f, boundary_of(fld, X, c));
      if (!fld.eq(lhs, rhs)) {
        ok = false;
        detail = X.vertex_label(v) + "->" + X.vertex_label(w);
        break;
      }
      ++done;
    }
    record("pairing adjunction (" + std::to_string(done) + " samples)", ok,
           detail);
  }
  write_report(cfg, report);
  return failures == 0 ? 0 : 1;
}

template <class Fn>
int with_field(const RunConfig& cfg, Fn&& fn) {
  if (cfg.field == "rationals" || cfg.field == "Q" || cfg.field == "q")
    return fn(RationalField{});
  std::uint64_t p = 0;
  try {
    p = std::stoull(cfg.field);
  } catch (const std::exception&) {
    throw OperandError("--field expects 'rationals' or a prime");
  }
  std::optional<PrimeField> fld;
  try {
    fld.emplace(p);
  } catch (const DomainError& e) {
    throw OperandError(e.what());
  }
  return fn(*fld);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"directed (co)homology bimodules of precubical models"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input file")->required();
    sub->add_option("--format", cfg.format,
                    "pv | grid-json | complex-json | obstacle-json");
    sub->add_option("--field", cfg.field, "rationals | a prime p");
    sub->add_option("--threads", cfg.threads,
                    "worker threads (default: DIHOM_THREADS or 1)");
    sub->add_option("--out", cfg.out, "write a JSON report here");
  };

  CLI::App* hom =
      app.add_subcommand("homology", "per-pair (co)homology ranks");
  add_common(hom);
  hom->add_option("--pairs", cfg.pairs,
                  "semicolon list of a->b (coordinates or ids), or "
                  "all-reachable");
  hom->add_option("--max-degree", cfg.max_degree, "report HM^1..HM^D");
  hom->add_flag("--representatives", cfg.representatives,
                "include canonical cocycle representatives");
  hom->add_option("--emit-slices", cfg.emit_slices,
                  "dump the per-pair chain complexes to this file");

  CLI::App* prod =
      app.add_subcommand("product", "homology/cohomology products");
  add_common(prod);
  prod->add_option("--op", cfg.op,
                   "conc | cap | cup0 | obstacle-cup | obstacle-cap")
      ->required();
  prod->add_option("--from", cfg.from_spec, "left endpoint");
  prod->add_option("--via", cfg.via_spec, "middle endpoint (conc/cap)");
  prod->add_option("--to", cfg.to_spec, "right endpoint");
  prod->add_option("--degrees", cfg.degrees, "HM degrees i,j (default 1,1)");
  prod->add_option("--left", cfg.left_index, "restrict to one left operand");
  prod->add_option("--right", cfg.right_index,
                   "restrict to one right operand");

  CLI::App* chk = app.add_subcommand("check", "model invariant suite");
  add_common(chk);
  chk->add_option("--max-degree", cfg.max_degree, "slice depth for d∘d = 0");
  chk->add_option("--samples", cfg.samples, "spot-check sample count");
  chk->add_option("--seed", cfg.seed, "spot-check RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (hom->parsed())
      return with_field(cfg, [&](auto fld) { return run_homology(fld, cfg); });
    if (prod->parsed())
      return with_field(cfg, [&](auto fld) { return run_product(fld, cfg); });
    if (chk->parsed()) {
      cfg.max_degree = std::max(cfg.max_degree, 2);
      return with_field(cfg, [&](auto fld) { return run_check(fld, cfg); });
    }
  } catch (const PvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OperandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
