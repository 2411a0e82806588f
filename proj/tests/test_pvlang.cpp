#include "doctest.h"

#include "dihom/homalg.hpp"
#include "dihom/pvlang.hpp"
#include "testutil.hpp"

using namespace dihom;
using namespace dihom::testing;

TEST_CASE("parse: two-process mutex") {
  auto prog = parse_pv("sem a 1; proc p1 = P(a);V(a); proc p2 = P(a);V(a);");
  REQUIRE(prog.processes.size() == 2);
  CHECK(prog.capacity("a") == 1);
  CHECK(prog.processes[0].actions.size() == 2);
  CHECK(prog.processes[0].actions[0].acquire);
  CHECK_FALSE(prog.processes[0].actions[1].acquire);
}

TEST_CASE("parse: comments and whitespace are ignored") {
  auto prog = parse_pv(
      "# a tiny program\n"
      "sem   a 1 ;\n"
      "proc p =\n"
      "  P(a) ; # enter\n"
      "  V(a) ;\n");
  REQUIRE(prog.processes.size() == 1);
  CHECK(prog.processes[0].actions.size() == 2);
}

TEST_CASE("parse: an empty program is valid") {
  auto prog = parse_pv("");
  CHECK(prog.processes.empty());
  auto spec = pv_semantics(prog);
  CHECK(spec.extents.empty());
  auto X = build_grid(spec);
  CHECK(X.size(0) == 1);
}

TEST_CASE("parse errors carry positions") {
  // unbalanced P/V
  CHECK_THROWS_AS(parse_pv("sem a 2; proc p = P(a);P(a);"), PvError);
  // releasing without holding
  CHECK_THROWS_AS(parse_pv("sem a 1; proc p = V(a);"), PvError);
  // never released
  CHECK_THROWS_AS(parse_pv("sem a 1; proc p = P(a);"), PvError);
  // undeclared semaphore
  CHECK_THROWS_AS(parse_pv("proc p = P(a);V(a);"), PvError);
  // syntax errors
  CHECK_THROWS_AS(parse_pv("sem a; proc p = P(a);V(a);"), PvError);
  CHECK_THROWS_AS(parse_pv("sem a 1; proc p = P(a) V(a);"), PvError);
  CHECK_THROWS_AS(parse_pv("sem a 1; proc p = Q(a);"), PvError);
  CHECK_THROWS_AS(parse_pv("sem a 0; proc p = P(a);V(a);"), PvError);
  try {
    parse_pv("sem a 1;\nproc p = P(b);V(b);");
    FAIL("expected a diagnostic");
  } catch (const PvError& e) {
    CHECK(e.line == 2);
    CHECK(e.column >= 10);
  }
}

TEST_CASE("semantics: mutual exclusion forbids the single shared cell") {
  auto spec = pv_semantics(parse_pv(pv_mutex_source()));
  CHECK(spec.extents == std::vector<int>{2, 2});
  CHECK(spec.forbidden == std::set<std::vector<int>>{{1, 1}});
  CHECK(is_proper(build_grid(spec)).proper);
}

TEST_CASE("semantics: three processes on a capacity-two semaphore") {
  auto spec = pv_semantics(parse_pv(
      "sem a 2;"
      "proc p = P(a);V(a); proc q = P(a);V(a); proc r = P(a);V(a);"));
  CHECK(spec.extents == std::vector<int>{2, 2, 2});
  CHECK(spec.forbidden == std::set<std::vector<int>>{{1, 1, 1}});
}

TEST_CASE("semantics: a single process forbids nothing") {
  auto spec = pv_semantics(parse_pv("sem a 1; proc p = P(a);V(a);"));
  CHECK(spec.extents == std::vector<int>{2});
  CHECK(spec.forbidden.empty());
}

TEST_CASE("semantics: raising a capacity never adds forbidden cells") {
  const std::string body =
      "proc p = P(a);V(a);P(a);V(a);"
      "proc q = P(a);P(b);V(b);V(a);"
      "proc r = P(b);V(b);P(a);V(a);";
  for (int k1 = 1; k1 <= 3; ++k1) {
    auto lo = pv_semantics(parse_pv("sem a " + std::to_string(k1) +
                                    "; sem b 1;" + body));
    auto hi = pv_semantics(parse_pv("sem a " + std::to_string(k1 + 1) +
                                    "; sem b 1;" + body));
    for (const auto& cell : hi.forbidden) CHECK(lo.forbidden.count(cell) == 1);
  }
}

TEST_CASE("semantics: permuting processes permutes axes") {
  auto ab = pv_semantics(parse_pv(
      "sem a 1; proc p = P(a);V(a); proc q = P(a);V(a);P(a);V(a);"));
  auto ba = pv_semantics(parse_pv(
      "sem a 1; proc q = P(a);V(a);P(a);V(a); proc p = P(a);V(a);"));
  REQUIRE(ab.extents.size() == 2);
  CHECK(ab.extents[0] == ba.extents[1]);
  CHECK(ab.extents[1] == ba.extents[0]);
  std::set<std::vector<int>> swapped;
  for (const auto& cell : ba.forbidden)
    swapped.insert({cell[1], cell[0]});
  CHECK(ab.forbidden == swapped);
}

TEST_CASE("semantics: repeated holds forbid each critical cell") {
  auto spec = pv_semantics(parse_pv(
      "sem a 1; proc p = P(a);V(a);P(a);V(a); proc q = P(a);V(a);"));
  CHECK(spec.extents == std::vector<int>{4, 2});
  // p holds over its cells 1 and 3; q holds over its cell 1
  CHECK(spec.forbidden ==
        std::set<std::vector<int>>{{1, 1}, {3, 1}});
}

TEST_CASE("pv pipeline: the mutex model has two schedule classes") {
  auto X = build_grid(pv_semantics(parse_pv(pv_mutex_source())));
  auto reach = reachable_pairs(X);
  auto s = complex_slice(X, *X.vertex_at({0, 0}), *X.vertex_at({2, 2}), 1,
                         reach);
  CHECK(path_components(s).count == 2);
}
