#include "dihom/pvlang.hpp"

#include <cctype>
#include <map>

namespace dihom {

int PVProgram::capacity(const std::string& name) const {
  for (const auto& [n, k] : semaphores)
    if (n == name) return k;
  throw DomainError("unknown semaphore " + name);
}

namespace {

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_space() {
    while (pos < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[pos]))) {
        advance();
      } else if (src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else {
        break;
      }
    }
  }
  bool eof() {
    skip_space();
    return pos >= src.size();
  }
  char peek() {
    skip_space();
    return pos < src.size() ? src[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw PvError(line, col, msg);
  }
  void expect(char c) {
    skip_space();
    if (pos >= src.size() || src[pos] != c)
      fail(std::string("expected '") + c + "'");
    advance();
  }
  std::string ident() {
    skip_space();
    if (pos >= src.size() ||
        !(std::isalpha(static_cast<unsigned char>(src[pos])) ||
          src[pos] == '_'))
      fail("expected an identifier");
    std::string out;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '_')) {
      out.push_back(src[pos]);
      advance();
    }
    return out;
  }
  int integer() {
    skip_space();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      fail("expected an integer");
    long long v = 0;
    while (pos < src.size() &&
           std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      if (v > 1'000'000) fail("integer literal too large");
      advance();
    }
    return static_cast<int>(v);
  }
};

}  // namespace

PVProgram parse_pv(std::string_view source) {
  Lexer lx{source};
  PVProgram prog;
  std::map<std::string, int> sems;

  while (!lx.eof()) {
    lx.skip_space();
    int kw_line = lx.line, kw_col = lx.col;
    std::string kw = lx.ident();
    if (kw == "sem") {
      std::string name = lx.ident();
      int cap = lx.integer();
      if (cap < 1) throw PvError(kw_line, kw_col, "capacity must be >= 1");
      if (!sems.emplace(name, cap).second)
        throw PvError(kw_line, kw_col, "semaphore '" + name +
                                           "' declared twice");
      prog.semaphores.push_back({name, cap});
      lx.expect(';');
    } else if (kw == "proc") {
      PVProcess proc;
      proc.name = lx.ident();
      lx.expect('=');
      for (;;) {
        lx.skip_space();
        int a_line = lx.line, a_col = lx.col;
        std::string op = lx.ident();
        if (op != "P" && op != "V")
          throw PvError(a_line, a_col, "expected action P(...) or V(...)");
        lx.expect('(');
        std::string sem = lx.ident();
        lx.expect(')');
        if (!sems.count(sem))
          throw PvError(a_line, a_col,
                        "undeclared semaphore '" + sem + "'");
        proc.actions.push_back({op == "P", sem});
        lx.expect(';');
        // another action, or the end of this process / the program
        char c = lx.peek();
        if (c == 'P' || c == 'V') {
          // 'P'/'V' could also start an identifier like 'proc'; look ahead
          Lexer probe = lx;
          std::string next = probe.ident();
          if (next == "P" || next == "V") continue;
        }
        break;
      }
      // per-semaphore alternation: P then V, balanced at the end
      std::map<std::string, int> held;
      for (const PVAction& a : proc.actions) {
        int& h = held[a.semaphore];
        if (a.acquire) {
          if (h != 0)
            throw PvError(kw_line, kw_col,
                          "process '" + proc.name + "' acquires '" +
                              a.semaphore + "' twice without releasing");
          h = 1;
        } else {
          if (h != 1)
            throw PvError(kw_line, kw_col,
                          "process '" + proc.name + "' releases '" +
                              a.semaphore + "' without holding it");
          h = 0;
        }
      }
      for (const auto& [sem, h] : held)
        if (h != 0)
          throw PvError(kw_line, kw_col, "process '" + proc.name +
                                             "' never releases '" + sem +
                                             "'");
      prog.processes.push_back(std::move(proc));
    } else {
      throw PvError(kw_line, kw_col, "expected 'sem' or 'proc'");
    }
  }
  return prog;
}

GridSpec pv_semantics(const PVProgram& prog) {
  const int n = static_cast<int>(prog.processes.size());
  GridSpec spec;
  for (const PVProcess& p : prog.processes)
    spec.extents.push_back(static_cast<int>(p.actions.size()));
  if (n == 0) return spec;

  // hold[p][sem] = list of open intervals (t_P, t_V), actions at times 1..m
  std::vector<std::map<std::string, std::vector<std::pair<int, int>>>> hold(n);
  for (int p = 0; p < n; ++p) {
    std::map<std::string, int> open_at;
    const auto& actions = prog.processes[p].actions;
    for (int t = 1; t <= static_cast<int>(actions.size()); ++t) {
      const PVAction& a = actions[t - 1];
      if (a.acquire)
        open_at[a.semaphore] = t;
      else
        hold[p][a.semaphore].push_back({open_at[a.semaphore], t});
    }
  }
  auto holds_on_cell = [&](int p, const std::string& sem, int j) {
    auto it = hold[p].find(sem);
    if (it == hold[p].end()) return false;
    for (auto [a, b] : it->second)
      if (a <= j && j + 1 <= b) return true;  // (j, j+1) inside (a, b)
    return false;
  };

  std::vector<int> cell(n, 0);
  for (;;) {
    for (const auto& [sem, cap] : prog.semaphores) {
      int holders = 0;
      for (int p = 0; p < n; ++p)
        if (holds_on_cell(p, sem, cell[p])) ++holders;
      if (holders >= cap + 1) {
        spec.forbidden.insert(cell);
        break;
      }
    }
    int l = n - 1;
    while (l >= 0 && ++cell[l] >= spec.extents[l]) cell[l--] = 0;
    if (l < 0) break;
  }
  return spec;
}

}  // namespace dihom
