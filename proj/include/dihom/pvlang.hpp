#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dihom/precubical.hpp"

namespace dihom {

// A minimal PV semaphore language and its geometric semantics.  Programs are
// straight-line (no loops or branches, as the theory needs non-looping
// models); each process is a sequence of P/V actions executing at integer
// times, and a top cell of the product grid is forbidden exactly when some
// semaphore would be over-held on it.
//
// Grammar (whitespace-insensitive, '#' comments to end of line):
//   program := { decl | proc }
//   decl    := "sem" IDENT INT ";"
//   proc    := "proc" IDENT "=" action { ";" action } ";"
//   action  := ("P" | "V") "(" IDENT ")"

struct PVAction {
  bool acquire = true;  // P(...) when true, V(...) when false
  std::string semaphore;
};

struct PVProcess {
  std::string name;
  std::vector<PVAction> actions;
};

struct PVProgram {
  std::vector<std::pair<std::string, int>> semaphores;  // name -> capacity
  std::vector<PVProcess> processes;

  int capacity(const std::string& name) const;
};

struct PvError : std::runtime_error {
  int line, column;
  PvError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
};

/// Parse a PV program; diagnoses syntax errors, undeclared semaphores, and
/// P/V sequences that fail to alternate starting with P or end unbalanced.
PVProgram parse_pv(std::string_view source);

/// Geometric semantics: extents = action counts; process p holds s on the
/// open intervals (t_P, t_V); cell (j_1,...,j_n) is forbidden iff for some
/// semaphore s at least capacity(s) + 1 processes hold s over their whole
/// cell interval (j_p, j_p + 1).
GridSpec pv_semantics(const PVProgram& prog);

}  // namespace dihom
