#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bounds.hpp"

namespace preschwarz {

/// One published (s, root, bound) triple.
struct PublishedRow {
  int table = 0;
  std::string s_label;
  double s = 0.0;
  double root = 0.0;
  double bound = 0.0;
};

/// Parses `table,s_label,s,root,bound` rows; lines starting with '#' and
/// the header line are skipped.
inline std::vector<PublishedRow> parse_published_rows(std::string_view csv) {
  std::vector<PublishedRow> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || line.rfind("table,", 0) == 0) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) {
      throw DomainError("published tables: line " + std::to_string(line_no) + " does not have 5 fields");
    }
    try {
      rows.push_back({std::stoi(cells[0]), cells[1], std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4])});
    } catch (const std::logic_error&) {
      throw DomainError("published tables: line " + std::to_string(line_no) + " has a non-numeric field");
    }
  }
  return rows;
}

/// Table 1 is the starlike-hyperbolic class, 2 starlike-limacon, 3 convex-hyperbolic.
inline Family table_family(int which) {
  switch (which) {
    case 1: return Family::StarHyp;
    case 2: return Family::StarLimacon;
    case 3: return Family::ConvHyp;
    default: throw DomainError("unknown table " + std::to_string(which) + "; expected 1, 2 or 3");
  }
}

struct TableRow {
  std::string s_label;
  double s = 0.0;
  double root = 0.0;
  double bound = 0.0;
  double published_root = 0.0;
  double published_bound = 0.0;

  double delta_root() const { return root - published_root; }
  double delta_bound() const { return bound - published_bound; }
};

/// Published tolerance: the tables carry six significant digits.
inline constexpr double kTableTolerance = 1e-5;

/// Recomputes every published row of one table.
inline std::vector<TableRow> reproduce_table(int which, const std::vector<PublishedRow>& published) {
  const Family family = table_family(which);
  std::vector<TableRow> out;
  for (const auto& p : published) {
    if (p.table != which) continue;
    const NormBound nb = norm_bound(ClassSpec(family, p.s));
    out.push_back({p.s_label, p.s, nb.root ? nb.root->root : NAN, nb.bound, p.root, p.bound});
  }
  return out;
}

inline bool table_within_tolerance(const std::vector<TableRow>& rows, double tol = kTableTolerance) {
  for (const auto& r : rows) {
    if (!(std::abs(r.delta_root()) < tol && std::abs(r.delta_bound()) < tol)) return false;
  }
  return !rows.empty();
}

}  // namespace preschwarz
