#include "odds/lp_export.hpp"

#include <fmt/format.h>

#include <cmath>
#include <iterator>

namespace odds::lp {

namespace {

const char* row_type(Relation rel) {
  switch (rel) {
    case Relation::LessEqual: return "L";
    case Relation::GreaterEqual: return "G";
    case Relation::Equal: return "E";
  }
  return "N";
}

const char* relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

// Shortest round-trip form; never prints a negative zero.
std::string num(double v) { return fmt::format("{}", v == 0.0 ? 0.0 : v); }

}  // namespace

std::string to_mps(const LpProblem& prob) {
  const auto& vars = prob.variables();
  const auto& rows = prob.constraints();

  // Column-wise view: objective first, then rows in declaration order.
  std::vector<std::vector<std::pair<std::string, double>>> columns(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].objective != 0.0) columns[j].emplace_back("OBJ", vars[j].objective);
  }
  for (const Constraint& row : rows) {
    for (const Term& t : row.terms) {
      if (t.coef != 0.0) columns[t.var].emplace_back(row.name, t.coef);
    }
  }

  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "NAME          {}\n", prob.name());
  fmt::format_to(it, "OBJSENSE\n    {}\n", prob.sense() == Sense::Maximize ? "MAX" : "MIN");
  fmt::format_to(it, "ROWS\n N  OBJ\n");
  for (const Constraint& row : rows) fmt::format_to(it, " {}  {}\n", row_type(row.relation), row.name);

  fmt::format_to(it, "COLUMNS\n");
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (columns[j].empty()) {
      fmt::format_to(it, "    {:<8}  {:<8}  {}\n", vars[j].name, "OBJ", num(0.0));
      continue;
    }
    for (const auto& [row, value] : columns[j]) {
      fmt::format_to(it, "    {:<8}  {:<8}  {}\n", vars[j].name, row, num(value));
    }
  }

  fmt::format_to(it, "RHS\n");
  for (const Constraint& row : rows) {
    if (row.rhs != 0.0) fmt::format_to(it, "    {:<8}  {:<8}  {}\n", "RHS", row.name, num(row.rhs));
  }

  fmt::format_to(it, "BOUNDS\n");
  for (const Variable& v : vars) {
    const bool lo_inf = v.lower == -kInf;
    const bool up_inf = v.upper == kInf;
    if (lo_inf && up_inf) {
      fmt::format_to(it, " FR {:<8}  {}\n", "BND", v.name);
    } else if (!lo_inf && !up_inf && v.lower == v.upper) {
      fmt::format_to(it, " FX {:<8}  {:<8}  {}\n", "BND", v.name, num(v.lower));
    } else {
      if (lo_inf) {
        fmt::format_to(it, " MI {:<8}  {}\n", "BND", v.name);
      } else if (v.lower != 0.0) {
        fmt::format_to(it, " LO {:<8}  {:<8}  {}\n", "BND", v.name, num(v.lower));
      }
      if (!up_inf) fmt::format_to(it, " UP {:<8}  {:<8}  {}\n", "BND", v.name, num(v.upper));
    }
  }
  fmt::format_to(it, "ENDATA\n");
  return out;
}

namespace {

void write_linear(std::back_insert_iterator<std::string> it,
                  const std::vector<std::pair<std::size_t, double>>& terms,
                  const std::vector<Variable>& vars) {
  bool first = true;
  for (const auto& [var, coef] : terms) {
    if (coef == 0.0) continue;
    const char* sign = coef < 0.0 ? "-" : "+";
    if (first) {
      fmt::format_to(it, "{}{} {}", coef < 0.0 ? "-" : "", num(std::abs(coef)), vars[var].name);
    } else {
      fmt::format_to(it, " {} {} {}", sign, num(std::abs(coef)), vars[var].name);
    }
    first = false;
  }
  if (first && !vars.empty()) fmt::format_to(it, "0 {}", vars.front().name);
}

}  // namespace

std::string to_lp_text(const LpProblem& prob) {
  const auto& vars = prob.variables();
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "\\ Problem: {}\n", prob.name());
  fmt::format_to(it, "{}\n obj: ", prob.sense() == Sense::Maximize ? "Maximize" : "Minimize");
  std::vector<std::pair<std::size_t, double>> obj;
  for (std::size_t j = 0; j < vars.size(); ++j) obj.emplace_back(j, vars[j].objective);
  write_linear(it, obj, vars);
  fmt::format_to(it, "\nSubject To\n");
  for (const Constraint& row : prob.constraints()) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (const Term& t : row.terms) terms.emplace_back(t.var, t.coef);
    fmt::format_to(it, " {}: ", row.name);
    write_linear(it, terms, vars);
    fmt::format_to(it, " {} {}\n", relation_symbol(row.relation), num(row.rhs));
  }
  fmt::format_to(it, "Bounds\n");
  for (const Variable& v : vars) {
    const bool lo_inf = v.lower == -kInf;
    const bool up_inf = v.upper == kInf;
    if (lo_inf && up_inf) {
      fmt::format_to(it, " {} free\n", v.name);
    } else if (lo_inf) {
      fmt::format_to(it, " -inf <= {} <= {}\n", v.name, num(v.upper));
    } else if (up_inf) {
      if (v.lower != 0.0) fmt::format_to(it, " {} >= {}\n", v.name, num(v.lower));
    } else {
      fmt::format_to(it, " {} <= {} <= {}\n", num(v.lower), v.name, num(v.upper));
    }
  }
  fmt::format_to(it, "End\n");
  return out;
}

}  // namespace odds::lp
