#include "odds/lp_model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace odds::lp {

namespace {

std::string indexed(const char* base, std::size_t i) { return base + std::to_string(i); }

}  // namespace

LpProblem::LpProblem(Sense sense, std::string name) : sense_(sense), name_(std::move(name)) {}

std::size_t LpProblem::add_variable(std::string name, double lower, double upper,
                                    double objective) {
  if (var_index_.count(name) != 0) {
    throw Error(ErrorKind::InvalidArgument, "duplicate variable name '" + name + "'");
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper || lower == kInf ||
      upper == -kInf) {
    throw Error(ErrorKind::InvalidArgument, "invalid bounds for variable '" + name + "'");
  }
  if (!std::isfinite(objective)) {
    throw Error(ErrorKind::InvalidArgument, "non-finite objective for variable '" + name + "'");
  }
  const std::size_t idx = vars_.size();
  var_index_.emplace(name, idx);
  vars_.push_back(Variable{std::move(name), lower, upper, objective});
  return idx;
}

std::size_t LpProblem::add_constraint(std::string name, std::vector<Term> terms,
                                      Relation relation, double rhs) {
  if (row_index_.count(name) != 0) {
    throw Error(ErrorKind::InvalidArgument, "duplicate constraint name '" + name + "'");
  }
  if (!std::isfinite(rhs)) {
    throw Error(ErrorKind::InvalidArgument, "non-finite right-hand side in '" + name + "'");
  }
  std::unordered_set<std::size_t> seen;
  for (const Term& t : terms) {
    if (t.var >= vars_.size()) {
      throw Error(ErrorKind::InvalidArgument, "constraint '" + name + "' uses an undeclared variable");
    }
    if (!seen.insert(t.var).second) {
      throw Error(ErrorKind::InvalidArgument,
                  "constraint '" + name + "' repeats variable '" + vars_[t.var].name + "'");
    }
    if (!std::isfinite(t.coef)) {
      throw Error(ErrorKind::InvalidArgument, "non-finite coefficient in '" + name + "'");
    }
  }
  const std::size_t idx = rows_.size();
  row_index_.emplace(name, idx);
  rows_.push_back(Constraint{std::move(name), std::move(terms), relation, rhs});
  return idx;
}

std::optional<std::size_t> LpProblem::find_variable(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LpProblem::find_constraint(const std::string& name) const {
  auto it = row_index_.find(name);
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

double LpProblem::objective_value(std::span<const double> x) const {
  if (x.size() != vars_.size()) throw Error(ErrorKind::DimensionMismatch, "point has wrong size");
  double sum = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) sum += vars_[j].objective * x[j];
  return sum;
}

std::vector<double> LpProblem::activities(std::span<const double> x) const {
  if (x.size() != vars_.size()) throw Error(ErrorKind::DimensionMismatch, "point has wrong size");
  std::vector<double> act(rows_.size(), 0.0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (const Term& t : rows_[i].terms) act[i] += t.coef * x[t.var];
  }
  return act;
}

double LpProblem::max_violation(std::span<const double> x) const {
  const auto act = activities(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const double diff = act[i] - rows_[i].rhs;
    switch (rows_[i].relation) {
      case Relation::LessEqual: worst = std::max(worst, diff); break;
      case Relation::GreaterEqual: worst = std::max(worst, -diff); break;
      case Relation::Equal: worst = std::max(worst, std::abs(diff)); break;
    }
  }
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    worst = std::max(worst, vars_[j].lower - x[j]);
    worst = std::max(worst, x[j] - vars_[j].upper);
  }
  return worst;
}

LpProblem build_flow_lp(const Instance& inst) {
  const std::size_t n = inst.n();
  LpProblem lp(Sense::Maximize, "FLOW");
  for (std::size_t i = 1; i <= n; ++i) lp.add_variable(indexed("y_", i), 0.0, kInf, inst.reward(i - 1));
  // z_k sits at column n + k.
  for (std::size_t k = 0; k <= n; ++k) lp.add_variable(indexed("z_", k), -kInf, kInf);
  auto y = [](std::size_t i) { return i - 1; };
  auto z = [n](std::size_t k) { return n + k; };

  for (std::size_t i = 1; i <= n; ++i) {
    lp.add_constraint(indexed("Cap_", i), {{y(i), 1.0}, {z(i - 1), -inst.p(i - 1)}},
                      Relation::LessEqual, 0.0);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    lp.add_constraint(indexed("Cons_", i), {{y(i), 1.0}, {z(i), 1.0}, {z(i - 1), -1.0}},
                      Relation::Equal, 0.0);
  }
  lp.add_constraint("Source", {{z(0), 1.0}}, Relation::Equal, 1.0);
  return lp;
}

LpProblem build_dual_lp(const Instance& inst, DualForm form) {
  const std::size_t n = inst.n();
  LpProblem lp(Sense::Minimize, form == DualForm::P ? "VALUE_P" : "VALUE_P1");
  for (std::size_t k = 0; k <= n; ++k) {
    lp.add_variable(indexed("w_", k), -kInf, kInf, k == 0 ? 1.0 : 0.0);
  }
  auto w = [](std::size_t k) { return k; };

  if (form == DualForm::P) {
    for (std::size_t i = 1; i <= n; ++i) {
      lp.add_constraint(indexed("Stop_", i), {{w(i - 1), 1.0}, {w(i), -inst.q(i - 1)}},
                        Relation::GreaterEqual, inst.p(i - 1) * inst.reward(i - 1));
    }
    for (std::size_t i = 1; i <= n; ++i) {
      lp.add_constraint(indexed("Cont_", i), {{w(i - 1), 1.0}, {w(i), -1.0}},
                        Relation::GreaterEqual, 0.0);
    }
  } else {
    for (std::size_t i = 1; i <= n; ++i) lp.add_variable(indexed("alpha_", i), 0.0, kInf);
    auto alpha = [n](std::size_t i) { return n + i; };
    for (std::size_t i = 1; i <= n; ++i) {
      lp.add_constraint(indexed("Stop_", i), {{w(i), 1.0}, {alpha(i), 1.0 / inst.p(i - 1)}},
                        Relation::GreaterEqual, inst.reward(i - 1));
    }
    for (std::size_t i = 1; i <= n; ++i) {
      lp.add_constraint(indexed("Link_", i), {{w(i - 1), 1.0}, {w(i), -1.0}, {alpha(i), -1.0}},
                        Relation::Equal, 0.0);
    }
  }
  lp.add_constraint("Terminal", {{w(n), 1.0}}, Relation::Equal, 0.0);
  return lp;
}

LpProblem build_secretary_reduced_lp(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::EmptyInstance, "secretary LP needs n >= 1");
  LpProblem lp(Sense::Maximize, "SECRETARY");
  const auto dn = static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) {
    lp.add_variable(indexed("y_", i), 0.0, kInf, static_cast<double>(i) / dn);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Term> terms;
    terms.reserve(i);
    for (std::size_t k = 1; k < i; ++k) terms.push_back({k - 1, 1.0});
    terms.push_back({i - 1, static_cast<double>(i)});
    lp.add_constraint(indexed("Sec_", i), std::move(terms), Relation::LessEqual, 1.0);
  }
  return lp;
}

std::vector<double> flow_lp_point(const FlowSolution& flow) {
  if (flow.z.size() != flow.y.size() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "flow needs |z| = |y| + 1");
  }
  std::vector<double> x(flow.y);
  x.insert(x.end(), flow.z.begin(), flow.z.end());
  return x;
}

FlowSolution flow_from_lp_point(std::size_t n, std::span<const double> x) {
  if (x.size() != 2 * n + 1) throw Error(ErrorKind::DimensionMismatch, "flow LP point has wrong size");
  FlowSolution flow;
  flow.y.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  flow.z.assign(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
  return flow;
}

std::vector<double> dual_p_point(const ValueVector& w) { return w.w; }

ValueVector values_from_dual_point(std::size_t n, std::span<const double> x) {
  if (x.size() < n + 1) throw Error(ErrorKind::DimensionMismatch, "dual LP point has wrong size");
  return ValueVector{std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n + 1))};
}

DualAuxiliary auxiliary_from_values(const ValueVector& w) {
  DualAuxiliary aux;
  if (w.w.empty()) return aux;
  aux.alpha.resize(w.w.size() - 1);
  for (std::size_t i = 1; i < w.w.size(); ++i) aux.alpha[i - 1] = w.w[i - 1] - w.w[i];
  return aux;
}

std::vector<double> dual_p1_point(const ValueVector& w, const DualAuxiliary& aux) {
  if (aux.alpha.size() + 1 != w.w.size()) {
    throw Error(ErrorKind::DimensionMismatch, "alpha needs |w| - 1 entries");
  }
  std::vector<double> x(w.w);
  x.insert(x.end(), aux.alpha.begin(), aux.alpha.end());
  return x;
}

}  // namespace odds::lp
