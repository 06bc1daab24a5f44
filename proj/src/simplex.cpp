#include "odds/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace odds::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

double OptimalityReport::max() const {
  return std::max({primal_residual, dual_sign_residual, reduced_cost_residual, complementarity});
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// x_j = offset + sign_a * col_a + sign_b * col_b (col_b only for free columns).
struct ColumnMap {
  double offset = 0.0;
  std::size_t col_a = kNone;
  double sign_a = 1.0;
  std::size_t col_b = kNone;
  double sign_b = -1.0;
};

struct InternalRow {
  std::vector<double> coef;  // over structural columns
  Relation relation;
  double rhs;
  double flip = 1.0;  // -1 when the row was negated to make rhs >= 0
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  // The objective row lives below the constraint rows.
  double& cost(std::size_t c) { return at(rows_, c); }
  double cost(std::size_t c) const { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t s) {
    const std::size_t width = cols_ + 1;
    double* prow = &data_[r * width];
    const double inv = 1.0 / prow[s];
    for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
    prow[s] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &data_[i * width];
      const double factor = row[s];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) row[c] -= factor * prow[c];
      row[s] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class PhaseResult { Optimal, Unbounded };

class SimplexEngine {
 public:
  SimplexEngine(const LpProblem& prob, const SimplexOptions& options)
      : prob_(prob), opt_(options), tab_(0, 0) {
    build();
  }

  LpSolution run();

 private:
  void build();
  PhaseResult iterate(bool allow_artificial);
  void drive_out_artificials();
  void load_phase_two_costs();
  LpSolution extract(Status status) const;

  bool is_artificial(std::size_t col) const { return col >= first_artificial_; }

  const LpProblem& prob_;
  SimplexOptions opt_;
  std::vector<ColumnMap> maps_;
  std::vector<double> structural_cost_;  // maximization costs per structural column
  std::size_t num_structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<InternalRow> rows_;
  std::vector<std::size_t> unit_col_;
  std::vector<std::size_t> basis_;
  Tableau tab_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

void SimplexEngine::build() {
  const auto& vars = prob_.variables();
  const double sense = prob_.sense() == Sense::Maximize ? 1.0 : -1.0;

  maps_.resize(vars.size());
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const Variable& v = vars[j];
    ColumnMap& m = maps_[j];
    if (std::isfinite(v.lower)) {
      m.offset = v.lower;
      m.col_a = num_structural_++;
      if (std::isfinite(v.upper)) upper_rows.emplace_back(m.col_a, v.upper - v.lower);
    } else if (std::isfinite(v.upper)) {
      m.offset = v.upper;
      m.col_a = num_structural_++;
      m.sign_a = -1.0;
    } else {
      m.col_a = num_structural_++;
      m.col_b = num_structural_++;
    }
  }

  structural_cost_.assign(num_structural_, 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const double c = sense * vars[j].objective;
    const ColumnMap& m = maps_[j];
    structural_cost_[m.col_a] += c * m.sign_a;
    if (m.col_b != kNone) structural_cost_[m.col_b] += c * m.sign_b;
  }

  for (const Constraint& con : prob_.constraints()) {
    InternalRow row{std::vector<double>(num_structural_, 0.0), con.relation, con.rhs};
    for (const Term& t : con.terms) {
      const ColumnMap& m = maps_[t.var];
      row.coef[m.col_a] += t.coef * m.sign_a;
      if (m.col_b != kNone) row.coef[m.col_b] += t.coef * m.sign_b;
      row.rhs -= t.coef * m.offset;
    }
    rows_.push_back(std::move(row));
  }
  for (const auto& [col, bound] : upper_rows) {
    InternalRow row{std::vector<double>(num_structural_, 0.0), Relation::LessEqual, bound};
    row.coef[col] = 1.0;
    rows_.push_back(std::move(row));
  }
  for (InternalRow& row : rows_) {
    if (row.rhs < 0.0) {
      for (double& a : row.coef) a = -a;
      row.rhs = -row.rhs;
      row.flip = -1.0;
      if (row.relation == Relation::LessEqual) {
        row.relation = Relation::GreaterEqual;
      } else if (row.relation == Relation::GreaterEqual) {
        row.relation = Relation::LessEqual;
      }
    }
  }

  // Columns: structural | slack or surplus per inequality row | artificials.
  const std::size_t m = rows_.size();
  std::size_t next = num_structural_;
  std::vector<std::size_t> logical(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows_[i].relation != Relation::Equal) logical[i] = next++;
  }
  first_artificial_ = next;
  std::vector<std::size_t> artificial(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows_[i].relation != Relation::LessEqual) artificial[i] = next++;
  }

  tab_ = Tableau(m, next);
  basis_.assign(m, kNone);
  unit_col_.assign(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < num_structural_; ++c) tab_.at(i, c) = rows_[i].coef[c];
    tab_.rhs(i) = rows_[i].rhs;
    if (rows_[i].relation == Relation::LessEqual) {
      tab_.at(i, logical[i]) = 1.0;
      unit_col_[i] = logical[i];
    } else {
      if (logical[i] != kNone) tab_.at(i, logical[i]) = -1.0;
      tab_.at(i, artificial[i]) = 1.0;
      unit_col_[i] = artificial[i];
    }
    basis_[i] = unit_col_[i];
  }

  max_iterations_ = opt_.max_iterations != 0 ? opt_.max_iterations : 50 * (m + next) + 1000;
}

PhaseResult SimplexEngine::iterate(bool allow_artificial) {
  const double tol = opt_.pivot_tolerance;
  for (;;) {
    // Bland: lowest-index improving column enters.
    std::size_t enter = kNone;
    for (std::size_t c = 0; c < tab_.cols(); ++c) {
      if (!allow_artificial && is_artificial(c)) continue;
      if (tab_.cost(c) > tol) {
        enter = c;
        break;
      }
    }
    if (enter == kNone) return PhaseResult::Optimal;

    // Ratio test; ties go to the lowest-index basic variable.
    std::size_t leave = kNone;
    double best = 0.0;
    for (std::size_t r = 0; r < tab_.rows(); ++r) {
      const double a = tab_.at(r, enter);
      if (a <= tol) continue;
      const double ratio = std::max(tab_.rhs(r), 0.0) / a;
      if (leave == kNone || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == kNone) return PhaseResult::Unbounded;

    if (++iterations_ > max_iterations_) {
      throw Error(ErrorKind::NumericalFailure, "simplex iteration limit reached");
    }
    tab_.pivot(leave, enter);
    basis_[leave] = enter;
  }
}

void SimplexEngine::drive_out_artificials() {
  for (std::size_t r = 0; r < tab_.rows(); ++r) {
    if (!is_artificial(basis_[r])) continue;
    for (std::size_t c = 0; c < first_artificial_; ++c) {
      if (std::abs(tab_.at(r, c)) > opt_.pivot_tolerance) {
        tab_.pivot(r, c);
        basis_[r] = c;
        break;
      }
    }
    // Otherwise the row is redundant and its artificial stays basic at zero.
  }
}

void SimplexEngine::load_phase_two_costs() {
  for (std::size_t c = 0; c <= tab_.cols(); ++c) tab_.cost(c) = 0.0;
  for (std::size_t c = 0; c < num_structural_; ++c) tab_.cost(c) = structural_cost_[c];
  for (std::size_t r = 0; r < tab_.rows(); ++r) {
    const std::size_t b = basis_[r];
    const double cb = b < num_structural_ ? structural_cost_[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= tab_.cols(); ++c) tab_.cost(c) -= cb * tab_.at(r, c);
  }
}

LpSolution SimplexEngine::run() {
  const std::size_t m = tab_.rows();
  if (first_artificial_ < tab_.cols()) {
    // Phase one: maximize minus the sum of artificials.
    for (std::size_t r = 0; r < m; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t c = 0; c <= tab_.cols(); ++c) {
        if (c == tab_.cols() || !is_artificial(c)) tab_.cost(c) += tab_.at(r, c);
      }
    }
    iterate(true);
    double scale = 1.0;
    for (const InternalRow& row : rows_) scale = std::max(scale, row.rhs);
    // The rhs cell holds the negated phase-one objective, i.e. the sum of
    // artificial values still in the basis.
    if (tab_.cost(tab_.cols()) > opt_.feasibility_tolerance * scale) {
      return extract(Status::Infeasible);
    }
    drive_out_artificials();
  }
  load_phase_two_costs();
  if (iterate(false) == PhaseResult::Unbounded) return extract(Status::Unbounded);
  return extract(Status::Optimal);
}

LpSolution SimplexEngine::extract(Status status) const {
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations_;
  if (status != Status::Optimal) return sol;

  const auto& vars = prob_.variables();
  const double sense = prob_.sense() == Sense::Maximize ? 1.0 : -1.0;
  const double snap = opt_.feasibility_tolerance;

  std::vector<double> col_value(tab_.cols(), 0.0);
  for (std::size_t r = 0; r < tab_.rows(); ++r) col_value[basis_[r]] = tab_.rhs(r);

  sol.primal.resize(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const ColumnMap& m = maps_[j];
    double x = m.offset + m.sign_a * col_value[m.col_a];
    if (m.col_b != kNone) x += m.sign_b * col_value[m.col_b];
    if (std::abs(x) < snap) x = 0.0;
    sol.primal[j] = x;
  }

  const auto& cons = prob_.constraints();
  sol.duals.resize(cons.size());
  for (std::size_t i = 0; i < cons.size(); ++i) {
    // Reduced cost of a unit column is -y_i in the internal max problem.
    double y = -tab_.cost(unit_col_[i]) * rows_[i].flip * sense;
    if (std::abs(y) < snap) y = 0.0;
    sol.duals[i] = y;
  }

  sol.reduced_costs.resize(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) sol.reduced_costs[j] = vars[j].objective;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    for (const Term& t : cons[i].terms) sol.reduced_costs[t.var] -= t.coef * sol.duals[i];
  }

  sol.objective = prob_.objective_value(sol.primal);

  double scale = 1.0;
  for (const InternalRow& row : rows_) scale = std::max(scale, row.rhs);
  const double violation = prob_.max_violation(sol.primal);
  if (violation > 1e-7 * scale) {
    std::ostringstream msg;
    msg << "simplex lost accuracy (near-singular basis): final point violates constraints by "
        << violation;
    throw Error(ErrorKind::NumericalFailure, msg.str());
  }
  return sol;
}

}  // namespace

LpSolution solve_lp(const LpProblem& prob, const SimplexOptions& options) {
  SimplexEngine engine(prob, options);
  return engine.run();
}

OptimalityReport check_optimality(const LpProblem& prob, const LpSolution& sol) {
  if (sol.status != Status::Optimal) {
    throw Error(ErrorKind::InvalidArgument, "optimality check needs an optimal solution");
  }
  OptimalityReport rep;
  const double sense = prob.sense() == Sense::Maximize ? 1.0 : -1.0;
  rep.primal_residual = prob.max_violation(sol.primal);

  const auto act = prob.activities(sol.primal);
  const auto& cons = prob.constraints();
  for (std::size_t i = 0; i < cons.size(); ++i) {
    // In max-sense terms a <= row needs y >= 0 and a >= row needs y <= 0.
    const double y = sense * sol.duals[i];
    if (cons[i].relation == Relation::LessEqual) {
      rep.dual_sign_residual = std::max(rep.dual_sign_residual, -y);
    } else if (cons[i].relation == Relation::GreaterEqual) {
      rep.dual_sign_residual = std::max(rep.dual_sign_residual, y);
    }
    if (cons[i].relation != Relation::Equal) {
      rep.complementarity =
          std::max(rep.complementarity, std::abs(sol.duals[i] * (cons[i].rhs - act[i])));
    }
  }

  const auto& vars = prob.variables();
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const double d = sense * sol.reduced_costs[j];
    const double x = sol.primal[j];
    if (d > 0.0) {
      if (std::isfinite(vars[j].upper)) {
        rep.complementarity = std::max(rep.complementarity, d * (vars[j].upper - x));
      } else {
        rep.reduced_cost_residual = std::max(rep.reduced_cost_residual, d);
      }
    } else if (d < 0.0) {
      if (std::isfinite(vars[j].lower)) {
        rep.complementarity = std::max(rep.complementarity, -d * (x - vars[j].lower));
      } else {
        rep.reduced_cost_residual = std::max(rep.reduced_cost_residual, -d);
      }
    }
  }
  return rep;
}

}  // namespace odds::lp
