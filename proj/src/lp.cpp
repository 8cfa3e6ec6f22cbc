#include "plurality/lp.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <ostream>

#include "plurality/errors.hpp"

namespace plurality {

std::size_t StandardFormLP::add_variable(std::string name, Rational cost) {
  costs_.push_back(std::move(cost));
  variable_names_.push_back(std::move(name));
  return costs_.size() - 1;
}

std::size_t StandardFormLP::add_constraint(std::vector<Term> terms, Rational rhs, std::string name) {
  for (const auto& t : terms)
    if (t.variable >= costs_.size()) throw IndexError("constraint '" + name + "' references an unknown variable");
  constraints_.push_back(Constraint{std::move(terms), std::move(rhs), std::move(name)});
  return constraints_.size() - 1;
}

std::vector<std::vector<Rational>> StandardFormLP::dense_matrix() const {
  std::vector<std::vector<Rational>> a(constraints_.size(), std::vector<Rational>(costs_.size(), Rational(0)));
  for (std::size_t r = 0; r < constraints_.size(); ++r)
    for (const auto& t : constraints_[r].terms) a[r][t.variable] += t.coefficient;
  return a;
}

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// C(m + r, r) capped at `cap`.
std::size_t pivot_budget(std::size_t m, std::size_t r, std::size_t cap) {
  long double value = 1;
  const std::size_t kk = std::min(m, r);
  for (std::size_t i = 1; i <= kk; ++i) {
    value = value * static_cast<long double>(m + r - kk + i) / static_cast<long double>(i);
    if (value >= static_cast<long double>(cap)) return cap;
  }
  return static_cast<std::size_t>(value) + 1;
}

class Tableau {
 public:
  explicit Tableau(const StandardFormLP& lp)
      : rows_(lp.num_constraints()),
        structural_(lp.num_variables()),
        cols_(structural_ + rows_),
        cells_(rows_, std::vector<Rational>(cols_ + 1, Rational(0))),
        reduced_(cols_ + 1, Rational(0)),
        basis_(rows_),
        flipped_(rows_, false),
        budget_(pivot_budget(structural_, rows_, 10'000'000)) {
    const auto a = lp.dense_matrix();
    for (std::size_t r = 0; r < rows_; ++r) {
      flipped_[r] = sgn(lp.constraints()[r].rhs) < 0;
      for (std::size_t j = 0; j < structural_; ++j) cells_[r][j] = flipped_[r] ? Rational(-a[r][j]) : a[r][j];
      cells_[r][structural_ + r] = 1;
      cells_[r][cols_] = flipped_[r] ? Rational(-lp.constraints()[r].rhs) : lp.constraints()[r].rhs;
      basis_[r] = structural_ + r;
    }
  }

  // Returns false if the auxiliary optimum is negative (infeasible).
  bool phase_one() {
    std::vector<Rational> aux(cols_, Rational(0));
    for (std::size_t j = structural_; j < cols_; ++j) aux[j] = -1;
    price(aux);
    iterate(cols_);
    if (sgn(reduced_[cols_]) < 0) return false;
    drive_out_artificials();
    return true;
  }

  // Returns false if unbounded.
  bool phase_two(const std::vector<Rational>& costs) {
    std::vector<Rational> full(cols_, Rational(0));
    std::copy(costs.begin(), costs.end(), full.begin());
    price(full);
    return iterate(structural_);
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(structural_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < structural_) x[basis_[r]] = cells_[r][cols_];
    return x;
  }

  // Reduced cost of artificial r is (c_B B^{-1})_r for the sign-adjusted
  // rows; undo the flip to get the multiplier of the original constraint.
  std::vector<Rational> dual() const {
    std::vector<Rational> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& v = reduced_[structural_ + r];
      y[r] = flipped_[r] ? Rational(-v) : v;
    }
    return y;
  }

  Rational objective() const { return reduced_[cols_]; }
  std::size_t pivots() const { return pivots_; }

 private:
  // reduced_[j] = c_B B^{-1} A_j - c_j; reduced_[cols_] = c_B B^{-1} b.
  void price(const std::vector<Rational>& cost) {
    for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] = j < cols_ ? Rational(-cost[j]) : Rational(0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(cells_[r][j]) != 0) reduced_[j] += cb * cells_[r][j];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false on an unbounded
  // ray.
  bool iterate(std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed; ++j)
        if (sgn(reduced_[j]) < 0) {
          entering = j;
          break;
        }
      if (!entering) return true;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rational& a = cells_[r][*entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = cells_[r][cols_] / a;
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) continue;
      for (std::size_t j = 0; j < structural_; ++j)
        if (sgn(cells_[r][j]) != 0) {
          pivot(r, j);
          break;
        }
      // Otherwise the row is redundant; the artificial stays basic at zero
      // and its row never admits a pivot.
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    if (++pivots_ > budget_) throw SolverInconsistency("simplex exceeded its pivot budget (cycling?)");
    auto& prow = cells_[row];
    const Rational inv = 1 / prow[col];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= cols_; ++j)
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nonzero.push_back(j);
      }
    auto eliminate = [&](std::vector<Rational>& target) {
      if (sgn(target[col]) == 0) return;
      const Rational factor = target[col];
      for (std::size_t j : nonzero) target[j] -= factor * prow[j];
    };
    for (std::size_t r = 0; r < rows_; ++r)
      if (r != row) eliminate(cells_[r]);
    eliminate(reduced_);
    basis_[row] = col;
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_;
  std::vector<std::vector<Rational>> cells_;
  std::vector<Rational> reduced_;
  std::vector<std::size_t> basis_;
  std::vector<bool> flipped_;
  std::size_t budget_;
  std::size_t pivots_ = 0;
};

}  // namespace

LPSolution solve(const StandardFormLP& lp) {
  if (lp.num_variables() == 0 || lp.num_constraints() == 0)
    throw InvalidProgram("linear program needs at least one variable and one constraint");
  Tableau tableau(lp);
  LPSolution sol;
  if (!tableau.phase_one()) {
    sol.status = LPStatus::Infeasible;
    sol.pivots = tableau.pivots();
    return sol;
  }
  if (!tableau.phase_two(lp.costs())) {
    sol.status = LPStatus::Unbounded;
    sol.pivots = tableau.pivots();
    return sol;
  }
  sol.status = LPStatus::Optimal;
  sol.primal = tableau.primal();
  sol.dual = tableau.dual();
  sol.objective = tableau.objective();
  sol.pivots = tableau.pivots();
  if (!verify_certificate(lp, sol)) throw SolverInconsistency("optimal basis failed its certificate check");
  return sol;
}

bool verify_certificate(const StandardFormLP& lp, const LPSolution& sol) {
  if (sol.status != LPStatus::Optimal) return false;
  if (sol.primal.size() != lp.num_variables() || sol.dual.size() != lp.num_constraints()) return false;
  for (const auto& x : sol.primal)
    if (sgn(x) < 0) return false;

  // A^T y, accumulated row by row.
  std::vector<Rational> aty(lp.num_variables(), Rational(0));
  Rational dual_objective = 0;
  for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
    const auto& con = lp.constraints()[r];
    Rational lhs = 0;
    for (const auto& t : con.terms) {
      lhs += t.coefficient * sol.primal[t.variable];
      aty[t.variable] += t.coefficient * sol.dual[r];
    }
    if (lhs != con.rhs) return false;
    dual_objective += con.rhs * sol.dual[r];
  }

  Rational primal_objective = 0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const Rational slack = aty[j] - lp.costs()[j];
    if (sgn(slack) < 0) return false;
    if (sgn(slack) != 0 && sgn(sol.primal[j]) != 0) return false;
    primal_objective += lp.costs()[j] * sol.primal[j];
  }
  return primal_objective == dual_objective && primal_objective == sol.objective;
}

void write_lp(std::ostream& out, const StandardFormLP& lp) {
  auto write_terms = [&](const std::vector<StandardFormLP::Term>& terms) {
    if (terms.empty()) out << "0";
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (t) out << " + ";
      out << to_string(terms[t].coefficient) << " " << lp.variable_name(terms[t].variable);
    }
  };
  std::vector<StandardFormLP::Term> objective;
  for (std::size_t j = 0; j < lp.num_variables(); ++j)
    if (sgn(lp.costs()[j]) != 0) objective.push_back({j, lp.costs()[j]});
  out << "maximize: ";
  write_terms(objective);
  out << "\n";
  for (const auto& con : lp.constraints()) {
    out << con.name << ": ";
    write_terms(con.terms);
    out << " = " << to_string(con.rhs) << "\n";
  }
  out << "bounds: all variables >= 0\n";
}

}  // namespace plurality
