#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "plurality/rational.hpp"

namespace plurality {

// maximize c.x  subject to  A x = b,  x >= 0.
//
// Rows of A are stored sparsely; the solver densifies them. Variables and
// constraints carry labels so callers can map solutions back to their model.
class StandardFormLP {
 public:
  struct Term {
    std::size_t variable;
    Rational coefficient;
  };
  struct Constraint {
    std::vector<Term> terms;
    Rational rhs;
    std::string name;
  };

  std::size_t add_variable(std::string name, Rational cost = 0);
  // Throws IndexError if a term names an unknown variable.
  std::size_t add_constraint(std::vector<Term> terms, Rational rhs, std::string name);

  std::size_t num_variables() const { return costs_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<Rational>& costs() const { return costs_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::string& variable_name(std::size_t j) const { return variable_names_[j]; }

  // Dense coefficient matrix, num_constraints() x num_variables().
  std::vector<std::vector<Rational>> dense_matrix() const;

 private:
  std::vector<Rational> costs_;
  std::vector<std::string> variable_names_;
  std::vector<Constraint> constraints_;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus status);

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  // Filled only when Optimal.
  std::vector<Rational> primal;
  // One multiplier per equality constraint: A^T dual >= c at optimality.
  std::vector<Rational> dual;
  Rational objective;
  std::size_t pivots = 0;
};

// Two-phase dense-tableau simplex over exact rationals with Bland's rule.
// Optimal results are checked with verify_certificate before returning;
// a failed check throws SolverInconsistency.
LPSolution solve(const StandardFormLP& lp);

// Primal feasibility, dual feasibility, complementary slackness and
// c.primal = b.dual, all exactly. False unless sol.status is Optimal.
bool verify_certificate(const StandardFormLP& lp, const LPSolution& sol);

// Human-readable dump: objective line, then one line per constraint with
// coefficients in exact a/b form.
void write_lp(std::ostream& out, const StandardFormLP& lp);

}  // namespace plurality
