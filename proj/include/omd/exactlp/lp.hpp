#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "omd/core/rational.hpp"

namespace omd::lp {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };

struct Term {
  int var;
  Rational coef;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation;
  Rational rhs;
  std::string name;
};

struct Bounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// An exact linear program. Variables are free unless bounds are given.
class Problem {
 public:
  int add_variable(std::string name, Bounds bounds = {});
  void set_objective(Sense sense, std::vector<Term> terms);
  /// Throws PreconditionError if a term references an undeclared variable.
  void add_constraint(std::vector<Term> terms, Relation relation, Rational rhs,
                      std::string name = {});

  [[nodiscard]] int num_variables() const { return static_cast<int>(names_.size()); }
  [[nodiscard]] int num_constraints() const { return static_cast<int>(constraints_.size()); }
  [[nodiscard]] const std::string& name(int var) const { return names_.at(var); }
  [[nodiscard]] const Bounds& bounds(int var) const { return bounds_.at(var); }
  [[nodiscard]] Sense sense() const { return sense_; }
  [[nodiscard]] const std::vector<Term>& objective() const { return objective_; }
  [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
  /// -1 when no variable has this name.
  [[nodiscard]] int find_variable(const std::string& name) const;

  /// Objective value of an assignment.
  [[nodiscard]] Rational evaluate(const std::vector<Rational>& assignment) const;
  /// Exact check of every constraint and bound.
  [[nodiscard]] bool is_feasible(const std::vector<Rational>& assignment) const;

 private:
  void check_terms(const std::vector<Term>& terms) const;

  std::vector<std::string> names_;
  std::vector<Bounds> bounds_;
  Sense sense_ = Sense::maximize;
  std::vector<Term> objective_;
  std::vector<Constraint> constraints_;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rational value;
  std::vector<Rational> assignment;
};

const char* to_string(Status status);

/// Two-phase primal simplex over exact rationals. Dantzig pricing with a
/// smallest-index (Bland) fallback during long degenerate runs; deterministic
/// and cycle-free. An optimal assignment is re-checked against every
/// constraint before it is returned.
Solution solve(const Problem& problem);

/// True iff every variable takes the same value over the whole optimal face:
/// for each variable, its min and max subject to the original constraints
/// plus (objective == optimum) coincide. Solves 2 * num_variables() LPs.
bool unique_optimum(const Problem& problem, const Solution& solution);

/// Text dump, one line per objective/constraint/bound, exact rationals.
void dump(const Problem& problem, std::ostream& out);

}  // namespace omd::lp
