#include "omd/exactlp/lp.hpp"

#include <ostream>
#include <string>

#include "omd/core/error.hpp"

namespace omd::lp {

int Problem::add_variable(std::string name, Bounds bounds) {
  names_.push_back(std::move(name));
  bounds_.push_back(std::move(bounds));
  return static_cast<int>(names_.size()) - 1;
}

void Problem::check_terms(const std::vector<Term>& terms) const {
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw PreconditionError("term references undeclared variable #" + std::to_string(t.var));
    }
  }
}

void Problem::set_objective(Sense sense, std::vector<Term> terms) {
  check_terms(terms);
  sense_ = sense;
  objective_ = std::move(terms);
}

void Problem::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs,
                             std::string name) {
  check_terms(terms);
  constraints_.push_back(Constraint{std::move(terms), relation, std::move(rhs), std::move(name)});
}

int Problem::find_variable(const std::string& name) const {
  for (int v = 0; v < num_variables(); ++v) {
    if (names_[static_cast<std::size_t>(v)] == name) return v;
  }
  return -1;
}

namespace {

Rational dot(const std::vector<Term>& terms, const std::vector<Rational>& x) {
  Rational s(0);
  for (const Term& t : terms) s += t.coef * x[static_cast<std::size_t>(t.var)];
  return s;
}

}  // namespace

Rational Problem::evaluate(const std::vector<Rational>& assignment) const {
  return dot(objective_, assignment);
}

bool Problem::is_feasible(const std::vector<Rational>& assignment) const {
  if (static_cast<int>(assignment.size()) != num_variables()) return false;
  for (int v = 0; v < num_variables(); ++v) {
    const Bounds& b = bounds_[static_cast<std::size_t>(v)];
    const Rational& x = assignment[static_cast<std::size_t>(v)];
    if (b.lower && x < *b.lower) return false;
    if (b.upper && x > *b.upper) return false;
  }
  for (const Constraint& c : constraints_) {
    const Rational lhs = dot(c.terms, assignment);
    switch (c.relation) {
      case Relation::less_equal:
        if (lhs > c.rhs) return false;
        break;
      case Relation::greater_equal:
        if (lhs < c.rhs) return false;
        break;
      case Relation::equal:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

bool unique_optimum(const Problem& problem, const Solution& solution) {
  if (solution.status != Status::optimal) {
    throw PreconditionError("uniqueness probe needs an optimal solution");
  }
  Problem face = problem;
  face.add_constraint(problem.objective(), Relation::equal, solution.value, "optimal_face");
  for (int v = 0; v < problem.num_variables(); ++v) {
    Rational extremes[2];
    int k = 0;
    for (Sense sense : {Sense::minimize, Sense::maximize}) {
      face.set_objective(sense, {Term{v, Rational(1)}});
      const Solution probe = solve(face);
      if (probe.status != Status::optimal) return false;
      extremes[k++] = probe.value;
    }
    if (extremes[0] != extremes[1]) return false;
  }
  return true;
}

namespace {

void write_terms(const Problem& p, const std::vector<Term>& terms, std::ostream& out) {
  if (terms.empty()) out << "0";
  bool first = true;
  for (const Term& t : terms) {
    out << (first ? "" : " + ") << format_rational(t.coef) << " " << p.name(t.var);
    first = false;
  }
}

const char* symbol(Relation r) {
  switch (r) {
    case Relation::less_equal:
      return "<=";
    case Relation::greater_equal:
      return ">=";
    case Relation::equal:
      return "=";
  }
  return "?";
}

}  // namespace

void dump(const Problem& problem, std::ostream& out) {
  out << (problem.sense() == Sense::maximize ? "max: " : "min: ");
  write_terms(problem, problem.objective(), out);
  out << "\n";
  for (const Constraint& c : problem.constraints()) {
    out << (c.name.empty() ? "row" : c.name) << ": ";
    write_terms(problem, c.terms, out);
    out << " " << symbol(c.relation) << " " << format_rational(c.rhs) << "\n";
  }
  for (int v = 0; v < problem.num_variables(); ++v) {
    const Bounds& b = problem.bounds(v);
    out << "bound: " << (b.lower ? format_rational(*b.lower) : "-inf") << " <= "
        << problem.name(v) << " <= " << (b.upper ? format_rational(*b.upper) : "+inf") << "\n";
  }
}

}  // namespace omd::lp
