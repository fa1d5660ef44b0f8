#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "omd/core/error.hpp"
#include "omd/exactlp/lp.hpp"

namespace omd::lp {

namespace {

// x_original = offset + sum (sign * y_col) over its standard-form columns.
struct ColumnMap {
  Rational offset;
  std::vector<std::pair<int, int>> parts;  // (standard column, +1/-1)
};

struct StandardRow {
  std::vector<Rational> coef;  // dense over standard columns
  Relation relation;
  Rational rhs;  // >= 0 after normalization
};

// Compact (Tucker) tableau: row i reads  basic_i + sum_j t[i][j] * nonbasic_j = t[i][rhs].
// The objective row reads  z + sum_j obj[j] * nonbasic_j = obj[rhs], so a
// negative obj[j] marks an improving column.
class Tableau {
 public:
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> obj;
  std::vector<int> basic;     // variable id per row
  std::vector<int> nonbasic;  // variable id per column
  std::vector<bool> eligible;  // per variable id: may enter the basis

  [[nodiscard]] std::size_t cols() const { return nonbasic.size(); }
  [[nodiscard]] std::size_t rhs() const { return nonbasic.size(); }

  void pivot(std::size_t r, std::size_t e) {
    std::vector<Rational>& prow = rows[r];
    const Rational p = prow[e];
    nz_.clear();
    for (std::size_t j = 0; j <= cols(); ++j) {
      if (j != e && sgn(prow[j]) != 0) nz_.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[e]) == 0) return;
      mpq_div(factor_.get_mpq_t(), row[e].get_mpq_t(), p.get_mpq_t());
      for (std::size_t j : nz_) {
        mpq_mul(tmp_.get_mpq_t(), factor_.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp_.get_mpq_t());
      }
      mpq_neg(row[e].get_mpq_t(), factor_.get_mpq_t());
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r) eliminate(rows[i]);
    }
    eliminate(obj);
    for (std::size_t j : nz_) mpq_div(prow[j].get_mpq_t(), prow[j].get_mpq_t(), p.get_mpq_t());
    mpq_inv(prow[e].get_mpq_t(), p.get_mpq_t());
    std::swap(basic[r], nonbasic[e]);
  }

  // Most negative reduced cost (ties to the smallest variable id), or the
  // smallest-index rule when `bland` is set.
  [[nodiscard]] std::ptrdiff_t entering(bool bland) const {
    std::ptrdiff_t best = -1;
    for (std::size_t j = 0; j < cols(); ++j) {
      if (!eligible[nonbasic[j]] || sgn(obj[j]) >= 0) continue;
      if (best < 0) {
        best = static_cast<std::ptrdiff_t>(j);
        continue;
      }
      const int c = bland ? 0 : cmp(obj[j], obj[best]);
      if (c < 0 || (c == 0 && nonbasic[j] < nonbasic[best])) best = static_cast<std::ptrdiff_t>(j);
    }
    return best;
  }

  [[nodiscard]] std::ptrdiff_t leaving(std::size_t e) const {
    std::ptrdiff_t best = -1;
    Rational best_ratio;
    Rational ratio;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (sgn(rows[i][e]) <= 0) continue;
      ratio = rows[i][rhs()] / rows[i][e];
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basic[i] < basic[best])) {
        best = static_cast<std::ptrdiff_t>(i);
        best_ratio = ratio;
      }
    }
    return best;
  }

  // Runs to optimality of the current objective row. False if unbounded.
  //
  // Dantzig pricing, falling back to the smallest-index rule once a run of
  // degenerate pivots exceeds rows + cols. The fallback stays on until the
  // next nondegenerate pivot, so every degenerate run is finite and the
  // objective strictly increases between runs: no basis repeats.
  bool optimize() {
    const std::size_t stall_limit = rows.size() + cols();
    std::size_t degenerate_run = 0;
    for (;;) {
      const bool bland = degenerate_run > stall_limit;
      const std::ptrdiff_t e = entering(bland);
      if (e < 0) return true;
      const std::ptrdiff_t r = leaving(static_cast<std::size_t>(e));
      if (r < 0) return false;
      if (sgn(rows[static_cast<std::size_t>(r)][rhs()]) == 0) {
        ++degenerate_run;
      } else {
        degenerate_run = 0;
      }
      pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(e));
    }
  }

  // obj[j] = -(c_j - sum_i c_basic(i) t[i][j]),  obj[rhs] = sum_i c_basic(i) t[i][rhs].
  void load_objective(const std::vector<Rational>& cost) {
    obj.assign(cols() + 1, Rational(0));
    for (std::size_t j = 0; j < cols(); ++j) obj[j] = -cost[nonbasic[j]];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basic[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols(); ++j) {
        if (sgn(rows[i][j]) != 0) obj[j] += cb * rows[i][j];
      }
    }
  }

  void drop_column(std::size_t j) {
    for (auto& row : rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
    obj.erase(obj.begin() + static_cast<std::ptrdiff_t>(j));
    nonbasic.erase(nonbasic.begin() + static_cast<std::ptrdiff_t>(j));
  }

  void drop_row(std::size_t i) {
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
    basic.erase(basic.begin() + static_cast<std::ptrdiff_t>(i));
  }

 private:
  std::vector<std::size_t> nz_;
  Rational factor_;
  Rational tmp_;
};

Relation flip(Relation r) {
  switch (r) {
    case Relation::less_equal:
      return Relation::greater_equal;
    case Relation::greater_equal:
      return Relation::less_equal;
    case Relation::equal:
      return Relation::equal;
  }
  return r;
}

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal:
      return "optimal";
    case Status::infeasible:
      return "infeasible";
    case Status::unbounded:
      return "unbounded";
  }
  return "?";
}

Solution solve(const Problem& problem) {
  const int nvars = problem.num_variables();

  // Map every original variable onto nonnegative standard columns.
  std::vector<ColumnMap> maps(static_cast<std::size_t>(nvars));
  std::vector<StandardRow> srows;
  int ncols = 0;
  std::vector<std::pair<int, Rational>> upper_rows;  // column, width
  for (int v = 0; v < nvars; ++v) {
    const Bounds& b = problem.bounds(v);
    ColumnMap& m = maps[static_cast<std::size_t>(v)];
    if (b.lower) {
      m.offset = *b.lower;
      m.parts.emplace_back(ncols, 1);
      if (b.upper) upper_rows.emplace_back(ncols, *b.upper - *b.lower);
      ++ncols;
    } else if (b.upper) {
      m.offset = *b.upper;
      m.parts.emplace_back(ncols++, -1);
    } else {
      m.parts.emplace_back(ncols++, 1);
      m.parts.emplace_back(ncols++, -1);
    }
  }

  auto add_row = [&](std::vector<Rational> coef, Relation rel, Rational rhs) {
    if (sgn(rhs) < 0 || (sgn(rhs) == 0 && rel == Relation::greater_equal)) {
      for (auto& c : coef) c = -c;
      rhs = -rhs;
      rel = flip(rel);
    }
    srows.push_back(StandardRow{std::move(coef), rel, std::move(rhs)});
  };

  for (const Constraint& c : problem.constraints()) {
    std::vector<Rational> coef(static_cast<std::size_t>(ncols));
    Rational rhs = c.rhs;
    for (const Term& t : c.terms) {
      const ColumnMap& m = maps[static_cast<std::size_t>(t.var)];
      rhs -= t.coef * m.offset;
      for (auto [col, sign] : m.parts) {
        if (sign > 0) {
          coef[static_cast<std::size_t>(col)] += t.coef;
        } else {
          coef[static_cast<std::size_t>(col)] -= t.coef;
        }
      }
    }
    add_row(std::move(coef), c.relation, std::move(rhs));
  }
  for (auto& [col, width] : upper_rows) {
    std::vector<Rational> coef(static_cast<std::size_t>(ncols));
    coef[static_cast<std::size_t>(col)] = 1;
    add_row(std::move(coef), Relation::less_equal, width);
  }

  // Objective in maximization form over standard columns.
  const bool minimize = problem.sense() == Sense::minimize;
  Rational objective_offset(0);
  std::vector<Rational> structural_cost(static_cast<std::size_t>(ncols));
  for (const Term& t : problem.objective()) {
    const ColumnMap& m = maps[static_cast<std::size_t>(t.var)];
    const Rational c = minimize ? Rational(-t.coef) : t.coef;
    objective_offset += c * m.offset;
    for (auto [col, sign] : m.parts) {
      if (sign > 0) {
        structural_cost[static_cast<std::size_t>(col)] += c;
      } else {
        structural_cost[static_cast<std::size_t>(col)] -= c;
      }
    }
  }

  // Variable ids: [0, ncols) structural, then one slack/surplus per
  // inequality row, then one artificial per >= or = row.
  const std::size_t m = srows.size();
  int next_id = ncols;
  std::vector<int> slack_id(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (srows[i].relation != Relation::equal) slack_id[i] = next_id++;
  }
  const int first_artificial = next_id;
  std::vector<int> artificial_id(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (srows[i].relation != Relation::less_equal) artificial_id[i] = next_id++;
  }
  const int total_ids = next_id;

  Tableau tab;
  for (int c = 0; c < ncols; ++c) tab.nonbasic.push_back(c);
  std::vector<std::size_t> surplus_col(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (srows[i].relation == Relation::greater_equal) {
      surplus_col[i] = tab.nonbasic.size();
      tab.nonbasic.push_back(slack_id[i]);
    }
  }
  const std::size_t width = tab.nonbasic.size() + 1;
  tab.rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> row(width);
    for (int c = 0; c < ncols; ++c) row[static_cast<std::size_t>(c)] = std::move(srows[i].coef[c]);
    row[width - 1] = srows[i].rhs;
    if (srows[i].relation == Relation::greater_equal) {
      row[surplus_col[i]] = -1;
      tab.basic.push_back(artificial_id[i]);
    } else if (srows[i].relation == Relation::equal) {
      tab.basic.push_back(artificial_id[i]);
    } else {
      tab.basic.push_back(slack_id[i]);
    }
    tab.rows.push_back(std::move(row));
  }
  tab.eligible.assign(static_cast<std::size_t>(total_ids), true);
  for (int id = first_artificial; id < total_ids; ++id) tab.eligible[id] = false;

  Solution result;

  // Phase 1: maximize minus the sum of artificials.
  if (first_artificial < total_ids) {
    std::vector<Rational> cost(static_cast<std::size_t>(total_ids));
    for (int id = first_artificial; id < total_ids; ++id) cost[id] = -1;
    tab.load_objective(cost);
    tab.optimize();  // bounded below by zero, never unbounded
    if (sgn(tab.obj[tab.rhs()]) < 0) {
      result.status = Status::infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = tab.rows.size(); i-- > 0;) {
      if (tab.basic[i] < first_artificial) continue;
      std::ptrdiff_t col = -1;
      for (std::size_t j = 0; j < tab.cols(); ++j) {
        if (tab.nonbasic[j] < first_artificial && sgn(tab.rows[i][j]) != 0) {
          col = static_cast<std::ptrdiff_t>(j);
          break;
        }
      }
      if (col < 0) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, static_cast<std::size_t>(col));
      }
    }
    for (std::size_t j = tab.cols(); j-- > 0;) {
      if (tab.nonbasic[j] >= first_artificial) tab.drop_column(j);
    }
  }

  // Phase 2.
  std::vector<Rational> cost(static_cast<std::size_t>(total_ids));
  for (int c = 0; c < ncols; ++c) cost[c] = structural_cost[static_cast<std::size_t>(c)];
  tab.load_objective(cost);
  if (!tab.optimize()) {
    result.status = Status::unbounded;
    return result;
  }

  std::vector<Rational> y(static_cast<std::size_t>(ncols));
  for (std::size_t i = 0; i < tab.rows.size(); ++i) {
    if (tab.basic[i] < ncols) y[static_cast<std::size_t>(tab.basic[i])] = tab.rows[i][tab.rhs()];
  }
  result.assignment.resize(static_cast<std::size_t>(nvars));
  for (int v = 0; v < nvars; ++v) {
    const ColumnMap& cm = maps[static_cast<std::size_t>(v)];
    Rational x = cm.offset;
    for (auto [col, sign] : cm.parts) {
      if (sign > 0) {
        x += y[static_cast<std::size_t>(col)];
      } else {
        x -= y[static_cast<std::size_t>(col)];
      }
    }
    result.assignment[static_cast<std::size_t>(v)] = std::move(x);
  }
  result.value = problem.evaluate(result.assignment);
  result.status = Status::optimal;

  Rational tableau_value = tab.obj[tab.rhs()] + objective_offset;
  if (minimize) tableau_value = -tableau_value;
  if (tableau_value != result.value || !problem.is_feasible(result.assignment)) {
    throw InvariantError("simplex returned an assignment that fails the exact post-check");
  }
  return result;
}

}  // namespace omd::lp
