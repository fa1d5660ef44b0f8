#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "omd/budgeted/budgeted.hpp"
#include "omd/core/error.hpp"
#include "omd/exactlp/builders.hpp"
#include "omd/io/json_io.hpp"
#include "omd/lattice/flow.hpp"
#include "omd/mechanism/mechanism.hpp"
#include "omd/mechanism/sampling.hpp"
#include "omd/reduction/construction.hpp"

namespace omd::cli {

namespace {

using io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(const std::string& what, Json detail = nullptr)
      : std::runtime_error(what), detail(std::move(detail)) {}
  Json detail;
};

struct Options {
  std::string input;
  std::string mechanism_file;
  std::string kind;
  std::string kappa = "1";
  std::string type;
  std::string dump_lattice;
  std::string dump_lp;
  std::string json_out;
  std::uint64_t seed = 1;
  std::int64_t count = 10000;
  bool oracle = false;
  bool oracle_only = false;
  bool force = false;
  bool timing = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_document(const std::string& path, const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

Json verification_summary(const mechanism::VerificationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json row{{"kind", mechanism::to_string(v.kind)},
             {"type", io::subset_to_json(v.truth)},
             {"slack", io::rational_to_json(v.slack)}};
    if (v.kind == mechanism::ViolationKind::incentive) row["report"] = io::subset_to_json(v.report);
    if (v.item >= 0) row["item"] = v.item + 1;
    violations.push_back(row);
  }
  return Json{{"incentive_rows", report.incentive_checked},
              {"participation_rows", report.participation_checked},
              {"probability_rows", report.probability_checked},
              {"price_rows", report.price_checked},
              {"violations", violations}};
}

Rational solve_revenue_lp(const OmdInstance& inst, const Options& opt) {
  const lp::Problem problem = lp::build_revenue_lp(inst, lp::Guard{opt.force});
  if (!opt.dump_lp.empty()) {
    std::ofstream out(opt.dump_lp);
    if (!out) throw ParseError("cannot write " + opt.dump_lp);
    lp::dump(problem, out);
  }
  const lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::optimal) {
    throw VerificationFailure(std::string("revenue program is ") + lp::to_string(sol.status));
  }
  return sol.value;
}

Json cmd_solve(const Options& opt, const Json& doc) {
  const OmdInstance inst = io::instance_from_json(doc);
  Json report;
  if (opt.oracle_only) {
    report["revenue"] = io::rational_to_json(solve_revenue_lp(inst, opt));
    report["path"] = "oracle";
    return report;
  }

  const Rational kappa = parse_rational(opt.kappa);
  const Lp2Params params = to_lp2_params(inst, kappa);
  const lattice::FlowSolution flow = lattice::canonical_solution(params);
  if (!opt.dump_lattice.empty()) {
    std::ofstream out(opt.dump_lattice);
    if (!out) throw ParseError("cannot write " + opt.dump_lattice);
    lattice::dump_lattice(params, flow, out);
  }
  const mechanism::Mechanism mech = mechanism::closed_form_mechanism(params, flow);
  const auto check = mechanism::verify_bic_ir(inst, mech);
  const Rational revenue = mechanism::expected_revenue(inst, mech);

  report["path"] = "structured";
  report["kappa"] = io::rational_to_json(kappa);
  report["supply"] = io::rational_to_json(flow.supply);
  report["flow_cost"] = io::rational_to_json(flow.total_cost);
  if (flow.partially_filled) {
    report["partially_filled"] = io::subset_to_json(*flow.partially_filled);
  }
  report["exactly_saturated_boundary"] = flow.exactly_saturated_boundary;
  report["revenue"] = io::rational_to_json(revenue);
  report["mechanism"] = io::mechanism_to_json(mech);
  report["verification"] = verification_summary(check);
  if (!opt.json_out.empty()) write_file(opt.json_out, io::mechanism_to_json(mech).dump(2) + "\n");

  if (!check.ok()) throw VerificationFailure("closed-form mechanism violates constraints", report);
  if (opt.oracle) {
    const Rational optimum = solve_revenue_lp(inst, opt);
    report["oracle_revenue"] = io::rational_to_json(optimum);
    report["oracle_agrees"] = optimum == revenue;
    if (optimum != revenue) {
      throw VerificationFailure("oracle optimum " + format_rational(optimum) +
                                " differs from closed-form revenue " + format_rational(revenue));
    }
  }
  return report;
}

Json cmd_verify(const Options& opt, const Json& doc) {
  const OmdInstance inst = io::instance_from_json(doc);
  const mechanism::Mechanism mech =
      io::mechanism_from_json(parse_document(opt.mechanism_file, slurp(opt.mechanism_file)));
  const auto check = mechanism::verify_bic_ir(inst, mech);
  Json report{{"verification", verification_summary(check)},
              {"revenue", io::rational_to_json(mechanism::expected_revenue(inst, mech))}};
  if (!check.ok()) {
    throw VerificationFailure(std::to_string(check.violations.size()) + " violated constraints",
                              report);
  }
  return report;
}

Json cmd_reduce(const Options& opt, const Json& doc) {
  if (opt.kind == "lexrank") {
    const reduction::LexRankInstance in = io::lexrank_from_json(doc);
    const int n = static_cast<int>(in.values.size());
    if (in.set.size() < 1 || in.set.size() > n - 1) {
      throw UsageError("LexRank reduction needs 1 <= |S| <= n-1");
    }
    const auto out = reduction::lexrank_to_omd(in.values, in.set, in.k);
    const auto decision = reduction::decide(out);
    const std::int64_t rank = reduction::lexrank_oracle(in.values, in.set);
    Json report{{"instance", io::instance_to_json(out.instance)},
                {"p_tilde", io::rational_to_json(out.p_tilde)},
                {"T_star", io::subset_to_json(out.target_t_star)},
                {"probe_type", io::subset_to_json(out.probe_type)},
                {"probe", io::rational_to_json(decision.probe)},
                {"decision", decision.yes},
                {"oracle_rank", rank}};
    if (decision.yes != (rank <= in.k)) {
      throw VerificationFailure("reduction decision disagrees with the rank oracle", report);
    }
    return report;
  }
  if (opt.kind == "subsetsum") {
    const reduction::SubsetSumInstance in = io::subsetsum_from_json(doc);
    const std::int64_t direct = reduction::count_subsetsum_direct(in.weights, in.target);
    const std::int64_t staged = reduction::count_subsetsum_via_gadget(in.weights, in.target);
    Json report{{"count", staged}, {"count_direct", direct}};
    if (direct != staged) {
      throw VerificationFailure("gadget count disagrees with direct enumeration", report);
    }
    return report;
  }
  throw UsageError("reduce kind must be lexrank or subsetsum");
}

Json cmd_sample(const Options& opt, const Json& doc) {
  const OmdInstance inst = io::instance_from_json(doc);
  const Lp2Params params = to_lp2_params(inst, parse_rational(opt.kappa));
  const auto mech =
      mechanism::closed_form_mechanism(params, lattice::canonical_solution(params));
  if (!mechanism::verify_bic_ir(inst, mech).ok()) {
    throw VerificationFailure("mechanism fails verification; refusing to sample");
  }
  std::vector<int> indices;
  std::stringstream ss(opt.type);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    try {
      indices.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("--type expects comma-separated item indices");
    }
  }
  Subset type;
  try {
    type = Subset::from_indices(indices, inst.size());
  } catch (const std::exception& e) {
    throw UsageError(std::string("--type: ") + e.what());
  }
  if (opt.count < 1) throw UsageError("--count must be positive");

  std::mt19937_64 rng(opt.seed);
  std::vector<std::int64_t> hits(static_cast<std::size_t>(inst.size()), 0);
  for (std::int64_t t = 0; t < opt.count; ++t) {
    const auto draw = mechanism::sample_allocation(mech, type, rng);
    for (int i = 0; i < inst.size(); ++i) hits[i] += draw.allocated.contains(i) ? 1 : 0;
  }
  Json q = Json::array();
  for (const Rational& v : mech.q(type)) q.push_back(io::rational_to_json(v));
  return Json{{"type", io::subset_to_json(type)}, {"samples", opt.count}, {"seed", opt.seed},
              {"q", q},  {"item_counts", hits},
              {"price", io::rational_to_json(mech.tau(type))}};
}

Json cmd_budgeted(const Options& opt, const Json& doc) {
  const budgeted::BudgetedInstance inst = io::budgeted_from_json(doc);
  const auto mech = budgeted::optimal_budgeted_mechanism(inst);
  Json report{
      {"unbudgeted", {{"bundle", io::subset_to_json(mech.unbudgeted.allocation)},
                      {"price", io::rational_to_json(mech.unbudgeted.price)}}},
      {"budgeted", {{"bundle", io::subset_to_json(mech.budgeted.allocation)},
                    {"price", io::rational_to_json(mech.budgeted.price)}}},
      {"revenue", io::rational_to_json(mech.revenue)},
      {"violations", budgeted::count_violations(inst, mech)}};
  if (budgeted::count_violations(inst, mech) != 0) {
    throw VerificationFailure("budgeted menu violates its constraints");
  }
  if (opt.oracle) {
    const Rational optimum = budgeted::budgeted_oracle_lp(inst, opt.force);
    report["oracle_revenue"] = io::rational_to_json(optimum);
    if (optimum != mech.revenue) throw VerificationFailure("oracle optimum differs");
  }
  return report;
}

struct ExampleRow {
  std::string name;
  std::string expected;
  std::string got;
  bool pass;
};

OmdInstance half_half(long a1, long a2, long d1, long d2) {
  return OmdInstance::create({Rational(a1), Rational(a2)}, {Rational(d1), Rational(d2)},
                             {Rational(1, 2), Rational(1, 2)});
}

Json cmd_examples(std::ostream& out) {
  std::vector<ExampleRow> rows;
  auto oracle = [](const OmdInstance& inst) {
    return lp::solve(lp::build_revenue_lp(inst)).value;
  };

  const OmdInstance uniform = half_half(1, 1, 1, 1);
  const Rational hn = oracle(uniform);
  rows.push_back({"{1,2}x{1,2} optimum", "9/4", format_rational(hn), hn == Rational(9, 4)});

  const OmdInstance zero_low = half_half(0, 0, 1, 1);
  const Rational zl = oracle(zero_low);
  rows.push_back({"{0,1}x{0,1} optimum", "1", format_rational(zl), zl == 1});

  const OmdInstance lottery = half_half(1, 1, 1, 2);
  const Lp2Params params = to_lp2_params(lottery, Rational(1));
  const auto mech = mechanism::closed_form_mechanism(params, lattice::canonical_solution(params));
  const Subset both = Subset::full(2);
  const Subset first = Subset::singleton(0);
  const bool bundle = mech.q(both, 0) == 1 && mech.q(both, 1) == 1 && mech.tau(both) == 4;
  rows.push_back({"{1,2}x{1,3} bundle", "q=(1,1) @ 4",
                  "q=(" + format_rational(mech.q(both, 0)) + "," +
                      format_rational(mech.q(both, 1)) + ") @ " + format_rational(mech.tau(both)),
                  bundle});
  const bool lot = mech.q(first, 0) == 1 && mech.q(first, 1) == Rational(1, 2) &&
                   mech.tau(first) == Rational(5, 2);
  rows.push_back({"{1,2}x{1,3} lottery", "q=(1,1/2) @ 5/2",
                  "q=(" + format_rational(mech.q(first, 0)) + "," +
                      format_rational(mech.q(first, 1)) + ") @ " +
                      format_rational(mech.tau(first)),
                  lot});
  const Rational revenue = mechanism::expected_revenue(lottery, mech);
  const Rational lo = oracle(lottery);
  rows.push_back({"{1,2}x{1,3} revenue", "21/8 = optimum",
                  format_rational(revenue) + " vs " + format_rational(lo),
                  revenue == Rational(21, 8) && lo == revenue});

  bool all = true;
  Json table = Json::array();
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %-18s %-22s %s", r.name.c_str(), r.expected.c_str(),
                  r.got.c_str(), r.pass ? "PASS" : "FAIL");
    out << line << "\n";
    table.push_back(Json{{"name", r.name}, {"expected", r.expected}, {"got", r.got},
                         {"pass", r.pass}});
    all = all && r.pass;
  }
  if (!all) throw VerificationFailure("worked example mismatch");
  return Json{{"examples", table}};
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact optimal mechanisms for one additive bidder with two-point values", "omd"};
  app.require_subcommand(1);
  Options opt;

  auto* solve = app.add_subcommand("solve", "Closed-form optimal mechanism for an instance");
  solve->add_option("instance", opt.input, "Instance JSON")->required();
  solve->add_option("--kappa", opt.kappa, "Scale factor (default makes B - sum p x = 1)");
  solve->add_flag("--oracle", opt.oracle, "Cross-check revenue against the full LP");
  solve->add_flag("--oracle-only", opt.oracle_only, "Solve only the full LP");
  solve->add_option("--dump-lattice", opt.dump_lattice, "Write the lattice table here");
  solve->add_option("--dump-lp", opt.dump_lp, "Write the full revenue LP here");
  solve->add_option("--json-out", opt.json_out, "Write the mechanism JSON here");
  solve->add_flag("--force", opt.force, "Ignore enumeration guards");

  auto* verify = app.add_subcommand("verify", "Check a mechanism file against an instance");
  verify->add_option("instance", opt.input, "Instance JSON")->required();
  verify->add_option("mechanism", opt.mechanism_file, "Mechanism JSON")->required();

  auto* reduce = app.add_subcommand("reduce", "Run a counting reduction");
  reduce->add_option("kind", opt.kind, "lexrank or subsetsum")
      ->required()
      ->check(CLI::IsMember({"lexrank", "subsetsum"}));
  reduce->add_option("input", opt.input, "Reduction JSON")->required();

  auto* examples = app.add_subcommand("examples", "Run the worked two-item examples");

  auto* sample = app.add_subcommand("sample", "Draw allocations for one reported type");
  sample->add_option("instance", opt.input, "Instance JSON")->required();
  sample->add_option("--type", opt.type, "Comma-separated 1-based items valued high");
  sample->add_option("--count", opt.count, "Number of draws");
  sample->add_option("--seed", opt.seed, "Generator seed");
  sample->add_option("--kappa", opt.kappa, "Scale factor");

  auto* budget = app.add_subcommand("budgeted", "Optimal menu for a possibly budgeted bidder");
  budget->add_option("input", opt.input, "Budgeted instance JSON")->required();
  budget->add_flag("--oracle", opt.oracle, "Cross-check against the two-type LP");
  budget->add_flag("--force", opt.force, "Ignore the oracle guard");

  app.add_flag("--timing", opt.timing, "Add wall-clock time to the report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "omd: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  std::string command;
  for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
  report["command"] = command;
  try {
    Json result;
    if (*examples) {
      result = cmd_examples(out);
    } else {
      const std::string text = slurp(opt.input);
      report["input_digest"] = fnv1a_hex(text);
      const Json doc = parse_document(opt.input, text);
      if (*solve) result = cmd_solve(opt, doc);
      if (*verify) result = cmd_verify(opt, doc);
      if (*reduce) result = cmd_reduce(opt, doc);
      if (*sample) result = cmd_sample(opt, doc);
      if (*budget) result = cmd_budgeted(opt, doc);
    }
    report["result"] = result;
  } catch (const UsageError& e) {
    err << "omd: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "omd: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "omd: precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const VerificationFailure& e) {
    if (!e.detail.is_null()) {
      report["result"] = e.detail;
      out << report.dump(2) << "\n";
    }
    err << "omd: verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const InvariantError& e) {
    err << "omd: internal invariant: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    err << "omd: " << e.what() << "\n";
    return kUsage;
  }
  if (opt.timing) {
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  }
  if (!*examples) out << report.dump(2) << "\n";
  return kOk;
}

}  // namespace omd::cli
