#include "omd/io/json_io.hpp"

#include <fstream>

#include "omd/core/error.hpp"

namespace omd::io {

namespace {

const Json& field_of(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

std::int64_t integer_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError("field \"" + field + "\" must be an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> integers_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field \"" + field + "\" must be an array");
  std::vector<std::int64_t> out;
  for (const Json& e : j) out.push_back(integer_from_json(e, field));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j, const std::string& field,
                                          std::size_t expected) {
  if (!j.is_array()) throw ParseError("field \"" + field + "\" must be an array");
  if (j.size() != expected) {
    throw ParseError("field \"" + field + "\" has " + std::to_string(j.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  std::vector<Rational> out;
  out.reserve(expected);
  for (const Json& e : j) out.push_back(rational_from_json(e, field));
  return out;
}

int item_count(const Json& j) {
  const std::int64_t n = integer_from_json(field_of(j, "n"), "n");
  if (n < 1 || n > Subset::kMaxItems) throw ParseError("field \"n\" out of range");
  return static_cast<int>(n);
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("field \"" + field + "\": " + e.what());
  }
  throw ParseError("field \"" + field + "\" must be a rational string");
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Subset subset_from_json(const Json& j, int ground_size, const std::string& field) {
  if (!j.is_array()) throw ParseError("field \"" + field + "\" must be an index list");
  std::vector<int> indices;
  for (const Json& e : j) indices.push_back(static_cast<int>(integer_from_json(e, field)));
  try {
    return Subset::from_indices(indices, ground_size);
  } catch (const std::exception& e) {
    throw ParseError("field \"" + field + "\": " + e.what());
  }
}

Json subset_to_json(Subset s) { return s.indices(); }

OmdInstance instance_from_json(const Json& j) {
  const int n = item_count(j);
  const auto size = static_cast<std::size_t>(n);
  return OmdInstance::create(rationals_from_json(field_of(j, "a"), "a", size),
                             rationals_from_json(field_of(j, "d"), "d", size),
                             rationals_from_json(field_of(j, "p"), "p", size));
}

Json instance_to_json(const OmdInstance& inst) {
  Json a = Json::array(), d = Json::array(), p = Json::array();
  for (int i = 0; i < inst.size(); ++i) {
    a.push_back(rational_to_json(inst.low[i]));
    d.push_back(rational_to_json(inst.increment[i]));
    p.push_back(rational_to_json(inst.prob[i]));
  }
  return Json{{"n", inst.size()}, {"a", a}, {"d", d}, {"p", p}};
}

Json mechanism_to_json(const mechanism::Mechanism& mech) {
  Json menu = Json::array();
  for (Subset::Mask m = 0; m < subset_count(mech.n); ++m) {
    const Subset s(m);
    Json q = Json::array();
    for (const Rational& v : mech.q(s)) q.push_back(rational_to_json(v));
    menu.push_back(Json{{"type", subset_to_json(s)},
                        {"u", rational_to_json(mech.u(s))},
                        {"q", q},
                        {"price", rational_to_json(mech.tau(s))}});
  }
  return Json{{"n", mech.n}, {"unique", mech.unique}, {"menu", menu}};
}

mechanism::Mechanism mechanism_from_json(const Json& j) {
  const int n = item_count(j);
  if (n > mechanism::kMaxVerifyItems) throw ParseError("field \"n\" too large for a menu");
  const Json& menu = field_of(j, "menu");
  const std::size_t types = subset_count(n);
  if (!menu.is_array() || menu.size() != types) {
    throw ParseError("field \"menu\" must list all " + std::to_string(types) + " types");
  }
  mechanism::Mechanism mech;
  mech.n = n;
  mech.utility.resize(types);
  mech.price.resize(types);
  mech.allocation.resize(types * static_cast<std::size_t>(n));
  std::vector<bool> seen(types, false);
  for (const Json& entry : menu) {
    const Subset s = subset_from_json(field_of(entry, "type"), n, "type");
    if (seen[s.mask()]) throw ParseError("type " + s.to_string() + " listed twice");
    seen[s.mask()] = true;
    mech.utility[s.mask()] = rational_from_json(field_of(entry, "u"), "u");
    mech.price[s.mask()] = rational_from_json(field_of(entry, "price"), "price");
    const auto q = rationals_from_json(field_of(entry, "q"), "q", static_cast<std::size_t>(n));
    std::copy(q.begin(), q.end(),
              mech.allocation.begin() + static_cast<std::ptrdiff_t>(s.mask() * n));
  }
  if (auto it = j.find("unique"); it != j.end() && it->is_boolean()) mech.unique = *it;
  return mech;
}

reduction::LexRankInstance lexrank_from_json(const Json& j) {
  reduction::LexRankInstance inst;
  inst.values = integers_from_json(field_of(j, "C"), "C");
  if (inst.values.empty() || inst.values.size() > static_cast<std::size_t>(Subset::kMaxItems)) {
    throw ParseError("field \"C\" has an unsupported length");
  }
  inst.set = subset_from_json(field_of(j, "S"), static_cast<int>(inst.values.size()), "S");
  inst.k = integer_from_json(field_of(j, "k"), "k");
  return inst;
}

reduction::SubsetSumInstance subsetsum_from_json(const Json& j) {
  return reduction::SubsetSumInstance{integers_from_json(field_of(j, "W"), "W"),
                                      integer_from_json(field_of(j, "T"), "T")};
}

budgeted::BudgetedInstance budgeted_from_json(const Json& j) {
  return budgeted::BudgetedInstance::create(integers_from_json(field_of(j, "x"), "x"),
                                            integer_from_json(field_of(j, "budget"), "budget"),
                                            rational_from_json(field_of(j, "eps"), "eps"));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace omd::io
