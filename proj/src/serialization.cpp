#include "geode/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "geode/errors.hpp"

namespace geode::io {

namespace {

Json index_json(const MultiIndex& m) { return Json(std::vector<int>(m.exponents().begin(), m.exponents().end())); }

MultiIndex index_from(const Json& j) { return MultiIndex(j.get<std::vector<int>>()); }

Json values_json(const std::map<MultiIndex, BigInt>& values) {
  Json arr = Json::array();
  for (const auto& [m, v] : values) arr.push_back(Json{{"index", index_json(m)}, {"value", to_decimal(v)}});
  return arr;
}

Json variables_json(std::size_t num_vars, bool diagonal) {
  Json v = Json::array();
  if (diagonal) {
    v.push_back("n");
  } else {
    for (std::size_t i = 1; i <= num_vars; ++i) v.push_back("m" + std::to_string(i));
  }
  return v;
}

// Runs a parser, turning JSON access errors and invariant violations into
// IntegrityError so that corrupt files get one well-defined failure mode.
template <class Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const GeodeError&) {
    throw;
  } catch (const std::exception& e) {
    throw IntegrityError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const IndexPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exponents", e}, {"coeff", to_decimal(c)}});
  return terms;
}

IndexPolynomial poly_from_json(const Json& j, std::size_t num_vars) {
  return guarded("polynomial", [&] {
    IndexPolynomial p(num_vars);
    for (const auto& t : j) {
      auto e = t.at("exponents").get<std::vector<int>>();
      if (e.size() != num_vars) throw IntegrityError("polynomial: exponent vector has the wrong length");
      auto c = parse_decimal(t.at("coeff").get<std::string>());
      if (c == 0) throw IntegrityError("polynomial: zero coefficient stored");
      if (p.coeff(e) != 0) throw IntegrityError("polynomial: repeated exponent vector");
      p.add_term(e, c);
    }
    return p;
  });
}

Json to_json(const PureRecurrence& rec) {
  const bool diag = rec.direction().is_diagonal();
  Json j;
  j["kind"] = diag ? "diagonal" : "pure";
  j["variables"] = variables_json(rec.num_vars(), diag);
  if (diag) {
    j["direction"] = "diagonal";
    j["dimension"] = rec.dimension();
  } else {
    j["direction"] = rec.direction().axis_index() + 1;
  }
  j["order"] = rec.order();
  Json coeffs = Json::array();
  for (std::size_t s = 0; s < rec.order(); ++s) {
    coeffs.push_back(Json{{"shift", s + 1},
                          {"numerator", to_json(rec.coeffs()[s].numerator())},
                          {"denominator", to_json(rec.coeffs()[s].denominator())}});
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

PureRecurrence recurrence_from_json(const Json& j) {
  return guarded("recurrence", [&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "pure" && kind != "diagonal") throw IntegrityError("recurrence: unknown kind '" + kind + "'");
    const bool diag = kind == "diagonal";
    const std::size_t num_vars = j.at("variables").size();
    if (num_vars == 0) throw IntegrityError("recurrence: no variables");
    Direction dir = Direction::diagonal();
    std::size_t dimension = 0;
    if (diag) {
      if (j.at("direction") != "diagonal") throw IntegrityError("recurrence: diagonal kind needs direction \"diagonal\"");
      dimension = j.at("dimension").get<std::size_t>();
    } else {
      const int d = j.at("direction").get<int>();
      if (d < 1 || static_cast<std::size_t>(d) > num_vars) throw IntegrityError("recurrence: direction out of range");
      dir = Direction::axis(static_cast<std::size_t>(d - 1));
    }
    const auto order = j.at("order").get<std::size_t>();
    const auto& cs = j.at("coefficients");
    if (cs.size() != order) throw IntegrityError("recurrence: order does not match the coefficient list");
    std::vector<RationalCoeff> coeffs;
    for (std::size_t s = 0; s < order; ++s) {
      if (cs[s].at("shift").get<std::size_t>() != s + 1) throw IntegrityError("recurrence: shifts out of order");
      coeffs.emplace_back(poly_from_json(cs[s].at("numerator"), num_vars),
                          poly_from_json(cs[s].at("denominator"), num_vars));
    }
    return PureRecurrence(num_vars, dir, std::move(coeffs), dimension);
  });
}

Json to_json(const RecurrenceSystem& sys) {
  Json j;
  j["kind"] = "system";
  j["variables"] = variables_json(sys.k(), false);
  j["window_size"] = sys.window_size();
  j["initial_values"] = values_json(sys.initial_values());
  Json recs = Json::array();
  for (const auto& r : sys.recurrences()) recs.push_back(to_json(r));
  j["recurrences"] = std::move(recs);
  return j;
}

RecurrenceSystem system_from_json(const Json& j) {
  return guarded("system", [&] {
    if (j.at("kind") != "system") throw IntegrityError("system: kind must be \"system\"");
    const std::size_t k = j.at("variables").size();
    std::map<MultiIndex, BigInt> initial;
    for (const auto& v : j.at("initial_values")) {
      auto m = index_from(v.at("index"));
      if (!initial.emplace(m, parse_decimal(v.at("value").get<std::string>())).second) {
        throw IntegrityError("system: repeated initial value at " + m.to_string());
      }
    }
    std::vector<PureRecurrence> recs;
    for (const auto& r : j.at("recurrences")) recs.push_back(recurrence_from_json(r));
    return RecurrenceSystem(k, std::move(recs), j.at("window_size").get<int>(), std::move(initial));
  });
}

Json to_json(const DiagonalRecurrence& d) {
  Json j = to_json(d.recurrence);
  j["initial_values"] = Json::array({Json{{"index", {1}}, {"value", to_decimal(d.g1)}},
                                     Json{{"index", {2}}, {"value", to_decimal(d.g2)}}});
  return j;
}

DiagonalRecurrence diagonal_from_json(const Json& j) {
  return guarded("diagonal", [&] {
    auto rec = recurrence_from_json(j);
    if (!rec.direction().is_diagonal()) throw IntegrityError("diagonal: not a diagonal recurrence");
    const auto& iv = j.at("initial_values");
    if (iv.size() != 2 || iv[0].at("index") != Json::array({1}) || iv[1].at("index") != Json::array({2})) {
      throw IntegrityError("diagonal: initial values must be given for n = 1 and n = 2");
    }
    return DiagonalRecurrence{std::move(rec), parse_decimal(iv[0].at("value").get<std::string>()),
                              parse_decimal(iv[1].at("value").get<std::string>())};
  });
}

std::string content_digest(const Json& doc) {
  Json copy = doc;
  if (copy.is_object()) copy.erase("verification");
  const std::string text = copy.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void stamp(Json& doc, int window, bool passed) {
  doc["verification"] = Json{{"window", window},
                             {"status", passed ? "passed" : "failed"},
                             {"digest", content_digest(doc)}};
}

std::optional<int> valid_stamp(const Json& doc) {
  if (!doc.is_object() || !doc.contains("verification")) return std::nullopt;
  const auto& v = doc["verification"];
  if (!v.is_object() || v.value("status", "") != "passed" || !v.contains("window") || !v["window"].is_number_integer()) {
    return std::nullopt;
  }
  if (v.value("digest", "") != content_digest(doc)) return std::nullopt;
  return v["window"].get<int>();
}

Json to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"parameters", c.parameters},
                          {"passed", c.passed},
                          {"counterexample", c.counterexample ? index_json(*c.counterexample) : Json(nullptr)},
                          {"detail", c.detail}});
  }
  return Json{{"subject", rep.subject},
              {"passed", rep.passed()},
              {"window_too_small", rep.window_too_small},
              {"checks", std::move(checks)},
              {"notes", rep.notes}};
}

Json to_json(const AnsatzSpec& spec) {
  Json direction = spec.direction.is_diagonal() ? Json("diagonal") : Json(spec.direction.axis_index() + 1);
  return Json{{"k", spec.num_vars},
              {"direction", std::move(direction)},
              {"order", spec.order},
              {"degree", spec.degree},
              {"unknowns", spec.unknowns()}};
}

Json to_json(const GuessReport& rep) {
  Json cands = Json::array();
  for (const auto& c : rep.candidates) {
    Json zeros = Json::array();
    for (const auto& z : c.leading_zeros) zeros.push_back(index_json(z));
    cands.push_back(Json{{"degrees", {{"numerator", c.degrees.numerator}, {"denominator", c.degrees.denominator}}},
                         {"leading_zeros", std::move(zeros)},
                         {"recurrence", to_json(c.recurrence)}});
  }
  return Json{{"spec", to_json(rep.spec)},
              {"status", to_string(rep.status)},
              {"rows", {{"admissible", rep.rows_admissible},
                        {"training", rep.rows_used},
                        {"needed", rep.rows_needed},
                        {"holdout", rep.holdout_rows}}},
              {"table_needed", rep.table_needed ? Json(*rep.table_needed) : Json(nullptr)},
              {"nullity", rep.nullity},
              {"primes_used", rep.primes_used.size()},
              {"candidates_rejected", rep.candidates_rejected},
              {"validated", rep.validated},
              {"elapsed_ms", rep.elapsed_ms},
              {"message", rep.message},
              {"candidates", std::move(cands)}};
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& doc) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw FileError("cannot write " + tmp.string());
    out << dump(doc);
    if (!out) throw FileError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

RecurrenceSystem load_system(const std::filesystem::path& path) {
  Json doc = read_file(path);
  auto sys = system_from_json(doc);
  if (auto w = valid_stamp(doc)) sys.mark_verified(*w);
  return sys;
}

}  // namespace geode::io
