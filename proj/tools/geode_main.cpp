// geode: command-line front end for hyper-Catalan and Geode numbers.
//
// Exit codes: 0 success or found, 1 checked and negative, 2 usage or
// missing file, 3 integrity failure, 4 resource cap.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geode/bigint.hpp"
#include "geode/closed_form_2d.hpp"
#include "geode/errors.hpp"
#include "geode/geode_core.hpp"
#include "geode/guesser.hpp"
#include "geode/recurrence.hpp"
#include "geode/serialization.hpp"
#include "geode/verifier.hpp"

namespace fs = std::filesystem;
using geode::io::Json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kIntegrity = 3, kResource = 4 };

struct UsageError : geode::GeodeError {
  using GeodeError::GeodeError;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

fs::path data_dir() {
  if (const char* env = std::getenv("GEODE_DATA_DIR")) return env;
  return GEODE_DEFAULT_DATA_DIR;
}

fs::path default_system_file() { return data_dir() / "geode3_system.json"; }
fs::path default_diagonal_file() { return data_dir() / "geode3_diagonal.json"; }

void emit(const std::string& command, Json inputs, Json result, std::optional<std::size_t> digits,
          double wall_ms) {
  Json env{{"command", command},
           {"inputs", std::move(inputs)},
           {"result", std::move(result)},
           {"digits", digits ? Json(*digits) : Json(nullptr)},
           {"wall_ms", wall_ms}};
  std::cout << geode::io::dump(env) << std::flush;
}

std::size_t digits_of(const geode::BigInt& v) { return v == 0 ? 1 : geode::digit_count(v); }

geode::MultiIndex parse_index(const std::vector<long>& m) {
  if (m.empty()) throw UsageError("expected at least one index");
  std::vector<int> e;
  for (long v : m) {
    if (v < 0 || v > 1'000'000) throw UsageError("indices must be integers in [0, 1000000]");
    e.push_back(static_cast<int>(v));
  }
  return geode::MultiIndex(std::move(e));
}

// ---- hc / geode ----------------------------------------------------------

int cmd_hc(const std::vector<long>& raw) {
  const auto t0 = Clock::now();
  auto m = parse_index(raw);
  auto v = geode::hyper_catalan(m);
  emit("hc", Json{{"m", raw}}, geode::to_decimal(v), digits_of(v), ms_since(t0));
  return kOk;
}

struct LoadedDiagonal {
  geode::io::DiagonalRecurrence rec;
  bool verified = false;
};

std::optional<geode::RecurrenceSystem> try_system(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  return geode::io::load_system(path);
}

LoadedDiagonal load_diagonal(const fs::path& path) {
  Json doc = geode::io::read_file(path);
  return {geode::io::diagonal_from_json(doc), geode::io::valid_stamp(doc).has_value()};
}

int cmd_geode(const std::vector<long>& raw, std::string method, const std::string& system_arg,
              const std::string& diagonal_arg) {
  const auto t0 = Clock::now();
  auto m = parse_index(raw);
  const std::size_t k = m.size();
  const fs::path sys_path = system_arg.empty() ? default_system_file() : fs::path(system_arg);
  const fs::path diag_path = diagonal_arg.empty() ? default_diagonal_file() : fs::path(diagonal_arg);
  const bool is_diagonal_point = k == 3 && m[0] == m[1] && m[1] == m[2] && m[0] >= 1;

  if (method == "auto") {
    if (k == 2) {
      method = "closed2";
    } else if (k == 3 && m.total() > 12) {
      // Small points are cheaper through the oracle than through file loading.
      if (is_diagonal_point && fs::exists(diag_path) && load_diagonal(diag_path).verified) {
        method = "diag";
      } else if (auto sys = try_system(sys_path); sys && sys->verified()) {
        method = "rec3";
      } else {
        method = "oracle";
      }
    } else {
      method = "oracle";
    }
  }

  geode::BigInt value;
  Json extra = Json::object();
  if (method == "oracle") {
    value = geode::geode_number_oracle(m);
  } else if (method == "closed2") {
    if (k != 2) throw UsageError("--method closed2 needs two indices");
    value = geode::g2_closed(geode::Pair(m[0], m[1]));
  } else if (method == "rec3") {
    if (k != 3) throw UsageError("--method rec3 needs three indices");
    if (!fs::exists(sys_path)) throw geode::FileError("recurrence system not found: " + sys_path.string());
    auto sys = geode::io::load_system(sys_path);
    geode::EvalReport rep;
    value = geode::eval_pure(sys, m, {}, &rep);
    extra = Json{{"recurrence_steps", rep.recurrence_steps},
                 {"direction_switches", rep.direction_switches},
                 {"oracle_fallbacks", rep.oracle_fallbacks.size()}};
  } else if (method == "diag") {
    if (k != 3 || m[0] != m[1] || m[1] != m[2]) throw UsageError("--method diag needs a point (n, n, n)");
    if (!fs::exists(diag_path)) throw geode::FileError("diagonal recurrence not found: " + diag_path.string());
    auto d = load_diagonal(diag_path);
    if (!d.verified) throw geode::IntegrityError(diag_path.string() + " carries no valid verification stamp");
    if (m[0] == 0) {
      value = 1;
    } else {
      std::optional<geode::RecurrenceSystem> fallback = try_system(sys_path);
      geode::DiagonalReport rep;
      value = geode::eval_diagonal(d.rec.recurrence, m[0], d.rec.g1, d.rec.g2,
                                   fallback && fallback->verified() ? &*fallback : nullptr, &rep);
      extra = Json{{"fallback_steps", rep.fallback_steps}};
    }
  } else {
    throw UsageError("unknown method '" + method + "'");
  }
  Json inputs{{"m", raw}, {"method", method}};
  if (!extra.empty()) inputs["evaluation"] = std::move(extra);
  emit("geode", std::move(inputs), geode::to_decimal(value), digits_of(value), ms_since(t0));
  return kOk;
}

// ---- guess ---------------------------------------------------------------

struct GuessArgs {
  std::size_t k = 0;
  std::string direction = "1";
  bool diagonal = false;
  int order_min = 1;
  int order_max = 2;
  int degree_min = 0;
  int degree_max = 12;
  int table_max = 0;  // 0: sized from the largest ansatz in the search
  int diag_max = 160;
  std::string system;
  std::string out;
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

int cmd_guess(const GuessArgs& a) {
  const auto t0 = Clock::now();
  if (a.k < 1 || a.k > 8) throw UsageError("--k must be between 1 and 8");
  if (a.order_min < 1 || a.order_max < a.order_min || a.degree_min < 0 || a.degree_max < a.degree_min) {
    throw UsageError("empty or invalid order/degree range");
  }
  geode::SearchOptions opts;
  opts.exhaustive = a.exhaustive;
  opts.guess.prime_seed = a.seed;

  std::vector<geode::Direction> directions;
  if (a.diagonal) {
    directions.push_back(geode::Direction::diagonal());
  } else if (a.direction == "all") {
    for (std::size_t i = 0; i < a.k; ++i) directions.push_back(geode::Direction::axis(i));
  } else {
    int d = 0;
    try {
      d = std::stoi(a.direction);
    } catch (const std::exception&) {
      throw UsageError("--direction must be an index or 'all'");
    }
    if (d < 1 || static_cast<std::size_t>(d) > a.k) throw UsageError("--direction out of range");
    directions.push_back(geode::Direction::axis(static_cast<std::size_t>(d - 1)));
  }

  // Table size: explicit, or enough for the largest ansatz in the range
  // (never below 30, the customary default).
  int table_max = a.table_max;
  if (table_max == 0) {
    table_max = 30;
    if (!a.diagonal) {
      geode::AnsatzSpec largest{a.k, directions.back(), a.order_max, a.degree_max};
      if (auto t = geode::required_table_size(largest, opts.guess, 60)) table_max = std::max(table_max, *t);
    }
  }

  Json inputs{{"k", a.k},
              {"direction", a.diagonal ? "diagonal" : a.direction},
              {"order", {a.order_min, a.order_max}},
              {"degree", {a.degree_min, a.degree_max}},
              {"seed", a.seed}};

  std::optional<geode::GeodeTable> data;
  if (a.diagonal) {
    fs::path sys_path = a.system.empty() ? default_system_file() : fs::path(a.system);
    std::optional<geode::RecurrenceSystem> sys;
    if (!a.system.empty() || (a.k == 3 && fs::exists(sys_path))) {
      if (!fs::exists(sys_path)) throw geode::FileError("recurrence system not found: " + sys_path.string());
      sys = geode::io::load_system(sys_path);
      if (sys->k() != a.k) throw UsageError("--system dimension does not match --k");
    }
    if (sys) {
      data = geode::diagonal_table(*sys, a.diag_max);
      inputs["data"] = Json{{"source", "recurrence-system"}, {"file", sys_path.string()}, {"n_max", a.diag_max}};
    } else {
      data = geode::diagonal_table(geode::geode_table(table_max, a.k));
      inputs["data"] = Json{{"source", "oracle"}, {"table_max", table_max}, {"n_max", data->max_total()}};
    }
  } else {
    data = geode::geode_table(table_max, a.k);
    inputs["data"] = Json{{"source", "oracle"}, {"table_max", table_max}};
  }

  Json reports = Json::array();
  std::vector<std::optional<geode::PureRecurrence>> found;
  for (const auto& dir : directions) {
    auto reps = geode::search(*data, dir, {a.order_min, a.order_max}, {a.degree_min, a.degree_max}, opts);
    std::optional<geode::PureRecurrence> best;
    for (const auto& r : reps) {
      std::cerr << "guess " << r.spec.to_string() << ": " << geode::to_string(r.status);
      if (!r.message.empty()) std::cerr << " (" << r.message << ")";
      std::cerr << "\n";
      if (!best && r.status == geode::GuessStatus::Found) best = r.candidates.front().recurrence;
      reports.push_back(geode::io::to_json(r));
    }
    found.push_back(std::move(best));
  }
  const bool all_found = std::all_of(found.begin(), found.end(), [](const auto& f) { return f.has_value(); });

  Json result{{"found", all_found}, {"reports", std::move(reports)}};
  if (all_found && !a.out.empty()) {
    Json doc;
    if (a.diagonal) {
      const auto& g1 = data->at(geode::MultiIndex{1});
      const auto& g2 = data->at(geode::MultiIndex{2});
      doc = geode::io::to_json(geode::io::DiagonalRecurrence{*found.front(), g1, g2});
    } else if (directions.size() == a.k) {
      std::vector<geode::PureRecurrence> recs;
      int window = 1;
      for (auto& f : found) {
        window = std::max(window, static_cast<int>(f->order()));
        recs.push_back(*f);
      }
      doc = geode::io::to_json(geode::RecurrenceSystem::with_oracle_window(a.k, std::move(recs), window));
    } else {
      doc = geode::io::to_json(*found.front());
    }
    geode::io::write_file(a.out, doc);
    result["out"] = a.out;
  }
  emit("guess", std::move(inputs), std::move(result), std::nullopt, ms_since(t0));
  return all_found ? kOk : kNegative;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const std::string& file, int window, long steps, std::size_t sample, bool write_stamp) {
  const auto t0 = Clock::now();
  Json doc = geode::io::read_file(file);
  if (!doc.is_object() || !doc.contains("kind")) throw geode::IntegrityError(file + ": not a recurrence file");
  const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  std::vector<geode::VerificationReport> reps;
  if (kind == "system") {
    auto sys = geode::io::system_from_json(doc);
    reps.push_back(geode::verify_window(sys, window));
    if (sample > 0 && sys.k() > 1) {
      auto pts = geode::random_points(sys.k(), 20, sample, 0x5eed);
      reps.push_back(geode::verify_compatibility(sys, pts));
    }
  } else if (kind == "pure") {
    reps.push_back(geode::verify_pure(geode::io::recurrence_from_json(doc), window));
  } else if (kind == "diagonal") {
    auto d = geode::io::diagonal_from_json(doc);
    std::optional<geode::RecurrenceSystem> fallback;
    if (d.recurrence.dimension() == 3) fallback = try_system(default_system_file());
    reps.push_back(geode::verify_diagonal(d.recurrence, d.g1, d.g2, window, steps,
                                          fallback && fallback->verified() ? &*fallback : nullptr));
  } else {
    throw geode::IntegrityError(file + ": unknown kind '" + kind + "'");
  }
  bool passed = true;
  Json out = Json::array();
  for (const auto& r : reps) {
    passed = passed && r.passed();
    out.push_back(geode::io::to_json(r));
  }
  if (write_stamp) {
    geode::io::stamp(doc, window, passed);
    geode::io::write_file(file, doc);
  }
  emit("verify", Json{{"file", file}, {"kind", kind}, {"window", window}, {"stamp", write_stamp}},
       Json{{"passed", passed}, {"reports", std::move(out)}}, std::nullopt, ms_since(t0));
  return passed ? kOk : kNegative;
}

// ---- bench ---------------------------------------------------------------

struct BenchRow {
  std::string label;
  std::string method;
  double ms;
  geode::BigInt value;
};

template <class Fn>
BenchRow timed(std::string label, std::string method, Fn&& fn) {
  const auto t0 = Clock::now();
  geode::BigInt v = fn();
  return {std::move(label), std::move(method), ms_since(t0), std::move(v)};
}

int cmd_bench(const std::string& suite) {
  const auto t0 = Clock::now();
  if (suite != "definitional" && suite != "recurrence" && suite != "all") {
    throw UsageError("--suite must be definitional, recurrence or all");
  }
  std::vector<BenchRow> rows;
  auto idx = [](std::initializer_list<int> v) { return geode::MultiIndex(std::vector<int>(v)); };
  const std::vector<geode::MultiIndex> shared{idx({4, 7, 8}), idx({8, 8, 8}), idx({12, 12, 12})};

  if (suite != "recurrence") {
    for (auto p : {std::pair{20, 20}, std::pair{60, 60}}) {
      auto m = idx({p.first, p.second});
      rows.push_back(timed(m.to_string(), "oracle", [&] { return geode::geode_number_oracle(m); }));
      rows.push_back(timed(m.to_string(), "closed2", [&] { return geode::g2_closed({p.first, p.second}); }));
    }
    for (const auto& m : shared) {
      rows.push_back(timed(m.to_string(), "oracle", [&] { return geode::geode_number_oracle(m); }));
    }
    rows.push_back(timed("(300,300,300)", "oracle", [&] { return geode::geode_number_oracle(idx({300, 300, 300})); }));
  }
  if (suite != "definitional") {
    for (auto p : {std::pair{20, 20}, std::pair{60, 60}, std::pair{5000, 5000}}) {
      auto m = idx({p.first, p.second});
      rows.push_back(timed(m.to_string(), "fast2", [&] { return geode::g2_fast({p.first, p.second}); }));
      if (p.first == 5000) {
        rows.push_back(timed(m.to_string(), "closed2", [&] { return geode::g2_closed({p.first, p.second}); }));
      }
    }
    auto sys = geode::io::load_system(default_system_file());
    for (const auto& m : shared) {
      rows.push_back(timed(m.to_string(), "rec3", [&] { return geode::eval_pure(sys, m); }));
    }
    auto diag = load_diagonal(default_diagonal_file());
    if (!diag.verified) throw geode::IntegrityError("bundled diagonal recurrence is not verified");
    rows.push_back(timed("(300,300,300)", "diag", [&] {
      return geode::eval_diagonal(diag.rec.recurrence, 300, diag.rec.g1, diag.rec.g2, &sys);
    }));
    rows.push_back(timed("(1000,1000,1000)", "diag", [&] {
      return geode::eval_diagonal(diag.rec.recurrence, 1000, diag.rec.g1, diag.rec.g2, &sys);
    }));
  }

  // Every method must produce the same value for the same point.
  bool agree = true;
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      if (a.label == b.label && a.value != b.value) agree = false;
    }
  }
  // At a point timed both ways, the recurrence should win by a wide margin.
  Json speedups = Json::array();
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      if (a.label == b.label && a.method == "oracle" && b.method == "diag") {
        speedups.push_back(Json{{"point", a.label}, {"oracle_over_diag", a.ms / b.ms}});
      }
    }
  }
  Json table = Json::array();
  for (const auto& r : rows) {
    table.push_back(Json{{"point", r.label}, {"method", r.method}, {"ms", r.ms}, {"digits", digits_of(r.value)}});
    std::cerr << r.label << "  " << r.method << "  " << r.ms << " ms  " << digits_of(r.value) << " digits\n";
  }
  emit("bench", Json{{"suite", suite}}, Json{{"agree", agree}, {"rows", std::move(table)}, {"speedups", std::move(speedups)}}, std::nullopt,
       ms_since(t0));
  return agree ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyper-Catalan and Geode numbers: exact evaluation, recurrence guessing and verification"};
  app.require_subcommand(1);

  std::vector<long> hc_m;
  auto* hc = app.add_subcommand("hc", "hyper-Catalan number C(m)");
  hc->add_option("m", hc_m, "multi-index m_1 ... m_k")->required();

  std::vector<long> g_m;
  std::string method = "auto", system_file, diagonal_file;
  auto* geo = app.add_subcommand("geode", "Geode number G(m)");
  geo->add_option("m", g_m, "multi-index m_1 ... m_k")->required();
  geo->add_option("--method", method, "auto|oracle|closed2|rec3|diag")
      ->check(CLI::IsMember({"auto", "oracle", "closed2", "rec3", "diag"}));
  geo->add_option("--system", system_file, "recurrence system file for rec3");
  geo->add_option("--diagonal", diagonal_file, "diagonal recurrence file for diag");

  GuessArgs ga;
  auto* gs = app.add_subcommand("guess", "guess pure recurrences from exact data");
  gs->add_option("--k", ga.k, "dimension")->required();
  gs->add_option("--direction", ga.direction, "axis (1-based) or 'all'");
  gs->add_flag("--diagonal", ga.diagonal, "guess along the main diagonal");
  gs->add_option("--order-min", ga.order_min);
  gs->add_option("--order-max", ga.order_max);
  gs->add_option("--degree-min", ga.degree_min);
  gs->add_option("--degree-max", ga.degree_max);
  gs->add_option("--table-max", ga.table_max, "max total of the oracle table (default: sized to the search)");
  gs->add_option("--diag-max", ga.diag_max, "last n of diagonal data taken from a recurrence system");
  gs->add_option("--system", ga.system, "recurrence system supplying diagonal data");
  gs->add_option("--seed", ga.seed, "prime sequence offset");
  gs->add_flag("--exhaustive", ga.exhaustive, "try every spec instead of stopping at the first success");
  gs->add_option("--out", ga.out, "write the recurrence (or system) found here");

  std::string vfile;
  int window = 8;
  long steps = 200;
  std::size_t sample = 50;
  bool write_stamp = false;
  auto* vf = app.add_subcommand("verify", "check a recurrence file against the oracle");
  vf->add_option("file", vfile)->required();
  vf->add_option("--window", window, "cube side K");
  vf->add_option("--steps", steps, "diagonal steps checked for integrality");
  vf->add_option("--sample", sample, "random points for the path-independence check");
  vf->add_flag("--stamp", write_stamp, "record the outcome in the file");

  std::string suite = "all";
  auto* bench = app.add_subcommand("bench", "time definitional and recurrence evaluation");
  bench->add_option("--suite", suite, "definitional|recurrence|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*hc) return cmd_hc(hc_m);
    if (*geo) return cmd_geode(g_m, method, system_file, diagonal_file);
    if (*gs) return cmd_guess(ga);
    if (*vf) return cmd_verify(vfile, window, steps, sample, write_stamp);
    if (*bench) return cmd_bench(suite);
  } catch (const UsageError& e) {
    std::cerr << "geode: " << e.what() << "\n";
    return kUsage;
  } catch (const geode::FileError& e) {
    std::cerr << "geode: " << e.what() << "\n";
    return kUsage;
  } catch (const geode::ResourceLimitError& e) {
    std::cerr << "geode: " << e.what() << "\n";
    return kResource;
  } catch (const geode::GeodeError& e) {
    std::cerr << "geode: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "geode: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
