#include "refinv/cli.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace refinv {

namespace {

using nlohmann::json;

// Runs f(0..n-1) on up to `jobs` threads; results stay in index order.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, int jobs, F f) {
  std::vector<R> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) out[i] = f(i);
  };
  const std::size_t threads = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
  if (threads == 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();  // joins
  return out;
}

json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::string exponent_label(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

json coefficient_diff(const LaurentPoly& expected, const LaurentPoly& computed) {
  std::set<int> keys;
  for (const auto& [e, c] : expected.terms()) keys.insert(e);
  for (const auto& [e, c] : computed.terms()) keys.insert(e);
  json diff = json::array();
  for (int e : keys) {
    const BigInt x = expected.coefficient_half(e), y = computed.coefficient_half(e);
    if (x != y)
      diff.push_back({{"exponent", exponent_label(e)},
                      {"expected", bigint_json(x)},
                      {"computed", bigint_json(y)}});
  }
  return diff;
}

// "N" or "N..M"
std::pair<int, int> parse_range(const std::string& text, const std::string& what) {
  int lo = 0, hi = 0;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
      lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed " + what + " range \"" + text + "\" (expected N or N..M)");
  }
  if (lo < 0 || hi < lo)
    throw std::invalid_argument("empty or negative " + what + " range \"" + text + "\"");
  return {lo, hi};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct RunConfig {
  std::string command;
  std::string polygon;
  std::string genus = "0";
  std::string pairs = "0";
  std::string emit = "json";
  std::string blowup = "auto";
  std::string cache;
  std::string identity;
  std::string suite;
  std::string fixtures;
  std::string cache_action = "info";
  int max = 12;
  int min_genus = 0;
  int jobs = 1;
  bool strict = false;
  bool list_diagrams = false;
  bool trace = false;
};

std::shared_ptr<InvariantTable> open_table(const RunConfig& cfg, bool verify = false) {
  std::optional<std::filesystem::path> path;
  if (!cfg.cache.empty()) path = cfg.cache;
  else path = InvariantTable::cache_path_from_env();
  if (!path) return std::make_shared<InvariantTable>();
  return std::make_shared<InvariantTable>(*path, verify);
}

void check_emit(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (cfg.emit == a) return;
  throw std::invalid_argument("unsupported --emit " + cfg.emit + " for " + cfg.command);
}

// ---------------------------------------------------------------------------
// compute

int run_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_emit(cfg, {"json", "text", "csv"});
  const auto [g_lo, g_hi] = parse_range(cfg.genus, "genus");
  const auto [s_lo, s_hi] = parse_range(cfg.pairs, "pairs");
  if (s_hi > 0 && g_hi > 0)
    throw std::invalid_argument("pairs of conjugate points (s > 0) are only supported in genus 0");
  if (cfg.list_diagrams && s_hi > 0)
    throw std::invalid_argument("--list-diagrams applies to s = 0 only");
  const BlowupModel model = parse_blowup_model(cfg.blowup);
  const NewtonPolygon polygon = parse_polygon_spec(cfg.polygon);
  for (int s = s_lo; s <= s_hi; ++s)
    if (!pairs_admissible(polygon, s))
      throw std::invalid_argument("inadmissible s=" + std::to_string(s) + " for " + cfg.polygon +
                                  ": 2s exceeds the number of point conditions");

  InvariantEngine engine(open_table(cfg));
  json results = json::array();
  std::ostringstream text, csv;
  csv << "polygon,genus,s,exponent,coefficient\n";
  for (int g = g_lo; g <= g_hi; ++g) {
    for (int s = s_lo; s <= s_hi; ++s) {
      std::vector<std::string> trace;
      Descendant d;
      if (s == 0) d.value = engine.invariant(polygon, g);
      else d = engine.descendant(polygon, s, model, cfg.trace ? &trace : nullptr);

      json r;
      r["polygon"] = to_json(polygon);
      r["genus"] = g;
      r["s"] = s;
      r["invariant"] = to_json(d.value);
      r["extrapolated"] = d.extrapolated;
      if (s > 0) r["model"] = to_string(d.model);
      if (cfg.trace && s > 0) r["trace"] = trace;

      text << "G(" << cfg.polygon << ", g=" << g << ", s=" << s << ") = " << d.value;
      if (s > 0) text << "  [" << to_string(d.model) << "]";
      if (d.extrapolated) text << "  [extrapolated]";
      text << "\n";
      if (cfg.trace)
        for (const auto& line : trace) text << "  " << line << "\n";

      for (const auto& [e, c] : d.value.terms())
        csv << csv_field(cfg.polygon) << ',' << g << ',' << s << ',' << exponent_label(e) << ','
            << c << '\n';
      if (cfg.emit == "csv") {
        if (d.extrapolated)
          err << "note: G(" << cfg.polygon << ", s=" << s << ") is extrapolated\n";
        for (const auto& line : trace) err << line << '\n';
      }

      if (cfg.list_diagrams && !is_degenerate(polygon)) {
        json diagrams = json::array();
        for (const auto& c : diagram_contributions(std::get<HPolygon>(canonical(polygon)), g)) {
          json dj = to_json(c.diagram);
          dj["multiplicity"] = to_json(c.multiplicity);
          dj["markings"] = bigint_json(c.markings);
          diagrams.push_back(dj);
          text << "  diagram " << to_json(c.diagram).dump() << "  mult " << c.multiplicity
               << "  markings " << c.markings << "\n";
        }
        r["diagrams"] = diagrams;
      }
      results.push_back(std::move(r));
    }
  }
  if (cfg.emit == "json") out << (results.size() == 1 ? results[0] : results).dump(2) << "\n";
  else if (cfg.emit == "text") out << text.str();
  else out << csv.str();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyResult {
  json report;
  bool pass = true;
  std::vector<std::string> lines;  // text form
};

std::string pass_word(bool p) { return p ? "PASS" : "FAIL"; }

VerifyResult verify_u_inversion(int max) {
  VerifyResult v;
  json inst = json::array();
  for (int m = 0; m <= max; ++m) {
    auto r = check_u_inversion(m, max);
    v.pass = v.pass && r.pass;
    inst.push_back(to_json(r));
    v.lines.push_back(pass_word(r.pass) + " m=" + std::to_string(m));
  }
  v.report["instances"] = inst;
  return v;
}

VerifyResult verify_main_proof(int max) {
  VerifyResult v;
  json inst = json::array();
  for (int l = 0; l <= max; ++l)
    for (int b = 0; b <= l; ++b) {
      auto r = check_mainproof_coeffs(l, b);
      v.pass = v.pass && r.pass;
      inst.push_back(to_json(r));
      v.lines.push_back(pass_word(r.pass) + " l=" + std::to_string(l) + " b=" + std::to_string(b) +
                        " sum=" + r.sum.str() + " expected=" + r.expected.str());
    }
  v.report["instances"] = inst;
  return v;
}

VerifyResult verify_conj_quadric(InvariantEngine& engine, int jobs) {
  VerifyResult v;
  json inst = json::array();
  for (const auto& r : run_conjecture_suite(engine, jobs)) {
    v.pass = v.pass && r.pass;
    inst.push_back(to_json(r));
    std::string label = pass_word(r.pass) + " (" + std::to_string(r.a) + "," + std::to_string(r.b) +
                        ") g=" + std::to_string(r.genus);
    if (r.pairs) label += " s=" + std::to_string(*r.pairs);
    label += "  lhs=" + r.lhs.to_string() + "  rhs=" + r.rhs.to_string();
    if (!r.note.empty()) label += "  (" + r.note + ")";
    v.lines.push_back(label);
  }
  v.report["instances"] = inst;
  return v;
}

VerifyResult verify_symmetry(InvariantEngine& engine, int jobs) {
  VerifyResult v;
  json inst = json::array();
  for (const auto& r : run_symmetry_suite(engine, jobs)) {
    v.pass = v.pass && r.pass;
    inst.push_back(to_json(r));
    v.lines.push_back(pass_word(r.pass) + " rect " + std::to_string(r.a) + "x" + std::to_string(r.b) +
                      " g=" + std::to_string(r.genus) + " s=" + std::to_string(r.pairs) + "  " +
                      r.lhs.to_string());
  }
  v.report["instances"] = inst;
  return v;
}

VerifyResult verify_monotone(InvariantEngine& engine) {
  VerifyResult v;
  json inst = json::array();
  for (const auto& r : run_monotone_suite(engine)) {
    v.pass = v.pass && r.pass;
    inst.push_back(to_json(r));
    v.lines.push_back(pass_word(r.pass) + " rect " + std::to_string(r.a) + "x" + std::to_string(r.b) +
                      " s=" + std::to_string(r.pairs) + "->" + std::to_string(r.pairs + 1) +
                      (r.note.empty() ? "" : "  (" + r.note + ")"));
  }
  v.report["instances"] = inst;
  return v;
}

// Genus-0 invariants of the rectangles 1..n x 1..n evaluated at q0 (GW numbers
// at 1, Welschinger numbers at -1), indexed by quadric classes; the table is
// closed under transposition.
NumberTable quadric_table(InvariantEngine& engine, int n, bool strict, int q0) {
  NumberTable t(strict);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      t.set(make_class({a, b}), evaluate(engine.invariant(make_rectangle(a, b), 0), q0));
  return t;
}

// Folded and alternating transforms along S = (-1, 1) at the classes with
// d.S = 0, where the reflection pairs k with -k.
VerifyResult verify_fold(InvariantEngine& engine, int n, bool strict) {
  VerifyResult v;
  const auto lattice = ClassLattice::quadric();
  const ClassVector s = make_class({-1, 1});
  const NumberTable t = quadric_table(engine, n, strict, 1);
  v.report["reflection_closed"] = reflection_closed(t, lattice, s);
  v.pass = reflection_closed(t, lattice, s);
  json inst = json::array();
  for (const auto& d : t.support()) {
    if (lattice.dot(d, s) != 0) continue;
    const BigInt folded = lagrangian_transform(t, lattice, s, d);
    const BigInt alternating = lagrangian_transform_alternating(t, lattice, s, d);
    const bool ok = folded == alternating;
    v.pass = v.pass && ok;
    inst.push_back({{"class", class_key(d)},
                    {"folded", bigint_json(folded)},
                    {"alternating", bigint_json(alternating)},
                    {"pass", ok}});
    v.lines.push_back(pass_word(ok) + " d=" + to_string(d) + " folded=" + folded.str() +
                      " alternating=" + alternating.str());
  }
  v.report["instances"] = inst;
  return v;
}

// Two-ball formula against the single-sphere transform along E2 - E1 on
// the plane blown up twice, over genus-0 numbers of classes e L - m1 E1 - m2 E2.
VerifyResult verify_two_ball(InvariantEngine& engine, int n, bool strict) {
  VerifyResult v;
  const auto lattice = ClassLattice::blown_up_plane(2);
  NumberTable t(strict);
  for (int e = 1; e <= n; ++e)
    for (int m1 = 0; m1 <= e; ++m1)
      for (int m2 = 0; m2 <= e; ++m2) {
        BigInt value = 0;
        if (auto r = reduce(PlaneClass{e, {m1, m2}}))
          if (auto poly = polygon_of(*r)) value = evaluate(engine.invariant(*poly, 0), 1);
        t.set(make_class({e, -m1, -m2}), value);
      }
  const ClassVector e1 = make_class({0, 1, 0}), e2 = make_class({0, 0, 1});
  json inst = json::array();
  for (int e = 1; e <= n; ++e)
    for (int l = 0; 2 * l <= e; ++l) {
      const ClassVector d = make_class({e, 0, 0});
      const BigInt lhs = two_ball_transfer(t, d, e1, e2, l);
      const BigInt rhs = lagrangian_transform(t, lattice, e2 - e1, d - l * e1 - l * e2);
      const bool ok = lhs == rhs;
      v.pass = v.pass && ok;
      inst.push_back({{"degree", e}, {"l", l}, {"two_ball", bigint_json(lhs)},
                      {"transform", bigint_json(rhs)}, {"pass", ok}});
      v.lines.push_back(pass_word(ok) + " e=" + std::to_string(e) + " l=" + std::to_string(l) +
                        " value=" + lhs.str());
    }
  v.report["instances"] = inst;
  return v;
}

VerifyResult verify_increase(InvariantEngine& engine, int n, bool strict) {
  VerifyResult v;
  const auto r = check_increase(quadric_table(engine, n, strict, -1), ClassLattice::quadric(),
                                make_class({-1, 1}));
  v.pass = r.holds();
  v.report["instances"] = json::array({to_json(r)});
  for (const auto& x : r.violations)
    v.lines.push_back("FAIL d=" + to_string(x.d) + " transformed=" + x.transformed.str() +
                      " original=" + x.original.str());
  if (r.holds()) v.lines.push_back("PASS no violations");
  return v;
}

void emit_verify(const RunConfig& cfg, const std::string& kind, const std::string& name,
                 VerifyResult& v, std::ostream& out) {
  if (cfg.emit == "json") {
    v.report[kind] = name;
    v.report["pass"] = v.pass;
    out << v.report.dump(2) << "\n";
  } else {
    for (const auto& line : v.lines) out << line << "\n";
    out << kind << " " << name << ": " << pass_word(v.pass) << "\n";
  }
}

int emit_appendix(const RunConfig& cfg, const std::vector<FixtureOutcome>& outcomes,
                  std::ostream& out) {
  const bool pass = suite_passes(outcomes);
  if (cfg.emit == "json") {
    json j;
    j["suite"] = "appendix";
    j["pass"] = pass;
    j["fixtures"] = json::array();
    for (const auto& o : outcomes) j["fixtures"].push_back(to_json(o));
    out << j.dump(2) << "\n";
  } else {
    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto& o : outcomes) {
      ++counts[static_cast<int>(o.status)];
      out << to_string(o.status) << "  " << o.fixture.label();
      if (o.status != FixtureOutcome::Status::kReference) out << "  " << o.computed;
      if (o.extrapolated) out << "  [extrapolated]";
      out << "\n";
      if (o.status == FixtureOutcome::Status::kMismatch) {
        out << "    expected " << o.fixture.expected << "\n";
        for (const auto& d : coefficient_diff(o.fixture.expected, o.computed))
          out << "    q^" << d["exponent"].get<std::string>() << ": expected " << d["expected"]
              << ", computed " << d["computed"] << "\n";
      }
      if (!o.message.empty()) out << "    " << o.message << "\n";
    }
    out << "appendix: " << counts[0] << " match, " << counts[1] << " mismatch, " << counts[2]
        << " error, " << counts[3] << " reference-only: " << pass_word(pass) << "\n";
  }
  return pass ? kExitOk : kExitFailure;
}

int run_appendix(const RunConfig& cfg, std::ostream& out) {
  check_emit(cfg, {"json", "text"});
  const auto fixtures = cfg.fixtures.empty() ? appendix_fixtures() : load_fixtures(cfg.fixtures);
  InvariantEngine engine(open_table(cfg));
  const auto outcomes =
      run_appendix_suite(engine, fixtures, parse_blowup_model(cfg.blowup), cfg.min_genus, cfg.jobs);
  return emit_appendix(cfg, outcomes, out);
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  check_emit(cfg, {"json", "text"});
  if (cfg.identity.empty() == cfg.suite.empty())
    throw std::invalid_argument("verify needs exactly one of --identity or --suite");
  if (!cfg.suite.empty()) {
    if (cfg.suite != "appendix") throw std::invalid_argument("unknown suite " + cfg.suite);
    return run_appendix(cfg, out);
  }
  if (cfg.max < 0) throw std::invalid_argument("--max must be nonnegative");
  InvariantEngine engine(open_table(cfg));
  VerifyResult v;
  const std::string& id = cfg.identity;
  if (id == "u-inversion") v = verify_u_inversion(cfg.max);
  else if (id == "main-proof") v = verify_main_proof(cfg.max);
  else if (id == "conj-quadric") v = verify_conj_quadric(engine, cfg.jobs);
  else if (id == "symmetry") v = verify_symmetry(engine, cfg.jobs);
  else if (id == "monotone-s") v = verify_monotone(engine);
  else if (id == "fold") v = verify_fold(engine, std::min(cfg.max, 5), cfg.strict);
  else if (id == "two-ball") v = verify_two_ball(engine, std::min(cfg.max, 5), cfg.strict);
  else if (id == "increase") v = verify_increase(engine, std::min(cfg.max, 5), cfg.strict);
  else throw std::invalid_argument("unknown identity " + id);
  emit_verify(cfg, "identity", id, v, out);
  return v.pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// cache

int run_cache(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_emit(cfg, {"json", "text"});
  std::optional<std::filesystem::path> path;
  if (!cfg.cache.empty()) path = cfg.cache;
  else path = InvariantTable::cache_path_from_env();
  if (!path) throw std::invalid_argument("no cache file: pass --cache or set REFINV_CACHE");

  json j;
  j["cache"] = path->string();
  j["engine"] = InvariantTable::kEngineVersion;
  bool pass = true;
  if (cfg.cache_action == "info") {
    InvariantTable table(*path);
    j["records"] = table.loaded_from_cache();
  } else if (cfg.cache_action == "verify") {
    auto table = std::make_shared<InvariantTable>(*path, true);
    InvariantEngine engine(table);
    json mismatches = json::array();
    for (const auto& key : table->cached_keys()) {
      try {
        if (key.pairs == 0) engine.invariant(key.polygon, key.genus);
        else engine.descendant(key.polygon, key.pairs, key.model);
      } catch (const std::exception& e) {
        pass = false;
        mismatches.push_back({{"polygon", to_json(key.polygon)},
                              {"genus", key.genus},
                              {"pairs", key.pairs},
                              {"error", e.what()}});
        err << "mismatch: " << e.what() << "\n";
      }
    }
    j["records"] = table->loaded_from_cache();
    j["verified"] = table->verified_from_cache();
    j["mismatches"] = mismatches;
    j["pass"] = pass;
  } else {
    throw std::invalid_argument("unknown cache action " + cfg.cache_action);
  }
  if (cfg.emit == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << "cache " << path->string() << " (" << InvariantTable::kEngineVersion << "): "
        << j["records"] << " records";
    if (j.contains("verified")) out << ", " << j["verified"] << " verified: " << pass_word(pass);
    out << "\n";
  }
  return pass ? kExitOk : kExitFailure;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(FixtureOutcome::Status s) {
  switch (s) {
    case FixtureOutcome::Status::kMatch: return "match";
    case FixtureOutcome::Status::kMismatch: return "mismatch";
    case FixtureOutcome::Status::kError: return "error";
    case FixtureOutcome::Status::kReference: return "reference";
  }
  return "?";
}

std::vector<FixtureOutcome> run_appendix_suite(InvariantEngine& engine,
                                               const std::vector<AppendixFixture>& fixtures,
                                               BlowupModel model, int min_genus, int jobs) {
  std::vector<const AppendixFixture*> selected;
  for (const auto& f : fixtures)
    if (f.genus >= min_genus) selected.push_back(&f);
  return parallel_map<FixtureOutcome>(selected.size(), jobs, [&](std::size_t i) {
    FixtureOutcome o;
    o.fixture = *selected[i];
    const auto& f = o.fixture;
    if (f.reference_only()) {
      o.status = FixtureOutcome::Status::kReference;
      o.message = "reference value; not recomputed";
      return o;
    }
    try {
      if (f.pairs == 0) {
        o.computed = engine.invariant(f.polygon(), f.genus);
      } else {
        const Descendant d = engine.descendant(f.polygon(), f.pairs, model);
        o.computed = d.value;
        o.extrapolated = d.extrapolated;
        o.model = d.model;
      }
      o.status = o.computed == f.expected ? FixtureOutcome::Status::kMatch
                                          : FixtureOutcome::Status::kMismatch;
    } catch (const std::exception& e) {
      o.status = FixtureOutcome::Status::kError;
      o.message = e.what();
    }
    return o;
  });
}

bool suite_passes(const std::vector<FixtureOutcome>& outcomes) {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const FixtureOutcome& o) {
    return o.status == FixtureOutcome::Status::kMatch ||
           o.status == FixtureOutcome::Status::kReference;
  });
}

nlohmann::json to_json(const FixtureOutcome& o) {
  json j;
  j["label"] = o.fixture.label();
  j["surface"] = to_string(o.fixture.surface);
  j["a"] = o.fixture.a;
  j["b"] = o.fixture.b;
  j["genus"] = o.fixture.genus;
  j["s"] = o.fixture.pairs;
  j["line"] = o.fixture.line;
  j["status"] = to_string(o.status);
  j["expected"] = to_json(o.fixture.expected);
  if (o.status == FixtureOutcome::Status::kMatch || o.status == FixtureOutcome::Status::kMismatch) {
    j["computed"] = to_json(o.computed);
    j["extrapolated"] = o.extrapolated;
    if (o.fixture.pairs > 0) j["model"] = to_string(o.model);
  }
  if (o.status == FixtureOutcome::Status::kMismatch)
    j["diff"] = coefficient_diff(o.fixture.expected, o.computed);
  if (!o.message.empty()) j["message"] = o.message;
  return j;
}

std::vector<QuadricReport> run_conjecture_suite(InvariantEngine& engine, int jobs) {
  struct Instance {
    int a, b, genus;
    std::optional<int> pairs;
  };
  std::vector<Instance> inst;
  for (int b = 0; b <= 6; ++b) inst.push_back({1, b, 0, std::nullopt});
  const std::pair<int, int> families[] = {{2, 0}, {2, 2}, {3, 0}};
  for (auto [a, b] : families) {
    const int max_genus = (a - 1) * (a + b - 1);  // genus of the rectangle (a+b) x a
    for (int g = 1; g <= max_genus; ++g) inst.push_back({a, b, g, std::nullopt});
    const int max_pairs = (2 * (2 * a + b) - 1) / 2;
    for (int s = 0; s <= max_pairs; ++s) inst.push_back({a, b, 0, s});
  }
  const Sigma2Fixtures fixtures = [](int a, int b, int s) {
    return find_fixture(Surface::kSigma2, a, b, 0, s);
  };
  return parallel_map<QuadricReport>(inst.size(), jobs, [&](std::size_t i) {
    const auto& x = inst[i];
    return check_conjecture_quadric(engine, x.a, x.b, x.genus, x.pairs, fixtures);
  });
}

std::vector<SymmetryReport> run_symmetry_suite(InvariantEngine& engine, int jobs) {
  std::vector<SymmetryReport> inst;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; a * b <= 8; ++b) {
      SymmetryReport r;
      r.a = a;
      r.b = b;
      for (r.genus = 0; r.genus <= (a - 1) * (b - 1); ++r.genus) inst.push_back(r);
      r.genus = 0;
      for (r.pairs = 1; 2 * r.pairs <= 2 * (a + b) - 1; ++r.pairs) inst.push_back(r);
    }
  return parallel_map<SymmetryReport>(inst.size(), jobs, [&](std::size_t i) {
    SymmetryReport r = inst[i];
    try {
      const HPolygon ab = make_rectangle(r.a, r.b), ba = make_rectangle(r.b, r.a);
      if (r.pairs == 0) {
        r.lhs = engine.invariant(ab, r.genus);
        r.rhs = engine.invariant(ba, r.genus);
      } else {
        r.lhs = engine.descendant(ab, r.pairs).value;
        r.rhs = engine.descendant(ba, r.pairs).value;
      }
      r.pass = r.lhs == r.rhs;
    } catch (const std::exception& e) {
      r.note = e.what();
    }
    return r;
  });
}

nlohmann::json to_json(const SymmetryReport& r) {
  json j = {{"a", r.a}, {"b", r.b}, {"genus", r.genus}, {"s", r.pairs},
            {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}, {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::vector<MonotoneReport> run_monotone_suite(InvariantEngine& engine) {
  std::vector<MonotoneReport> out;
  const std::pair<int, int> rects[] = {{2, 2}, {2, 4}, {3, 3}};
  for (auto [a, b] : rects) {
    const HPolygon p = make_rectangle(a, b);
    const int max_pairs = (2 * (a + b) - 1) / 2;
    for (int s = 0; s < max_pairs; ++s) {
      MonotoneReport r{a, b, s, {}, {}, false, {}};
      try {
        const LaurentPoly x = engine.descendant(p, s).value;
        const Descendant y = engine.descendant(p, s + 1);
        std::set<int> keys;
        for (const auto& [e, c] : x.terms()) keys.insert(e);
        for (const auto& [e, c] : y.value.terms()) keys.insert(e);
        for (int e : keys) {
          if (y.value.coefficient_half(e) > x.coefficient_half(e)) r.increasing.push_back(e / 2);
          if (y.value.coefficient_half(e) < 0) r.negative.push_back(e / 2);
        }
        r.pass = r.increasing.empty() && r.negative.empty();
        if (y.extrapolated) r.note = "extrapolated";
      } catch (const std::exception& e) {
        r.note = e.what();
      }
      out.push_back(r);
    }
  }
  return out;
}

nlohmann::json to_json(const MonotoneReport& r) {
  json j = {{"a", r.a}, {"b", r.b}, {"s", r.pairs}, {"increasing", r.increasing},
            {"negative", r.negative}, {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"refinv: tropical refined invariants of toric surfaces"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, const char* emit_help) {
    sub->add_option("--emit", cfg.emit, emit_help);
    sub->add_option("--cache", cfg.cache, "cache file (JSON lines); default $REFINV_CACHE");
  };

  auto* compute = app.add_subcommand("compute", "compute refined invariants of a polygon");
  compute->add_option("--polygon", cfg.polygon, "rect:a,b | sigma2:a,b | p2:d | vertex JSON file")
      ->required();
  compute->add_option("--genus", cfg.genus, "genus N or range N..M")->capture_default_str();
  compute->add_option("--pairs,-s", cfg.pairs, "pairs of conjugate points N or N..M")
      ->capture_default_str();
  compute->add_option("--blowup", cfg.blowup, "recursion model: auto | corner | generic")
      ->capture_default_str();
  compute->add_flag("--list-diagrams", cfg.list_diagrams, "list floor diagrams with weights");
  compute->add_flag("--trace", cfg.trace, "print the recursion tree");
  common(compute, "json | text | csv");

  auto* verify = app.add_subcommand("verify", "run an identity or the appendix suite");
  verify->add_option("--identity", cfg.identity,
                     "u-inversion | main-proof | conj-quadric | symmetry | monotone-s | fold | "
                     "two-ball | increase");
  verify->add_option("--suite", cfg.suite, "appendix");
  verify->add_option("--max", cfg.max, "size bound for identity checks")->capture_default_str();
  verify->add_option("--jobs,-j", cfg.jobs, "worker threads")->capture_default_str();
  verify->add_option("--blowup", cfg.blowup, "recursion model for the appendix suite");
  verify->add_flag("--strict", cfg.strict, "missing table entries are errors");
  common(verify, "json | text");

  auto* appendix = app.add_subcommand("appendix", "recompute the reference tables and diff");
  appendix->add_option("--min-genus", cfg.min_genus, "skip rows of smaller genus");
  appendix->add_option("--fixtures", cfg.fixtures, "fixture file (default: bundled data)");
  appendix->add_option("--jobs,-j", cfg.jobs, "worker threads")->capture_default_str();
  appendix->add_option("--blowup", cfg.blowup, "recursion model: auto | corner | generic");
  common(appendix, "json | text");

  auto* cache = app.add_subcommand("cache", "inspect or verify the invariant cache");
  cache->add_option("action", cfg.cache_action, "info | verify")->capture_default_str();
  common(cache, "json | text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "refinv: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*compute) return (cfg.command = "compute", run_compute(cfg, out, err));
    if (*verify) return (cfg.command = "verify", run_verify(cfg, out));
    if (*appendix) return (cfg.command = "appendix", run_appendix(cfg, out));
    if (*cache) return (cfg.command = "cache", run_cache(cfg, out, err));
  } catch (const RecursionError& e) {
    err << "refinv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "refinv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "refinv: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace refinv
