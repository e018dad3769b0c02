#include "refinv/invariants.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace refinv {

std::string to_string(BlowupModel m) {
  switch (m) {
    case BlowupModel::kAuto: return "auto";
    case BlowupModel::kCornerCut: return "corner";
    case BlowupModel::kGeneric: return "generic";
  }
  return "?";
}

BlowupModel parse_blowup_model(std::string_view name) {
  if (name == "auto") return BlowupModel::kAuto;
  if (name == "corner") return BlowupModel::kCornerCut;
  if (name == "generic") return BlowupModel::kGeneric;
  throw std::invalid_argument("unknown blow-up model \"" + std::string(name) +
                              "\" (expected auto, corner or generic)");
}

InvariantKey make_key(const NewtonPolygon& polygon, int genus, int pairs, BlowupModel model) {
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  if (pairs < 0) throw std::invalid_argument("pair count must be nonnegative");
  if (pairs > 0 && genus != 0) throw std::invalid_argument("pairs of points need genus 0");
  return {canonical(polygon), genus, pairs, pairs == 0 ? BlowupModel::kAuto : model};
}

// ---------------------------------------------------------------------------
// InvariantTable

namespace {

nlohmann::json key_record(const InvariantKey& key, const TableEntry& entry) {
  nlohmann::json j;
  j["engine"] = InvariantTable::kEngineVersion;
  j["polygon"] = to_json(key.polygon);
  j["genus"] = key.genus;
  j["pairs"] = key.pairs;
  j["model"] = to_string(key.model);
  j["value"] = to_json(entry.value);
  j["extrapolated"] = entry.extrapolated;
  return j;
}

}  // namespace

InvariantTable::InvariantTable(std::filesystem::path cache_file, bool verify)
    : cache_file_(std::move(cache_file)), verify_(verify) {
  load();
}

std::optional<std::filesystem::path> InvariantTable::cache_path_from_env() {
  const char* p = std::getenv("REFINV_CACHE");
  if (p == nullptr || *p == '\0') return std::nullopt;
  return std::filesystem::path(p);
}

void InvariantTable::load() {
  std::ifstream in(*cache_file_);
  if (!in) return;  // created on first append
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(cache_file_->string() + ":" + std::to_string(lineno) +
                               ": malformed cache record: " + e.what());
    }
    if (j.value("engine", "") != kEngineVersion) continue;
    InvariantKey key = make_key(polygon_from_json(j.at("polygon")), j.at("genus").get<int>(),
                                j.at("pairs").get<int>(),
                                parse_blowup_model(j.at("model").get<std::string>()));
    TableEntry entry{laurent_from_json(j.at("value")), j.value("extrapolated", false)};
    auto [it, inserted] = slots_.try_emplace(key, Slot{entry, true, !verify_});
    if (!inserted && it->second.entry.value != entry.value)
      throw std::logic_error(cache_file_->string() + ":" + std::to_string(lineno) +
                             ": conflicting cache records for the same key");
    if (inserted) ++loaded_;
  }
}

std::optional<TableEntry> InvariantTable::find(const InvariantKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = slots_.find(key);
  if (it == slots_.end() || !it->second.verified) return std::nullopt;
  return it->second.entry;
}

void InvariantTable::insert(const InvariantKey& key, const TableEntry& entry) {
  {
    std::unique_lock lock(mutex_);
    auto it = slots_.find(key);
    if (it != slots_.end()) {
      if (it->second.entry.value != entry.value)
        throw std::logic_error("invariant table: recomputed " + to_string(key.polygon) +
                               " g=" + std::to_string(key.genus) + " s=" +
                               std::to_string(key.pairs) + " as " + entry.value.to_string() +
                               ", table holds " + it->second.entry.value.to_string());
      it->second.verified = true;
      return;
    }
    slots_.emplace(key, Slot{entry, false, true});
  }
  if (cache_file_) append(key, entry);
}

void InvariantTable::append(const InvariantKey& key, const TableEntry& entry) {
  std::lock_guard lock(file_mutex_);
  std::ofstream out(*cache_file_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to cache " + cache_file_->string());
  out << key_record(key, entry).dump() << '\n';
}

std::size_t InvariantTable::size() const {
  std::shared_lock lock(mutex_);
  return slots_.size();
}

std::size_t InvariantTable::verified_from_cache() const {
  std::shared_lock lock(mutex_);
  return static_cast<std::size_t>(std::count_if(slots_.begin(), slots_.end(), [](const auto& kv) {
    return kv.second.from_cache && kv.second.verified;
  }));
}

std::vector<InvariantKey> InvariantTable::cached_keys() const {
  std::shared_lock lock(mutex_);
  std::vector<InvariantKey> keys;
  for (const auto& [k, slot] : slots_)
    if (slot.from_cache) keys.push_back(k);
  return keys;
}

// ---------------------------------------------------------------------------
// Polygon geometry used by the recursion

namespace {

std::int64_t det(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }

LatticePoint primitive(LatticePoint d) {
  const std::int64_t g = std::gcd(d.x, d.y);
  return {d.x / g, d.y / g};
}

std::vector<LatticePoint> edge_directions(const HPolygon& p) {
  const auto& v = p.vertices();
  std::vector<LatticePoint> u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = primitive(v[(i + 1) % v.size()] - v[i]);
  return u;
}

}  // namespace

bool is_smooth(const HPolygon& polygon) {
  const auto u = edge_directions(polygon);
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(det(u[(i + n - 1) % n], u[i])) != 1) return false;
  return true;
}

std::vector<std::int64_t> edge_self_intersections(const HPolygon& polygon) {
  const auto u = edge_directions(polygon);
  const std::size_t n = u.size();
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = det(u[(i + 1) % n], u[(i + n - 1) % n]);
  return out;
}

bool in_recursion_range(const HPolygon& polygon) {
  if (polygon.edge_count() > 5 || !is_smooth(polygon)) return false;
  for (auto d2 : edge_self_intersections(polygon))
    if (d2 <= -2) return false;
  return true;
}

bool pairs_admissible(const NewtonPolygon& polygon, int pairs) {
  if (pairs < 0) return false;
  if (is_degenerate(polygon)) return true;
  return 2 * pairs <= point_count(std::get<HPolygon>(polygon), 0);
}

// ---------------------------------------------------------------------------
// Classes on the blown-up plane

std::string to_string(const PlaneClass& c) {
  std::ostringstream os;
  os << c.degree << "L";
  for (std::size_t i = 0; i < c.mult.size(); ++i)
    os << (c.mult[i] >= 0 ? " - " : " + ") << std::abs(c.mult[i]) << "E" << i + 1;
  return os.str();
}

namespace {

// The exceptional curve itself, reached when a reduction lands on a (-1)-class.
bool is_exceptional_curve(const PlaneClass& c) {
  if (c.degree != 0) return false;
  int minus_one = 0;
  for (auto m : c.mult) {
    if (m == -1) ++minus_one;
    else if (m != 0) return false;
  }
  return minus_one == 1;
}

// Edge directions of the plane triangle with all three corners cut, in
// counterclockwise order, and a lookup from direction to slot.
constexpr std::array<LatticePoint, 6> kHexagonDirections = {
    LatticePoint{1, 0}, LatticePoint{0, 1},  LatticePoint{-1, 1},
    LatticePoint{-1, 0}, LatticePoint{0, -1}, LatticePoint{1, -1}};

int hexagon_slot(LatticePoint u) {
  for (int i = 0; i < 6; ++i)
    if (kHexagonDirections[i] == u) return i;
  return -1;
}

std::optional<PlaneClass> match_hexagon(const HPolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  std::array<std::int64_t, 6> len{};
  std::vector<int> slots;
  for (std::size_t i = 0; i < n; ++i) {
    const LatticePoint d = v[(i + 1) % n] - v[i];
    const int slot = hexagon_slot(primitive(d));
    if (slot < 0) return std::nullopt;
    len[slot] = std::gcd(d.x, d.y);
    slots.push_back(slot);
  }
  // Counterclockwise means the slots increase cyclically, wrapping once.
  int wraps = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (slots[(i + 1) % n] <= slots[i]) ++wraps;
  if (wraps != 1) return std::nullopt;
  const std::int64_t m0 = len[5], m1 = len[1], m2 = len[3];
  const std::int64_t e = len[0] + m0 + m1;
  if (len[2] != e - m1 - m2 || len[4] != e - m2 - m0) return std::nullopt;
  return PlaneClass{e, {m0, m1, m2}};
}

}  // namespace

std::optional<PlaneClass> plane_class_of(const HPolygon& polygon) {
  if (auto c = match_hexagon(polygon)) return c;
  std::vector<LatticePoint> mirrored;
  for (auto p : polygon.vertices()) mirrored.push_back({-p.x, p.y});
  return match_hexagon(HPolygon(mirrored));
}

std::optional<PlaneClass> reduce(PlaneClass c) {
  for (;;) {
    if (is_exceptional_curve(c)) {
      c.mult = {-1};
      return c;
    }
    // Points of multiplicity one are ordinary point conditions.
    std::erase_if(c.mult, [](std::int64_t m) { return m == 0 || m == 1; });
    if (c.degree <= 0) return std::nullopt;
    if (std::any_of(c.mult.begin(), c.mult.end(), [](auto m) { return m < 0; }))
      return std::nullopt;
    std::sort(c.mult.rbegin(), c.mult.rend());
    if (c.mult.size() >= 3 && c.mult[0] + c.mult[1] + c.mult[2] > c.degree) {
      const std::int64_t shift = c.degree - c.mult[0] - c.mult[1] - c.mult[2];
      c.degree += shift;
      for (int i = 0; i < 3; ++i) c.mult[i] += shift;
      continue;
    }
    break;
  }
  // The line through the two worst points would split off.
  if (c.mult.size() >= 2 && c.mult[0] + c.mult[1] > c.degree) return std::nullopt;
  if (!c.mult.empty() && c.mult[0] >= c.degree) return std::nullopt;
  return c;
}

std::optional<NewtonPolygon> polygon_of(const PlaneClass& reduced) {
  if (reduced.mult.size() > 3) return std::nullopt;
  std::array<std::int64_t, 3> m{0, 0, 0};
  for (std::size_t i = 0; i < reduced.mult.size(); ++i) m[i] = reduced.mult[i];
  const std::int64_t e = reduced.degree;
  if (e <= 0 || m[0] < 0 || m[0] + m[1] > e || m[0] + m[2] > e || m[1] + m[2] > e)
    return NewtonPolygon{Degenerate{}};
  std::vector<LatticePoint> pts = {{m[0], 0},     {0, m[0]},         {e - m[1], 0},
                                   {e - m[1], m[1]}, {0, e - m[2]}, {m[2], e - m[2]}};
  try {
    return NewtonPolygon{HPolygon(pts)};
  } catch (const PolygonError&) {
    return NewtonPolygon{Degenerate{}};
  }
}

// ---------------------------------------------------------------------------
// InvariantEngine

InvariantEngine::InvariantEngine(std::shared_ptr<InvariantTable> table) : table_(std::move(table)) {}

BlowupModel InvariantEngine::resolve(const NewtonPolygon& polygon, BlowupModel model) {
  if (model != BlowupModel::kAuto) return model;
  if (is_degenerate(polygon)) return BlowupModel::kGeneric;
  return plane_class_of(std::get<HPolygon>(polygon)) ? BlowupModel::kGeneric
                                                     : BlowupModel::kCornerCut;
}

LaurentPoly InvariantEngine::invariant(const NewtonPolygon& polygon, int genus) {
  if (is_degenerate(polygon)) return {};
  const InvariantKey key = make_key(polygon, genus, 0);
  if (auto hit = table_->find(key)) return hit->value;
  LaurentPoly value = refined_invariant(key.polygon, genus);
  table_->insert(key, {value, false});
  return value;
}

namespace {

std::string indent(int depth) { return std::string(2 * static_cast<std::size_t>(depth), ' '); }

std::string trace_line(int depth, const std::string& what, int pairs, const Descendant& d,
                       const std::string& note) {
  std::string s = indent(depth) + "G(" + what + "; s=" + std::to_string(pairs) +
                  ") = " + d.value.to_string();
  if (d.extrapolated) s += "  [extrapolated]";
  if (!note.empty()) s += "  " + note;
  return s;
}

}  // namespace

Descendant InvariantEngine::descendant(const NewtonPolygon& polygon, int pairs, BlowupModel model,
                                       std::vector<std::string>* trace) {
  if (!pairs_admissible(polygon, pairs))
    throw std::invalid_argument("inadmissible pair count s=" + std::to_string(pairs) + " for " +
                                to_string(polygon) + ": need 2s <= point count");
  if (is_degenerate(polygon)) return {{}, false, resolve(polygon, model)};
  if (pairs == 0) return {invariant(polygon, 0), false, resolve(polygon, model)};

  const BlowupModel used = resolve(polygon, model);
  const InvariantKey key = make_key(polygon, 0, pairs, used);
  if (!trace) {
    if (auto hit = table_->find(key)) return {hit->value, hit->extrapolated, used};
  }
  Descendant d;
  if (used == BlowupModel::kCornerCut) {
    d = corner_cut_rec(polygon, pairs, std::nullopt, trace, 0);
  } else {
    const auto cls = plane_class_of(std::get<HPolygon>(polygon));
    if (!cls)
      throw RecursionError("the generic blow-up model does not cover " + to_string(polygon));
    const auto& v = std::get<HPolygon>(polygon).vertices();
    const bool rectangle = v.size() == 4 && v[0].y == v[1].y && v[1].x == v[2].x;
    const int points = rectangle ? 1
                                 : static_cast<int>(std::count_if(cls->mult.begin(), cls->mult.end(),
                                                                  [](auto m) { return m != 0; }));
    const auto reduced = reduce(*cls);
    d = reduced ? generic_rec(*reduced, points, pairs, trace, 0) : Descendant{};
  }
  d.model = used;
  table_->insert(key, {d.value, d.extrapolated});
  return d;
}

Descendant InvariantEngine::descendant_via_corner(const HPolygon& polygon, int pairs,
                                                  LatticePoint corner) {
  if (!pairs_admissible(polygon, pairs))
    throw std::invalid_argument("inadmissible pair count s=" + std::to_string(pairs));
  if (pairs == 0) return {invariant(polygon, 0), false, BlowupModel::kCornerCut};
  return corner_cut_rec(polygon, pairs, corner, nullptr, 0);
}

Descendant InvariantEngine::corner_cut_rec(const NewtonPolygon& polygon, int pairs,
                                           std::optional<LatticePoint> first_corner,
                                           std::vector<std::string>* trace, int depth) {
  if (is_degenerate(polygon)) {
    Descendant zero{{}, false, BlowupModel::kCornerCut};
    if (trace) trace->push_back(trace_line(depth, "degenerate", pairs, zero, ""));
    return zero;
  }
  // An explicit first corner refers to the coordinates the caller used.
  const HPolygon p = first_corner ? std::get<HPolygon>(polygon)
                                  : std::get<HPolygon>(polygon).canonical();
  if (pairs == 0) {
    Descendant d{invariant(p, 0), false, BlowupModel::kCornerCut};
    if (trace) trace->push_back(trace_line(depth, p.to_string(), 0, d, ""));
    return d;
  }
  const InvariantKey key = make_key(p, 0, pairs, BlowupModel::kCornerCut);
  if (!first_corner && !trace) {
    if (auto hit = table_->find(key)) return {hit->value, hit->extrapolated, BlowupModel::kCornerCut};
  }
  LatticePoint corner;
  if (first_corner) {
    if (auto why = cut_obstruction(p, *first_corner))
      throw RecursionError("corner " + to_string(*first_corner) + " of " + p.to_string() +
                           " cannot be cut");
    corner = *first_corner;
  } else {
    const auto corners = admissible_corners(p);
    if (corners.empty())
      throw RecursionError("no admissible corner in " + p.to_string() + " at s=" +
                           std::to_string(pairs));
    corner = corners.front();
  }
  std::vector<std::string> sub;
  std::vector<std::string>* sub_trace = trace ? &sub : nullptr;
  const Descendant prev = corner_cut_rec(p, pairs - 1, std::nullopt, sub_trace, depth + 1);
  const Descendant cut = corner_cut_rec(corner_cut(p, corner), pairs - 1, std::nullopt, sub_trace,
                                        depth + 1);
  Descendant d;
  d.model = BlowupModel::kCornerCut;
  d.value = prev.value - cut.value * BigInt(2);
  d.extrapolated = prev.extrapolated || cut.extrapolated || !in_recursion_range(p);
  if (trace) {
    trace->push_back(trace_line(depth, p.to_string(), pairs, d, "cut at " + to_string(corner)));
    trace->insert(trace->end(), sub.begin(), sub.end());
  }
  if (!first_corner) table_->insert(key, {d.value, d.extrapolated});
  return d;
}

LaurentPoly InvariantEngine::class_invariant(const PlaneClass& reduced) {
  if (reduced.degree == 0) return LaurentPoly::constant(1);  // the exceptional curve
  const auto poly = polygon_of(reduced);
  if (!poly)
    throw RecursionError("class " + to_string(reduced) + " has no toric model");
  return invariant(*poly, 0);
}

Descendant InvariantEngine::generic_rec(const PlaneClass& c, int surface_points, int pairs,
                                        std::vector<std::string>* trace, int depth) {
  const auto memo_key = std::make_tuple(c, surface_points, pairs);
  if (!trace) {
    std::lock_guard lock(generic_mutex_);
    if (auto it = generic_memo_.find(memo_key); it != generic_memo_.end()) return it->second;
  }
  Descendant d;
  d.model = BlowupModel::kGeneric;
  std::vector<std::string> sub;
  std::vector<std::string>* sub_trace = trace ? &sub : nullptr;
  if (pairs == 0) {
    d.value = class_invariant(c);
  } else {
    const Descendant prev = generic_rec(c, surface_points, pairs - 1, sub_trace, depth + 1);
    PlaneClass blown = c;
    blown.mult.push_back(2);
    Descendant cut;
    if (auto r = reduce(blown)) {
      cut = generic_rec(*r, surface_points + 1, pairs - 1, sub_trace, depth + 1);
    } else if (sub_trace) {
      sub_trace->push_back(indent(depth + 1) + "G(" + to_string(blown) + "; s=" +
                           std::to_string(pairs - 1) + ") = 0  no curves");
    }
    d.value = prev.value - cut.value * BigInt(2);
    d.extrapolated = prev.extrapolated || cut.extrapolated || surface_points > 2;
  }
  if (trace) {
    trace->push_back(trace_line(depth, to_string(c), pairs, d, ""));
    trace->insert(trace->end(), sub.begin(), sub.end());
  }
  std::lock_guard lock(generic_mutex_);
  generic_memo_.emplace(memo_key, d);
  return d;
}

namespace {

void add_unique(std::vector<LaurentPoly>& v, LaurentPoly p) {
  if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(std::move(p));
}

}  // namespace

const std::vector<LaurentPoly>& InvariantEngine::sweep_rec(const HPolygon& p, int pairs) {
  const auto key = std::make_pair(p, pairs);
  {
    std::lock_guard lock(sweep_mutex_);
    if (auto it = sweep_memo_.find(key); it != sweep_memo_.end()) return it->second;
  }
  std::vector<LaurentPoly> out;
  if (pairs == 0) {
    out.push_back(invariant(p, 0));
  } else {
    const auto prevs = sweep_rec(p, pairs - 1);
    for (auto corner : admissible_corners(p)) {
      const NewtonPolygon cut = corner_cut(p, corner);
      std::vector<LaurentPoly> cuts;
      if (is_degenerate(cut)) cuts.push_back({});
      else cuts = sweep_rec(std::get<HPolygon>(cut).canonical(), pairs - 1);
      for (const auto& a : prevs)
        for (const auto& b : cuts) add_unique(out, a - b * BigInt(2));
    }
  }
  std::lock_guard lock(sweep_mutex_);
  return sweep_memo_.emplace(key, std::move(out)).first->second;
}

std::vector<LaurentPoly> InvariantEngine::corner_sweep(const NewtonPolygon& polygon, int pairs) {
  if (!pairs_admissible(polygon, pairs))
    throw std::invalid_argument("inadmissible pair count s=" + std::to_string(pairs));
  if (is_degenerate(polygon)) return {LaurentPoly{}};
  return sweep_rec(std::get<HPolygon>(polygon).canonical(), pairs);
}

// ---------------------------------------------------------------------------

InvariantEngine& default_engine() {
  static InvariantEngine engine = [] {
    if (auto path = InvariantTable::cache_path_from_env())
      return InvariantEngine(std::make_shared<InvariantTable>(*path));
    return InvariantEngine();
  }();
  return engine;
}

Descendant refined_descendant(const NewtonPolygon& polygon, int pairs, BlowupModel model) {
  return default_engine().descendant(polygon, pairs, model);
}

BigInt gw_value(const NewtonPolygon& polygon, int genus) {
  return evaluate(default_engine().invariant(polygon, genus), 1);
}

BigInt welschinger_value(const NewtonPolygon& polygon, int pairs, BlowupModel model) {
  return evaluate(refined_descendant(polygon, pairs, model).value, -1);
}

}  // namespace refinv
