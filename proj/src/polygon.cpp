#include "refinv/polygon.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace refinv {

namespace {

std::int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::int64_t lattice_length(LatticePoint d) { return std::gcd(d.x, d.y); }

LatticePoint primitive(LatticePoint d) {
  const std::int64_t g = lattice_length(d);
  return {d.x / g, d.y / g};
}

// Andrew's monotone chain; counterclockwise, collinear points dropped.
std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

bool on_segment(LatticePoint p, LatticePoint a, LatticePoint b) {
  return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool is_h_transverse_direction(LatticePoint d) {
  const LatticePoint u = primitive(d);
  return u.y >= -1 && u.y <= 1;
}

std::int64_t twice_area_of(const std::vector<LatticePoint>& v) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return s;
}

}  // namespace

std::string to_string(const LatticePoint& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

HPolygon::HPolygon(std::vector<LatticePoint> vertices) {
  std::vector<LatticePoint> hull = convex_hull(vertices);
  if (hull.size() < 3 || twice_area_of(hull) == 0)
    throw PolygonError("polygon has zero area");
  for (const auto& p : vertices) {
    bool on_boundary = false;
    for (std::size_t i = 0; i < hull.size() && !on_boundary; ++i)
      on_boundary = on_segment(p, hull[i], hull[(i + 1) % hull.size()]);
    if (!on_boundary) throw PolygonError("vertex " + refinv::to_string(p) + " is not in convex position");
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const LatticePoint d = hull[(i + 1) % hull.size()] - hull[i];
    if (!is_h_transverse_direction(d))
      throw PolygonError("edge " + refinv::to_string(hull[i]) + " -> " +
                         refinv::to_string(hull[(i + 1) % hull.size()]) +
                         " is not h-transverse");
  }
  // convex_hull already starts from the lexicographically smallest point.
  vertices_ = std::move(hull);
}

std::int64_t HPolygon::twice_area() const { return twice_area_of(vertices_); }

std::int64_t HPolygon::boundary_points() const {
  std::int64_t b = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    b += lattice_length(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
  return b;
}

std::int64_t HPolygon::interior_points() const {
  // Pick: 2A = 2I + B - 2.
  return (twice_area() - boundary_points() + 2) / 2;
}

std::int64_t HPolygon::min_y() const {
  return std::min_element(vertices_.begin(), vertices_.end(),
                          [](auto a, auto b) { return a.y < b.y; })->y;
}

std::int64_t HPolygon::max_y() const {
  return std::max_element(vertices_.begin(), vertices_.end(),
                          [](auto a, auto b) { return a.y < b.y; })->y;
}

HPolygon HPolygon::canonical() const {
  std::int64_t min_x = vertices_.front().x, max_x = min_x;
  for (const auto& v : vertices_) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
  }
  const std::int64_t y0 = min_y();
  std::vector<LatticePoint> shifted, mirrored;
  for (const auto& v : vertices_) {
    shifted.push_back({v.x - min_x, v.y - y0});
    mirrored.push_back({max_x - v.x, v.y - y0});
  }
  HPolygon a(std::move(shifted));
  HPolygon b(std::move(mirrored));
  return b.vertices_ < a.vertices_ ? b : a;
}

HPolygon HPolygon::transposed() const {
  std::vector<LatticePoint> swapped;
  for (const auto& v : vertices_) swapped.push_back({v.y, v.x});
  return HPolygon(std::move(swapped));
}

std::string HPolygon::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) s += ",";
    s += refinv::to_string(vertices_[i]);
  }
  return s + "]";
}

std::string to_string(const NewtonPolygon& p) {
  if (is_degenerate(p)) return "degenerate";
  return std::get<HPolygon>(p).to_string();
}

NewtonPolygon canonical(const NewtonPolygon& p) {
  if (is_degenerate(p)) return p;
  return std::get<HPolygon>(p).canonical();
}

HPolygon make_rectangle(int a, int b) {
  if (a < 1 || b < 1) throw PolygonError("rectangle sides must be positive");
  return HPolygon({{0, 0}, {a, 0}, {a, b}, {0, b}});
}

HPolygon make_sigma2(int a, int b) {
  if (a < 1 || b < 0) throw PolygonError("sigma2 polygon needs a >= 1 and b >= 0");
  return HPolygon({{0, 0}, {2 * a + b, 0}, {b, a}, {0, a}});
}

HPolygon make_p2(int d) {
  if (d < 1) throw PolygonError("p2 degree must be positive");
  return HPolygon({{0, 0}, {d, 0}, {0, d}});
}

FloorProfile floor_profile(const HPolygon& polygon) {
  const auto& v = polygon.vertices();
  const std::int64_t y0 = polygon.min_y();
  FloorProfile fp;
  fp.height = static_cast<int>(polygon.height());
  std::vector<std::int64_t> left, right;
  for (std::int64_t y = y0; y <= polygon.max_y(); ++y) {
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const LatticePoint a = v[i], b = v[(i + 1) % v.size()];
      if (y < std::min(a.y, b.y) || y > std::max(a.y, b.y)) continue;
      if (a.y == b.y) {
        lo = std::min({lo, a.x, b.x});
        hi = std::max({hi, a.x, b.x});
        continue;
      }
      const std::int64_t num = (b.x - a.x) * (y - a.y);
      const std::int64_t den = b.y - a.y;
      if (num % den != 0) throw PolygonError("polygon is not h-transverse");
      const std::int64_t x = a.x + num / den;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    fp.widths.push_back(static_cast<int>(hi - lo));
    left.push_back(lo);
    right.push_back(hi);
  }
  for (int k = 1; k <= fp.height; ++k) {
    fp.divergence.push_back(fp.widths[k - 1] - fp.widths[k]);
    fp.left_steps.push_back(static_cast<int>(left[k] - left[k - 1]));
    fp.right_steps.push_back(static_cast<int>(right[k] - right[k - 1]));
  }
  return fp;
}

int point_count(const HPolygon& polygon, int genus) {
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  return static_cast<int>(polygon.boundary_points()) - 1 + genus;
}

namespace {

struct CutAttempt {
  std::optional<CutFailure> failure;
  std::string message;
  NewtonPolygon result = Degenerate{};
};

CutAttempt attempt_cut(const HPolygon& polygon, LatticePoint corner) {
  const auto& v = polygon.vertices();
  auto it = std::find(v.begin(), v.end(), corner);
  if (it == v.end())
    return {CutFailure::kNotAVertex, refinv::to_string(corner) + " is not a vertex"};
  const std::size_t i = static_cast<std::size_t>(it - v.begin());
  const LatticePoint prev = v[(i + v.size() - 1) % v.size()];
  const LatticePoint next = v[(i + 1) % v.size()];
  if (lattice_length(prev - corner) < 2 || lattice_length(next - corner) < 2)
    return {CutFailure::kEdgeTooShort,
            "an edge at corner " + refinv::to_string(corner) + " has lattice length < 2"};
  const LatticePoint a = corner + 2 * primitive(prev - corner);
  const LatticePoint b = corner + 2 * primitive(next - corner);
  std::vector<LatticePoint> pts;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j == i) {
      pts.push_back(a);
      pts.push_back(b);
    } else {
      pts.push_back(v[j]);
    }
  }
  std::vector<LatticePoint> hull = convex_hull(pts);
  if (hull.size() < 3 || twice_area_of(hull) == 0) return {std::nullopt, {}, Degenerate{}};
  if (!is_h_transverse_direction(b - a))
    return {CutFailure::kNotHTransverse,
            "cut at " + refinv::to_string(corner) + " is not h-transverse"};
  return {std::nullopt, {}, HPolygon(std::move(hull))};
}

}  // namespace

NewtonPolygon corner_cut(const HPolygon& polygon, LatticePoint corner) {
  CutAttempt attempt = attempt_cut(polygon, corner);
  if (attempt.failure) throw CornerCutError(*attempt.failure, attempt.message);
  return attempt.result;
}

std::optional<CutFailure> cut_obstruction(const HPolygon& polygon, LatticePoint corner) {
  return attempt_cut(polygon, corner).failure;
}

std::vector<LatticePoint> admissible_corners(const HPolygon& polygon) {
  std::vector<LatticePoint> out;
  for (const auto& c : polygon.vertices())
    if (!cut_obstruction(polygon, c)) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::pair<int, int> parse_int_pair(std::string_view body, std::string_view spec) {
  const auto comma = body.find(',');
  if (comma == std::string_view::npos)
    throw PolygonError("expected two integers in \"" + std::string(spec) + "\"");
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string s1(body.substr(0, comma)), s2(body.substr(comma + 1));
    const int a = std::stoi(s1, &used1);
    const int b = std::stoi(s2, &used2);
    if (used1 != s1.size() || used2 != s2.size()) throw std::invalid_argument("trailing");
    return {a, b};
  } catch (const std::logic_error&) {
    throw PolygonError("malformed polygon spec \"" + std::string(spec) + "\"");
  }
}

}  // namespace

NewtonPolygon parse_polygon_spec(std::string_view spec) {
  auto starts = [&](std::string_view prefix) { return spec.substr(0, prefix.size()) == prefix; };
  if (starts("rect:")) {
    auto [a, b] = parse_int_pair(spec.substr(5), spec);
    return make_rectangle(a, b);
  }
  if (starts("sigma2:")) {
    auto [a, b] = parse_int_pair(spec.substr(7), spec);
    return make_sigma2(a, b);
  }
  if (starts("p2:")) {
    try {
      std::size_t used = 0;
      const std::string body(spec.substr(3));
      const int d = std::stoi(body, &used);
      if (used != body.size()) throw std::invalid_argument("trailing");
      return make_p2(d);
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const PolygonError*>(&e)) throw;
      throw PolygonError("malformed polygon spec \"" + std::string(spec) + "\"");
    }
  }
  nlohmann::json j;
  try {
    if (!spec.empty() && spec.front() == '{') {
      j = nlohmann::json::parse(spec);
    } else {
      std::ifstream in{std::string(spec)};
      if (!in) throw PolygonError("unknown polygon spec or unreadable file \"" + std::string(spec) + "\"");
      j = nlohmann::json::parse(in);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PolygonError(std::string("bad polygon JSON: ") + e.what());
  }
  return polygon_from_json(j);
}

nlohmann::json to_json(const NewtonPolygon& p) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  if (is_degenerate(p)) {
    j["degenerate"] = true;
    return j;
  }
  for (const auto& v : std::get<HPolygon>(p).vertices()) j["vertices"].push_back({v.x, v.y});
  return j;
}

NewtonPolygon polygon_from_json(const nlohmann::json& j) {
  try {
    if (j.value("degenerate", false)) return Degenerate{};
    std::vector<LatticePoint> pts;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 2) throw PolygonError("each vertex must be [x, y]");
      pts.push_back({v[0].get<std::int64_t>(), v[1].get<std::int64_t>()});
    }
    return HPolygon(std::move(pts));
  } catch (const nlohmann::json::exception& e) {
    throw PolygonError(std::string("bad polygon JSON: ") + e.what());
  }
}

}  // namespace refinv
