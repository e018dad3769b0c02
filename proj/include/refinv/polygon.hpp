#pragma once

// Lattice polygons for toric surfaces: h-transverse convex polygons, their
// floor profiles, and depth-2 corner cuts modelling a blow-up (class d - 2E).

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace refinv {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend LatticePoint operator*(std::int64_t k, LatticePoint a) { return {k * a.x, k * a.y}; }
};

std::string to_string(const LatticePoint& p);

/// Raised for polygons that are not convex, degenerate where a proper
/// polygon is required, or not h-transverse.
class PolygonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Convex lattice polygon of positive area whose edges all have primitive
/// direction (a, b) with b in {-1, 0, 1}.
///
/// Vertices are stored counterclockwise with collinear points removed,
/// starting from the lexicographically smallest vertex. Construction
/// validates every invariant and throws PolygonError on failure.
class HPolygon {
 public:
  explicit HPolygon(std::vector<LatticePoint> vertices);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  std::size_t edge_count() const { return vertices_.size(); }

  /// Twice the Euclidean area.
  std::int64_t twice_area() const;
  std::int64_t boundary_points() const;
  std::int64_t interior_points() const;
  std::int64_t min_y() const;
  std::int64_t max_y() const;
  std::int64_t height() const { return max_y() - min_y(); }

  /// Translated so the bounding box starts at the origin, then replaced by
  /// its mirror image x -> -x when that gives a lexicographically smaller
  /// vertex list.
  HPolygon canonical() const;

  /// Image under (x, y) -> (y, x). May fail h-transversality.
  HPolygon transposed() const;

  friend bool operator==(const HPolygon&, const HPolygon&) = default;
  friend auto operator<=>(const HPolygon& a, const HPolygon& b) {
    return a.vertices_ <=> b.vertices_;
  }

  std::string to_string() const;

 private:
  std::vector<LatticePoint> vertices_;
};

/// Zero-area result of a corner cut. All invariants of it vanish.
struct Degenerate {
  friend bool operator==(const Degenerate&, const Degenerate&) = default;
  friend auto operator<=>(const Degenerate&, const Degenerate&) = default;
};

using NewtonPolygon = std::variant<HPolygon, Degenerate>;

inline bool is_degenerate(const NewtonPolygon& p) {
  return std::holds_alternative<Degenerate>(p);
}
std::string to_string(const NewtonPolygon& p);
NewtonPolygon canonical(const NewtonPolygon& p);

/// Width data of the horizontal slices of an h-transverse polygon.
///
/// left_steps[k-1] and right_steps[k-1] are the changes of the left and right
/// boundary x-coordinate between heights k-1 and k; they are the slopes of the
/// left and right unbounded ends of the floors.
struct FloorProfile {
  int height = 0;               ///< number of floors
  std::vector<int> widths;      ///< widths[y], y = 0..height
  std::vector<int> divergence;  ///< divergence[k-1] = widths[k-1] - widths[k]
  std::vector<int> left_steps;
  std::vector<int> right_steps;
  int bottom_ends() const { return widths.front(); }
  int top_ends() const { return widths.back(); }
};

HPolygon make_rectangle(int a, int b);
/// The trapezoid (0,0), (2a+b,0), (b,a), (0,a).
HPolygon make_sigma2(int a, int b);
/// The triangle (0,0), (d,0), (0,d).
HPolygon make_p2(int d);

FloorProfile floor_profile(const HPolygon& polygon);

/// Number of point conditions |boundary lattice points| - 1 + genus.
int point_count(const HPolygon& polygon, int genus);

/// Why a corner cannot be cut.
enum class CutFailure { kNotAVertex, kEdgeTooShort, kNotHTransverse };

class CornerCutError : public PolygonError {
 public:
  CornerCutError(CutFailure reason, const std::string& what)
      : PolygonError(what), reason_(reason) {}
  CutFailure reason() const { return reason_; }

 private:
  CutFailure reason_;
};

/// Removes the triangle spanned by the corner and the points two lattice
/// steps along each adjacent edge. Returns Degenerate when nothing of
/// positive area is left. Throws CornerCutError when the cut is not
/// possible.
NewtonPolygon corner_cut(const HPolygon& polygon, LatticePoint corner);

/// Reason a corner cannot be cut, or nullopt when it can.
std::optional<CutFailure> cut_obstruction(const HPolygon& polygon, LatticePoint corner);

/// Corners admitting a cut, in lexicographic order.
std::vector<LatticePoint> admissible_corners(const HPolygon& polygon);

/// "rect:a,b", "sigma2:a,b", "p2:d", or a JSON vertex object
/// {"vertices": [[x,y], ...]}. Throws PolygonError.
NewtonPolygon parse_polygon_spec(std::string_view spec);

nlohmann::json to_json(const NewtonPolygon& p);
NewtonPolygon polygon_from_json(const nlohmann::json& j);

}  // namespace refinv
