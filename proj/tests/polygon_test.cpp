#include <gtest/gtest.h>

#include <random>

#include "refinv/polygon.hpp"

namespace refinv {
namespace {

using V = std::vector<LatticePoint>;

const HPolygon& as_h(const NewtonPolygon& p) { return std::get<HPolygon>(p); }

TEST(Polygon, NamedConstructors) {
  EXPECT_EQ(make_rectangle(2, 2).vertices(), (V{{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
  EXPECT_EQ(make_rectangle(1, 1).twice_area(), 2);
  EXPECT_EQ(make_rectangle(5, 1).vertices(), (V{{0, 0}, {5, 0}, {5, 1}, {0, 1}}));
  EXPECT_EQ(make_sigma2(2, 0).vertices(), (V{{0, 0}, {4, 0}, {0, 2}}));
  EXPECT_EQ(make_sigma2(1, 3).vertices(), (V{{0, 0}, {5, 0}, {3, 1}, {0, 1}}));
  EXPECT_EQ(make_sigma2(2, 2).vertices(), (V{{0, 0}, {6, 0}, {2, 2}, {0, 2}}));
  EXPECT_EQ(make_p2(1).vertices(), (V{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(make_p2(2).boundary_points(), 6);
  EXPECT_EQ(make_p2(3).interior_points(), 1);
  EXPECT_THROW(make_rectangle(0, 2), PolygonError);
  EXPECT_THROW(make_p2(0), PolygonError);
}

TEST(Polygon, ValidationRejectsBadInput) {
  EXPECT_THROW(HPolygon(V{{0, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}}), PolygonError);  // not convex
  EXPECT_THROW(HPolygon(V{{0, 0}, {1, 0}, {2, 0}}), PolygonError);           // no area
  EXPECT_THROW(HPolygon(V{{0, 0}, {1, 0}, {1, 2}}), PolygonError);           // edge direction (-1,-2)
  EXPECT_THROW(HPolygon(V{{0, 0}, {3, 0}, {0, 2}}), PolygonError);           // edge (-3,2)
  EXPECT_NO_THROW(HPolygon(V{{0, 2}, {0, 0}, {2, 0}, {2, 2}}));              // any vertex order
}

TEST(Polygon, FloorProfiles) {
  auto sq = floor_profile(make_rectangle(2, 2));
  EXPECT_EQ(sq.height, 2);
  EXPECT_EQ(sq.widths, (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(sq.divergence, (std::vector<int>{0, 0}));
  EXPECT_EQ(sq.bottom_ends(), 2);
  EXPECT_EQ(sq.top_ends(), 2);

  auto tr = floor_profile(make_sigma2(2, 0));
  EXPECT_EQ(tr.widths, (std::vector<int>{4, 2, 0}));
  EXPECT_EQ(tr.divergence, (std::vector<int>{2, 2}));
  EXPECT_EQ(tr.bottom_ends(), 4);
  EXPECT_EQ(tr.top_ends(), 0);

  auto cubic = floor_profile(make_p2(3));
  EXPECT_EQ(cubic.height, 3);
  EXPECT_EQ(cubic.widths, (std::vector<int>{3, 2, 1, 0}));
  EXPECT_EQ(cubic.divergence, (std::vector<int>{1, 1, 1}));
}

TEST(Polygon, PointCount) {
  EXPECT_EQ(point_count(make_rectangle(2, 2), 0), 7);
  EXPECT_EQ(point_count(make_sigma2(3, 0), 0), 11);
  EXPECT_EQ(point_count(make_p2(3), 1), 9);
  for (int a = 1; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) EXPECT_EQ(point_count(make_sigma2(a, b), 0), 4 * a + 2 * b - 1);
}

TEST(Polygon, CornerCuts) {
  EXPECT_EQ(as_h(corner_cut(make_rectangle(2, 2), {2, 2})).vertices(), (V{{0, 0}, {2, 0}, {0, 2}}));
  EXPECT_TRUE(is_degenerate(corner_cut(make_p2(2), {2, 0})));
  EXPECT_EQ(as_h(corner_cut(make_rectangle(2, 4), {2, 4})).vertices(),
            (V{{0, 0}, {2, 0}, {2, 2}, {0, 4}}));

  EXPECT_EQ(cut_obstruction(make_rectangle(2, 2), {1, 1}), CutFailure::kNotAVertex);
  EXPECT_EQ(cut_obstruction(make_rectangle(1, 3), {0, 0}), CutFailure::kEdgeTooShort);
  EXPECT_EQ(cut_obstruction(make_rectangle(2, 2), {0, 0}), std::nullopt);
  try {
    corner_cut(make_rectangle(1, 3), {1, 3});
    FAIL() << "expected CornerCutError";
  } catch (const CornerCutError& e) {
    EXPECT_EQ(e.reason(), CutFailure::kEdgeTooShort);
  }
  EXPECT_EQ(admissible_corners(make_rectangle(2, 2)),
            (V{{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
}

TEST(Polygon, CanonicalForm) {
  const HPolygon shifted(V{{5, 7}, {7, 7}, {7, 9}, {5, 9}});
  EXPECT_EQ(shifted.canonical(), make_rectangle(2, 2));
  // A trapezoid and its mirror image share a canonical form.
  const HPolygon t = make_sigma2(2, 2);
  V mirrored;
  for (auto p : t.vertices()) mirrored.push_back({-p.x, p.y});
  EXPECT_EQ(HPolygon(mirrored).canonical(), t.canonical());
  EXPECT_EQ(canonical(NewtonPolygon{Degenerate{}}), NewtonPolygon{Degenerate{}});
}

TEST(Polygon, SpecsAndJson) {
  EXPECT_EQ(as_h(parse_polygon_spec("rect:3,3")), make_rectangle(3, 3));
  EXPECT_EQ(as_h(parse_polygon_spec("sigma2:1,7")), make_sigma2(1, 7));
  EXPECT_EQ(as_h(parse_polygon_spec("p2:4")), make_p2(4));
  EXPECT_EQ(as_h(parse_polygon_spec(R"({"vertices": [[0,0],[2,0],[0,2]]})")), make_p2(2));
  EXPECT_THROW(parse_polygon_spec("rect:2"), PolygonError);
  EXPECT_THROW(parse_polygon_spec("p2:x"), PolygonError);
  EXPECT_THROW(parse_polygon_spec("/nonexistent/polygon.json"), PolygonError);
  EXPECT_THROW(parse_polygon_spec("{not json"), PolygonError);

  for (const NewtonPolygon& p :
       {NewtonPolygon{make_rectangle(2, 4)}, NewtonPolygon{make_sigma2(3, 0)}, NewtonPolygon{Degenerate{}}})
    EXPECT_EQ(polygon_from_json(nlohmann::json::parse(to_json(p).dump())), p);
}

// Cutting an admissible corner removes exactly the corner triangle: area
// drops by 4 (twice the area of a depth-2 unimodular corner triangle) at
// smooth corners, and boundary points drop by 2.
TEST(PolygonProperty, CornerCutAccounting) {
  for (int a = 2; a <= 5; ++a)
    for (int b = 2; b <= 5; ++b) {
      const auto rect = make_rectangle(a, b);
      for (auto c : admissible_corners(rect)) {
        const auto cut = corner_cut(rect, c);
        if (is_degenerate(cut)) continue;
        EXPECT_EQ(rect.twice_area() - as_h(cut).twice_area(), 4);
        EXPECT_EQ(rect.boundary_points() - as_h(cut).boundary_points(), 2);
        EXPECT_EQ(point_count(rect, 0) - point_count(as_h(cut), 0), 2);
      }
    }
}

// Pick's theorem on random h-transverse polygons built from cut rectangles.
TEST(PolygonProperty, PickFormula) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> side(2, 7);
    NewtonPolygon p = make_rectangle(side(rng), side(rng));
    for (int cuts = 0; cuts < 3 && !is_degenerate(p); ++cuts) {
      auto corners = admissible_corners(as_h(p));
      if (corners.empty()) break;
      p = corner_cut(as_h(p), corners[rng() % corners.size()]);
    }
    if (is_degenerate(p)) continue;
    const auto& h = as_h(p);
    EXPECT_EQ(h.twice_area(), 2 * h.interior_points() + h.boundary_points() - 2);
    EXPECT_EQ(h.canonical().canonical(), h.canonical());
  }
}

}  // namespace
}  // namespace refinv
