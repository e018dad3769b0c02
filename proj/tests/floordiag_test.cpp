#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "refinv/floordiag.hpp"

namespace refinv {
namespace {

LaurentPoly P(const char* s) { return parse_laurent(s); }

TEST(FloorDiagrams, SmallEnumerations) {
  const auto unit = enumerate_diagrams(make_rectangle(1, 1), 0);
  ASSERT_EQ(unit.size(), 1u);
  EXPECT_EQ(unit[0].floors, 1);
  EXPECT_EQ(unit[0].bottom_ends, (std::vector<int>{1}));
  EXPECT_EQ(unit[0].top_ends, (std::vector<int>{1}));

  const auto torus = enumerate_diagrams(make_rectangle(2, 2), 1);
  ASSERT_EQ(torus.size(), 1u);
  ASSERT_EQ(torus[0].elevators.size(), 2u);
  for (const auto& e : torus[0].elevators) EXPECT_EQ(e.weight, 1);
}

// The 2x2 square in genus 0: three diagrams, (mult, markings) =
// ([2]^2, 1), (1, 4), (1, 4).
TEST(FloorDiagrams, SquareHandCheck) {
  auto contributions = diagram_contributions(make_rectangle(2, 2), 0);
  ASSERT_EQ(contributions.size(), 3u);
  std::vector<std::pair<std::string, BigInt>> got;
  for (const auto& c : contributions) {
    EXPECT_EQ(c.diagram.genus(), 0);
    got.emplace_back(c.multiplicity.to_string(), c.markings);
  }
  std::sort(got.begin(), got.end());
  std::vector<std::pair<std::string, BigInt>> want = {
      {P("1").to_string(), 4}, {P("1").to_string(), 4}, {P("q^-1 + 2 + q").to_string(), 1}};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);

  for (const auto& c : contributions) {
    if (c.diagram.elevators[0].weight == 2) {
      EXPECT_EQ(c.diagram.bottom_ends, (std::vector<int>{2, 0}));
      EXPECT_EQ(c.diagram.top_ends, (std::vector<int>{0, 2}));
      EXPECT_EQ(linear_extension_count(c.diagram), 4);
      EXPECT_EQ(automorphism_count(c.diagram), 4);
    }
    if (c.diagram.bottom_ends == std::vector<int>{1, 1}) {
      EXPECT_EQ(c.diagram.top_ends, (std::vector<int>{0, 2}));
      EXPECT_EQ(linear_extension_count(c.diagram), 8);
      EXPECT_EQ(automorphism_count(c.diagram), 2);
    }
  }
}

TEST(FloorDiagrams, Multiplicity) {
  FloorDiagram d;
  d.floors = 2;
  d.elevators = {{1, 2, 1}};
  EXPECT_EQ(refined_multiplicity(d), P("1"));
  d.elevators = {{1, 2, 2}};
  EXPECT_EQ(refined_multiplicity(d), P("q + 2 + q^-1"));
  d.elevators = {{1, 2, 1}, {1, 2, 2}};
  EXPECT_EQ(refined_multiplicity(d), P("q + 2 + q^-1"));
  d.elevators = {{1, 2, 3}};
  EXPECT_EQ(refined_multiplicity(d), P("q^-2 + 2q^-1 + 3 + 2q + q^2"));
}

TEST(FloorDiagrams, ChainHasOneMarking) {
  for (int b = 1; b <= 6; ++b)
    for (const auto& c : diagram_contributions(make_rectangle(1, b), 0)) {
      EXPECT_EQ(c.markings, 1);
      EXPECT_EQ(c.multiplicity, P("1"));
    }
  for (const auto& d : enumerate_diagrams(make_rectangle(2, 3), 0))
    EXPECT_THROW(marking_count(d, d.element_count() + 1), std::invalid_argument);
}

TEST(FloorDiagrams, RefinedInvariants) {
  EXPECT_EQ(refined_invariant(make_rectangle(2, 2), 0), P("q^-1 + 10 + q"));
  EXPECT_EQ(refined_invariant(make_sigma2(2, 0), 1), P("1"));
  EXPECT_EQ(refined_invariant(make_rectangle(3, 3), 2), P("6q^-2 + 64q^-1 + 256 + 64q + 6q^2"));
  for (int b = 0; b <= 6; ++b) EXPECT_EQ(refined_invariant(make_sigma2(1, b), 0), P("1"));
  EXPECT_TRUE(refined_invariant(NewtonPolygon{Degenerate{}}, 0).is_zero());
  // Above the maximal genus there are no curves.
  EXPECT_TRUE(refined_invariant(make_rectangle(2, 2), 2).is_zero());
}

// --- independent oracles ---------------------------------------------------

// Kontsevich's recursion for rational plane curves.
std::vector<BigInt> kontsevich(int dmax) {
  std::vector<BigInt> n(dmax + 1, 0);
  n[1] = 1;
  auto binom = [](int a, int b) {
    BigInt r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int d = 2; d <= dmax; ++d)
    for (int a = 1; a < d; ++a) {
      const int b = d - a;
      n[d] += n[a] * n[b] * a * a * b *
              (b * binom(3 * d - 4, 3 * a - 2) - a * binom(3 * d - 4, 3 * a - 1));
    }
  return n;
}

TEST(FloorDiagramOracle, KontsevichNumbers) {
  const auto n = kontsevich(5);
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(evaluate(refined_invariant(make_p2(d), 0), 1), n[d]) << d;
}

// Severi degrees with one and two nodes: 3(d-1)^2 and
// (3/2)(d-1)(d-2)(3d^2-3d-11).
TEST(FloorDiagramOracle, NodalSeveriDegrees) {
  for (int d = 3; d <= 5; ++d) {
    const int top = (d - 1) * (d - 2) / 2;
    EXPECT_EQ(evaluate(refined_invariant(make_p2(d), top), 1), 1);
    EXPECT_EQ(evaluate(refined_invariant(make_p2(d), top - 1), 1), 3 * (d - 1) * (d - 1));
    if (top >= 2)
      EXPECT_EQ(evaluate(refined_invariant(make_p2(d), top - 2), 1),
                3 * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11) / 2);
  }
}

// Welschinger numbers of the plane with only real points: 1, 1, 8, 240.
TEST(FloorDiagramOracle, WelschingerAtMinusOne) {
  const int w[] = {0, 1, 1, 8, 240};
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(evaluate(refined_invariant(make_p2(d), 0), -1), w[d]);
}

// Marking count * automorphisms = linear extensions, counted here by brute
// force over all orders of the labelled elements.
BigInt brute_linear_extensions(const FloorDiagram& d) {
  // element ids: floors 0..h-1, then elevators, then bottom ends, then top ends;
  // each element gets a (min floor, max floor) constraint.
  struct Item {
    int after = -1;   // must come after this floor
    int before = -1;  // must come before this floor
  };
  std::vector<Item> items(d.floors);
  for (int f = 1; f < d.floors; ++f) items[f].after = f - 1;
  for (const auto& e : d.elevators) items.push_back({e.from - 1, e.to - 1});
  for (int f = 0; f < d.floors; ++f)
    for (int i = 0; i < d.bottom_ends[f]; ++i) items.push_back({-1, f});
  for (int f = 0; f < d.floors; ++f)
    for (int i = 0; i < d.top_ends[f]; ++i) items.push_back({f, -1});
  std::vector<int> perm(items.size());
  std::iota(perm.begin(), perm.end(), 0);
  BigInt count = 0;
  do {
    std::vector<int> pos(items.size());
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<int>(i);
    bool ok = true;
    for (std::size_t i = 0; i < items.size() && ok; ++i) {
      if (items[i].after >= 0 && pos[i] < pos[items[i].after]) ok = false;
      if (items[i].before >= 0 && pos[i] > pos[items[i].before]) ok = false;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

TEST(FloorDiagramOracle, LinearExtensionsBruteForce) {
  for (const auto& poly : {make_rectangle(2, 2), make_p2(3), make_sigma2(2, 0), make_rectangle(1, 3)})
    for (int g = 0; g <= 1; ++g)
      for (const auto& d : enumerate_diagrams(poly, g)) {
        if (d.element_count() > 9) continue;
        EXPECT_EQ(linear_extension_count(d), brute_linear_extensions(d));
        EXPECT_EQ(marking_count(d) * automorphism_count(d), linear_extension_count(d));
      }
}

// --- properties ---------------------------------------------------------------

TEST(FloorDiagramProperty, PalindromicNonnegativeDeterministic) {
  for (int a = 1; a <= 3; ++a)
    for (int b = a; b <= 4; ++b)
      for (int g = 0; g <= (a - 1) * (b - 1); ++g) {
        const auto v = refined_invariant(make_rectangle(a, b), g);
        EXPECT_TRUE(v.is_palindromic());
        EXPECT_TRUE(v.has_nonnegative_coefficients());
        EXPECT_TRUE(v.has_integer_exponents());
        EXPECT_EQ(enumerate_diagrams(make_rectangle(a, b), g),
                  enumerate_diagrams(make_rectangle(a, b), g));
      }
}

TEST(FloorDiagramProperty, EveryDiagramSatisfiesFlow) {
  for (const auto& poly : {make_rectangle(3, 3), make_sigma2(2, 2), make_p2(4)}) {
    const auto profile = floor_profile(poly);
    for (int g = 0; g <= 2; ++g)
      for (const auto& d : enumerate_diagrams(poly, g)) {
        EXPECT_EQ(d.genus(), g);
        for (int k = 1; k <= d.floors; ++k) {
          int flow = d.bottom_ends[k - 1] - d.top_ends[k - 1];
          for (const auto& e : d.elevators) {
            if (e.to == k) flow += e.weight;
            if (e.from == k) flow -= e.weight;
          }
          EXPECT_EQ(flow, d.divergence(k));
        }
        EXPECT_EQ(std::accumulate(d.bottom_ends.begin(), d.bottom_ends.end(), 0), profile.bottom_ends());
        EXPECT_EQ(std::accumulate(d.top_ends.begin(), d.top_ends.end(), 0), profile.top_ends());
      }
  }
}

TEST(FloorDiagramProperty, TransposeSymmetry) {
  for (int a = 1; a <= 3; ++a)
    for (int b = a + 1; b <= 4; ++b)
      for (int g = 0; g <= (a - 1) * (b - 1); ++g)
        EXPECT_EQ(refined_invariant(make_rectangle(a, b), g), refined_invariant(make_rectangle(b, a), g));
}

}  // namespace
}  // namespace refinv
