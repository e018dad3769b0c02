#pragma once

// Floor diagrams of h-transverse polygons and the refined (quantum) count of
// tropical curves built from them.

#include <compare>
#include <vector>

#include "refinv/laurent.hpp"
#include "refinv/polygon.hpp"

namespace refinv {

/// A bounded elevator from floor `from` up to floor `to` (1-based, from < to).
struct Elevator {
  int from = 0;
  int to = 0;
  int weight = 1;

  friend auto operator<=>(const Elevator&, const Elevator&) = default;
};

/// Floors F_1 < ... < F_h (bottom to top), weighted bounded elevators, and
/// unit-weight unbounded ends counted per floor.
///
/// Each floor carries the slopes of its left and right ends, drawn from the
/// polygon's left and right boundary steps in any order; the floor's
/// divergence is left_step - right_step. Elevators are kept sorted, so two
/// diagrams are isomorphic (fixing the floor order) exactly when they compare
/// equal.
struct FloorDiagram {
  int floors = 0;
  std::vector<int> left_steps;
  std::vector<int> right_steps;
  std::vector<Elevator> elevators;
  std::vector<int> bottom_ends;  ///< bottom_ends[k-1]: ends entering F_k from below
  std::vector<int> top_ends;     ///< top_ends[k-1]: ends leaving F_k upward

  int genus() const { return static_cast<int>(elevators.size()) - floors + 1; }
  int divergence(int k) const { return left_steps[k - 1] - right_steps[k - 1]; }
  int element_count() const;

  friend auto operator<=>(const FloorDiagram&, const FloorDiagram&) = default;
};

nlohmann::json to_json(const FloorDiagram& d);

/// All connected diagrams of genus `genus` for the polygon: every
/// arrangement of the boundary steps over the floors, every placement of
/// ends, and every elevator multiset satisfying the flow condition at each
/// floor. Deterministic (lexicographic) order.
std::vector<FloorDiagram> enumerate_diagrams(const HPolygon& polygon, int genus);

/// Product of [w]_q^2 over bounded elevators.
LaurentPoly refined_multiplicity(const FloorDiagram& d);

/// Number of linear extensions of the marking poset (floors in order, each
/// elevator strictly between its floors, bottom ends before and top ends
/// after their floor) divided by the number of automorphisms permuting
/// parallel equal-weight elevators and same-floor ends.
///
/// Throws std::invalid_argument if `expected_elements` is given and differs
/// from the diagram's element count.
BigInt marking_count(const FloorDiagram& d, int expected_elements = -1);

/// Automorphism count used by marking_count.
BigInt automorphism_count(const FloorDiagram& d);

/// Linear extensions of the marking poset, labelled elements distinct.
BigInt linear_extension_count(const FloorDiagram& d);

struct DiagramContribution {
  FloorDiagram diagram;
  LaurentPoly multiplicity;
  BigInt markings;
};

std::vector<DiagramContribution> diagram_contributions(const HPolygon& polygon, int genus);

/// G(polygon, genus) = sum over diagrams of multiplicity * marking count.
/// Zero for Degenerate input.
LaurentPoly refined_invariant(const NewtonPolygon& polygon, int genus);

}  // namespace refinv
