#include "refinv/floordiag.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace refinv {

int FloorDiagram::element_count() const {
  return floors + static_cast<int>(elevators.size()) +
         std::accumulate(bottom_ends.begin(), bottom_ends.end(), 0) +
         std::accumulate(top_ends.begin(), top_ends.end(), 0);
}

nlohmann::json to_json(const FloorDiagram& d) {
  nlohmann::json j;
  j["floors"] = d.floors;
  j["left_steps"] = d.left_steps;
  j["right_steps"] = d.right_steps;
  j["elevators"] = nlohmann::json::array();
  for (const auto& e : d.elevators) j["elevators"].push_back({e.from, e.to, e.weight});
  j["bottom_ends"] = d.bottom_ends;
  j["top_ends"] = d.top_ends;
  return j;
}

namespace {

class DiagramSearch {
 public:
  DiagramSearch(std::vector<int> left_steps, std::vector<int> right_steps, int bottom_total,
                int top_total, int genus)
      : h_(static_cast<int>(left_steps.size())),
        left_(std::move(left_steps)),
        right_(std::move(right_steps)),
        bottom_total_(bottom_total),
        top_total_(top_total),
        elevator_budget_(h_ - 1 + genus),
        incoming_(h_ + 2, 0),
        bottom_(h_, 0),
        top_(h_, 0) {}

  void run(std::vector<FloorDiagram>& out) {
    if (elevator_budget_ >= 0) visit_floor(1, 0, 0);
    for (auto& d : found_) out.push_back(std::move(d));
  }

 private:
  void visit_floor(int k, int used_bottom, int used_top) {
    if (k > h_) {
      if (used_bottom == bottom_total_ && used_top == top_total_ &&
          static_cast<int>(elevators_.size()) == elevator_budget_ && connected())
        record();
      return;
    }
    const int bottom_left = bottom_total_ - used_bottom;
    const int top_left = top_total_ - used_top;
    const int b_lo = k == h_ ? bottom_left : 0;
    const int t_lo = k == h_ ? top_left : 0;
    for (int b = b_lo; b <= bottom_left; ++b) {
      for (int t = t_lo; t <= top_left; ++t) {
        const int out = b + incoming_[k] - t - (left_[k - 1] - right_[k - 1]);
        if (out < 0) continue;
        if (k == h_ && out != 0) continue;
        bottom_[k - 1] = b;
        top_[k - 1] = t;
        choose_outgoing(k, out, used_bottom + b, used_top + t,
                        h_, out);
      }
    }
  }

  // Distributes `remaining` weight from floor k over elevators in
  // nonincreasing (target, weight) order, so each multiset is produced once.
  void choose_outgoing(int k, int remaining, int used_bottom, int used_top,
                       int max_target, int max_weight) {
    if (remaining == 0) {
      if (k < h_ && !cut_crossed(k)) return;
      visit_floor(k + 1, used_bottom, used_top);
      return;
    }
    if (static_cast<int>(elevators_.size()) >= elevator_budget_) return;
    for (int target = max_target; target > k; --target) {
      const int w_hi = target == max_target ? std::min(max_weight, remaining) : remaining;
      for (int w = w_hi; w >= 1; --w) {
        elevators_.push_back({k, target, w});
        incoming_[target] += w;
        choose_outgoing(k, remaining - w, used_bottom, used_top, target, w);
        incoming_[target] -= w;
        elevators_.pop_back();
      }
    }
  }

  bool cut_crossed(int k) const {
    for (const auto& e : elevators_)
      if (e.from <= k && e.to > k) return true;
    return false;
  }

  bool connected() const {
    std::vector<int> parent(h_ + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : elevators_) parent[find(e.from)] = find(e.to);
    for (int k = 2; k <= h_; ++k)
      if (find(k) != find(1)) return false;
    return true;
  }

  void record() {
    FloorDiagram d;
    d.floors = h_;
    d.left_steps = left_;
    d.right_steps = right_;
    d.elevators = elevators_;
    std::sort(d.elevators.begin(), d.elevators.end());
    d.bottom_ends = bottom_;
    d.top_ends = top_;
    found_.push_back(std::move(d));
  }

  int h_;
  std::vector<int> left_;
  std::vector<int> right_;
  int bottom_total_;
  int top_total_;
  int elevator_budget_;
  std::vector<int> incoming_;
  std::vector<int> bottom_;
  std::vector<int> top_;
  std::vector<Elevator> elevators_;
  std::vector<FloorDiagram> found_;
};

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Non-floor elements grouped by the floor interval they must sit in: after
// floor `lo` (0 = no lower floor) and before floor `hi` (h+1 = no upper floor).
struct ElementType {
  int lo;
  int hi;
  int count;
};

class LinearExtensionCounter {
 public:
  LinearExtensionCounter(int floors, std::vector<ElementType> types)
      : h_(floors), types_(std::move(types)) {}

  BigInt count() {
    std::vector<int> state(types_.size() + 1, 0);
    return visit(state);
  }

 private:
  // state[0] = floors placed, state[t+1] = elements of type t placed.
  BigInt visit(std::vector<int>& state) {
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    const int f = state[0];
    bool complete = f == h_;
    BigInt total = 0;
    bool next_floor_free = f < h_;
    for (std::size_t t = 0; t < types_.size(); ++t) {
      const int placed = state[t + 1];
      if (placed < types_[t].count) {
        complete = false;
        if (types_[t].hi == f + 1) next_floor_free = false;
        if (types_[t].lo <= f && f < types_[t].hi) {
          ++state[t + 1];
          total += (types_[t].count - placed) * visit(state);
          --state[t + 1];
        }
      }
    }
    if (next_floor_free) {
      ++state[0];
      total += visit(state);
      --state[0];
    }
    if (complete) total = 1;
    memo_.emplace(state, total);
    return total;
  }

  int h_;
  std::vector<ElementType> types_;
  std::map<std::vector<int>, BigInt> memo_;
};

}  // namespace

std::vector<FloorDiagram> enumerate_diagrams(const HPolygon& polygon, int genus) {
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  const FloorProfile fp = floor_profile(polygon);
  std::vector<FloorDiagram> out;
  std::vector<int> left = fp.left_steps;
  std::sort(left.begin(), left.end());
  do {
    std::vector<int> right = fp.right_steps;
    std::sort(right.begin(), right.end());
    do {
      DiagramSearch(left, right, fp.bottom_ends(), fp.top_ends(), genus).run(out);
    } while (std::next_permutation(right.begin(), right.end()));
  } while (std::next_permutation(left.begin(), left.end()));
  std::sort(out.begin(), out.end());
  return out;
}

LaurentPoly refined_multiplicity(const FloorDiagram& d) {
  LaurentPoly m = LaurentPoly::constant(1);
  for (const auto& e : d.elevators) {
    if (e.weight == 1) continue;
    const LaurentPoly qi = quantum_integer(e.weight);
    m *= qi * qi;
  }
  return m;
}

BigInt linear_extension_count(const FloorDiagram& d) {
  std::map<std::pair<int, int>, int> by_interval;
  for (const auto& e : d.elevators) ++by_interval[{e.from, e.to}];
  for (int k = 1; k <= d.floors; ++k) {
    if (d.bottom_ends[k - 1] > 0) by_interval[{0, k}] += d.bottom_ends[k - 1];
    if (d.top_ends[k - 1] > 0) by_interval[{k, d.floors + 1}] += d.top_ends[k - 1];
  }
  std::vector<ElementType> types;
  for (const auto& [interval, n] : by_interval) types.push_back({interval.first, interval.second, n});
  return LinearExtensionCounter(d.floors, std::move(types)).count();
}

BigInt automorphism_count(const FloorDiagram& d) {
  BigInt aut = 1;
  std::map<Elevator, int> parallel;
  for (const auto& e : d.elevators) ++parallel[e];
  for (const auto& [e, n] : parallel) aut *= factorial(n);
  for (int n : d.bottom_ends) aut *= factorial(n);
  for (int n : d.top_ends) aut *= factorial(n);
  return aut;
}

BigInt marking_count(const FloorDiagram& d, int expected_elements) {
  if (expected_elements >= 0 && d.element_count() != expected_elements)
    throw std::invalid_argument("marking_count: diagram has " + std::to_string(d.element_count()) +
                                " elements, expected " + std::to_string(expected_elements));
  const BigInt extensions = linear_extension_count(d);
  const BigInt aut = automorphism_count(d);
  if (extensions % aut != 0)
    throw std::logic_error("marking_count: automorphisms do not divide linear extensions");
  return extensions / aut;
}

std::vector<DiagramContribution> diagram_contributions(const HPolygon& polygon, int genus) {
  const int points = point_count(polygon, genus);
  std::vector<DiagramContribution> out;
  for (auto& d : enumerate_diagrams(polygon, genus)) {
    DiagramContribution c{std::move(d), {}, {}};
    c.multiplicity = refined_multiplicity(c.diagram);
    c.markings = marking_count(c.diagram, points);
    out.push_back(std::move(c));
  }
  return out;
}

LaurentPoly refined_invariant(const NewtonPolygon& polygon, int genus) {
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  if (is_degenerate(polygon)) return {};
  LaurentPoly total;
  for (const auto& c : diagram_contributions(std::get<HPolygon>(polygon), genus))
    total += c.multiplicity * c.markings;
  return total;
}

}  // namespace refinv
