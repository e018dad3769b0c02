#pragma once

// Invariant tables and the genus-0 descendant invariants G(d,0;s), s pairs of
// conjugate points, obtained from the blow-up recursion
//
//   G_X(d,0;s+1) = G_X(d,0;s) - 2 G_X~(d-2E,0;s),   X~ = X blown up at a point.
//
// Two models of X~ are provided. The corner-cut model replaces (X~, d-2E) by
// the toric surface of the polygon with one corner cut at depth 2, i.e. it
// blows up a torus-fixed point. The generic model works with classes
// e L - sum m_i E_i on the plane blown up at points in general position and
// reduces them by quadratic (Cremona) transformations until they have a
// toric polygon; it covers rectangles and plane triangles with cut corners.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "refinv/floordiag.hpp"
#include "refinv/laurent.hpp"
#include "refinv/polygon.hpp"

namespace refinv {

enum class BlowupModel {
  kAuto,       ///< generic when the polygon is supported, corner cut otherwise
  kCornerCut,
  kGeneric,
};

std::string to_string(BlowupModel m);
BlowupModel parse_blowup_model(std::string_view name);

/// Raised when the recursion cannot proceed: no admissible corner, or a
/// class without a toric model in the generic model.
class RecursionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvariantKey {
  NewtonPolygon polygon;  ///< canonical form
  int genus = 0;
  int pairs = 0;
  BlowupModel model = BlowupModel::kAuto;  ///< kAuto whenever pairs == 0

  friend auto operator<=>(const InvariantKey&, const InvariantKey&) = default;
};

/// Canonicalizes the polygon and validates genus/pairs.
InvariantKey make_key(const NewtonPolygon& polygon, int genus, int pairs,
                      BlowupModel model = BlowupModel::kAuto);

struct TableEntry {
  LaurentPoly value;
  bool extrapolated = false;
};

/// Thread-safe table of computed invariants, optionally backed by an
/// append-only JSON-lines cache file.
///
/// Entries are immutable: inserting a different value for an existing key
/// throws std::logic_error. In verify mode, entries read from the cache file
/// are not returned by find() until they have been recomputed and matched.
class InvariantTable {
 public:
  static constexpr const char* kEngineVersion = "refinv-1";

  InvariantTable() = default;
  explicit InvariantTable(std::filesystem::path cache_file, bool verify = false);

  std::optional<TableEntry> find(const InvariantKey& key) const;
  void insert(const InvariantKey& key, const TableEntry& entry);

  std::size_t size() const;
  std::size_t loaded_from_cache() const { return loaded_; }
  std::size_t verified_from_cache() const;
  /// Keys of the records read from the cache file, in key order.
  std::vector<InvariantKey> cached_keys() const;
  const std::optional<std::filesystem::path>& cache_file() const { return cache_file_; }

  /// Cache path from $REFINV_CACHE, if set and nonempty.
  static std::optional<std::filesystem::path> cache_path_from_env();

 private:
  struct Slot {
    TableEntry entry;
    bool from_cache = false;
    bool verified = true;
  };
  void load();
  void append(const InvariantKey& key, const TableEntry& entry);

  mutable std::shared_mutex mutex_;
  std::map<InvariantKey, Slot> slots_;
  std::optional<std::filesystem::path> cache_file_;
  bool verify_ = false;
  std::size_t loaded_ = 0;
  std::mutex file_mutex_;
};

struct Descendant {
  LaurentPoly value;
  /// Some recursion step was applied outside the range where the blow-up
  /// formula is established (the quadric, or the plane blown up in at most
  /// two points).
  bool extrapolated = false;
  BlowupModel model = BlowupModel::kAuto;  ///< model actually used
};

/// A class e L - sum m_i E_i on the plane blown up at points in general
/// position.
struct PlaneClass {
  std::int64_t degree = 0;
  std::vector<std::int64_t> mult;

  friend auto operator<=>(const PlaneClass&, const PlaneClass&) = default;
};

std::string to_string(const PlaneClass& c);

/// Cremona-reduced form: multiplicities sorted decreasingly with zeros
/// dropped, and m1 + m2 + m3 <= e. Returns nullopt when the class carries no
/// irreducible curve of positive degree (a multiplicity is negative or the
/// degree is not positive).
std::optional<PlaneClass> reduce(PlaneClass c);

/// The class of a polygon that is a plane triangle with corners cut off in
/// the standard orientation (rectangles included), up to mirror symmetry.
std::optional<PlaneClass> plane_class_of(const HPolygon& polygon);

/// Toric polygon of a reduced class with at most three points, or nullopt.
/// Degenerate when the class has no curves.
std::optional<NewtonPolygon> polygon_of(const PlaneClass& reduced);

/// Computes and memoizes invariants on a shared table. All members are safe
/// to call concurrently.
class InvariantEngine {
 public:
  explicit InvariantEngine(std::shared_ptr<InvariantTable> table = std::make_shared<InvariantTable>());

  const std::shared_ptr<InvariantTable>& table() const { return table_; }

  /// G(polygon, genus) by floor diagrams. Zero for Degenerate.
  LaurentPoly invariant(const NewtonPolygon& polygon, int genus);

  /// G(polygon, 0; pairs). Throws std::invalid_argument when 2*pairs exceeds
  /// the point count, RecursionError when the chosen model gets stuck.
  /// When `trace` is given, one line per recursion node is appended.
  Descendant descendant(const NewtonPolygon& polygon, int pairs,
                        BlowupModel model = BlowupModel::kAuto,
                        std::vector<std::string>* trace = nullptr);

  /// Corner-cut recursion whose first cut is at `corner`; deeper levels use
  /// the default corner.
  Descendant descendant_via_corner(const HPolygon& polygon, int pairs, LatticePoint corner);

  /// Every value the corner-cut recursion can produce over all sequences of
  /// admissible corner choices. Paths that get stuck are skipped; the result
  /// is empty if all do.
  std::vector<LaurentPoly> corner_sweep(const NewtonPolygon& polygon, int pairs);

  /// The model kAuto resolves to for this polygon.
  static BlowupModel resolve(const NewtonPolygon& polygon, BlowupModel model);

 private:
  Descendant corner_cut_rec(const NewtonPolygon& polygon, int pairs,
                            std::optional<LatticePoint> first_corner,
                            std::vector<std::string>* trace, int depth);
  // `surface_points`: points blown up on the plane so far (the quadric
  // counts as one), which decides whether a recursion step is extrapolated.
  Descendant generic_rec(const PlaneClass& c, int surface_points, int pairs,
                         std::vector<std::string>* trace, int depth);
  LaurentPoly class_invariant(const PlaneClass& reduced);
  const std::vector<LaurentPoly>& sweep_rec(const HPolygon& canonical, int pairs);

  std::shared_ptr<InvariantTable> table_;
  std::mutex generic_mutex_;
  std::map<std::tuple<PlaneClass, int, int>, Descendant> generic_memo_;
  std::mutex sweep_mutex_;
  std::map<std::pair<HPolygon, int>, std::vector<LaurentPoly>> sweep_memo_;
};

/// Point count check for the recursion: 2*pairs <= point_count(polygon, 0).
bool pairs_admissible(const NewtonPolygon& polygon, int pairs);

/// Whether the blow-up formula is established for the toric surface of the
/// polygon: smooth, no edge of self-intersection <= -2, at most five edges.
bool in_recursion_range(const HPolygon& polygon);

/// Self-intersections of the toric divisors, one per edge (edge i runs from
/// vertex i to vertex i+1). Only meaningful at smooth vertices.
std::vector<std::int64_t> edge_self_intersections(const HPolygon& polygon);
bool is_smooth(const HPolygon& polygon);

// Convenience wrappers over a process-wide engine.
InvariantEngine& default_engine();
Descendant refined_descendant(const NewtonPolygon& polygon, int pairs,
                              BlowupModel model = BlowupModel::kAuto);
BigInt gw_value(const NewtonPolygon& polygon, int genus);
BigInt welschinger_value(const NewtonPolygon& polygon, int pairs,
                         BlowupModel model = BlowupModel::kAuto);

}  // namespace refinv
