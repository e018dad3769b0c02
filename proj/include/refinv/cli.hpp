#pragma once

// Command-line front end. run_cli() is the whole program; it is a library
// function so tests can drive it in-process.
//
// Exit codes: 0 success / all checks pass, 1 a check or fixture failed,
// 2 usage error (bad flags, invalid polygon, inadmissible s, or a recursion
// that cannot proceed).

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "refinv/fixtures.hpp"
#include "refinv/invariants.hpp"
#include "refinv/surgery.hpp"

namespace refinv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct FixtureOutcome {
  enum class Status { kMatch, kMismatch, kError, kReference };

  AppendixFixture fixture;
  Status status = Status::kError;
  LaurentPoly computed;
  bool extrapolated = false;
  BlowupModel model = BlowupModel::kAuto;
  std::string message;
};

std::string to_string(FixtureOutcome::Status s);

/// Recomputes every fixture with genus >= min_genus. Sigma_2 rows with pairs
/// are reported as reference values. Results come back in fixture order
/// whatever the number of worker threads.
std::vector<FixtureOutcome> run_appendix_suite(InvariantEngine& engine,
                                               const std::vector<AppendixFixture>& fixtures,
                                               BlowupModel model = BlowupModel::kAuto,
                                               int min_genus = 0, int jobs = 1);

/// Match/mismatch entries only; reference rows never fail the suite.
bool suite_passes(const std::vector<FixtureOutcome>& outcomes);

nlohmann::json to_json(const FixtureOutcome& o);

/// Conjecture instances relating Sigma_2 trapezoids to quadric rectangles:
/// (1,b) for b <= 6; (2,0), (2,2), (3,0) in every tabulated genus and, in
/// genus 0, every tabulated s (Sigma_2 side from the fixtures).
std::vector<QuadricReport> run_conjecture_suite(InvariantEngine& engine, int jobs = 1);

struct SymmetryReport {
  int a = 0;
  int b = 0;
  int genus = 0;
  int pairs = 0;
  LaurentPoly lhs;  ///< rectangle a x b
  LaurentPoly rhs;  ///< rectangle b x a
  bool pass = false;
  std::string note;
};
/// G(rect a x b) = G(rect b x a) for 1 <= a < b, a*b <= 8, every genus and,
/// in genus 0, every admissible s.
std::vector<SymmetryReport> run_symmetry_suite(InvariantEngine& engine, int jobs = 1);
nlohmann::json to_json(const SymmetryReport& r);

struct MonotoneReport {
  int a = 0;
  int b = 0;
  int pairs = 0;             ///< compares s = pairs with s = pairs + 1
  std::vector<int> increasing;  ///< exponents whose coefficient grows
  std::vector<int> negative;    ///< exponents with a negative coefficient at s + 1
  bool pass = false;
  std::string note;
};
/// Coefficientwise G(d,0;s) >= G(d,0;s+1) >= 0 on the rectangles 2x2, 2x4, 3x3.
std::vector<MonotoneReport> run_monotone_suite(InvariantEngine& engine);
nlohmann::json to_json(const MonotoneReport& r);

}  // namespace refinv
