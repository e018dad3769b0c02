#pragma once

// Reference tables of refined invariants kept as data (data/appendix_fixtures.txt).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "refinv/laurent.hpp"
#include "refinv/polygon.hpp"

namespace refinv {

enum class Surface { kQuadric, kSigma2 };

std::string to_string(Surface s);

struct AppendixFixture {
  Surface surface = Surface::kQuadric;
  int a = 0;
  int b = 0;
  int genus = 0;
  int pairs = 0;
  LaurentPoly expected;
  int line = 0;  ///< line number in the data file

  /// Rectangle a x b for the quadric, trapezoid (0,0),(2a+b,0),(b,a),(0,a) for Sigma_2.
  HPolygon polygon() const;
  /// Short label such as "QH(2,4) g=0 s=3".
  std::string label() const;
  /// Sigma_2 rows with pairs are reference values, not recomputed.
  bool reference_only() const { return surface == Surface::kSigma2 && pairs > 0; }
};

/// Parses the fixture format; throws std::runtime_error with the line number
/// on malformed input.
std::vector<AppendixFixture> parse_fixtures(std::istream& in);
std::vector<AppendixFixture> load_fixtures(const std::filesystem::path& path);

/// $REFINV_DATA_DIR/appendix_fixtures.txt, else the source tree's data file.
std::filesystem::path default_fixture_path();

/// The default fixture set, loaded once.
const std::vector<AppendixFixture>& appendix_fixtures();

std::optional<LaurentPoly> find_fixture(Surface surface, int a, int b, int genus, int pairs);

}  // namespace refinv
