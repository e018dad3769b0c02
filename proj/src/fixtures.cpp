#include "refinv/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace refinv {

std::string to_string(Surface s) { return s == Surface::kQuadric ? "QH" : "S2"; }

HPolygon AppendixFixture::polygon() const {
  return surface == Surface::kQuadric ? make_rectangle(a, b) : make_sigma2(a, b);
}

std::string AppendixFixture::label() const {
  std::string s = to_string(surface) + "(" + std::to_string(a) + "," + std::to_string(b) +
                  ") g=" + std::to_string(genus);
  if (genus == 0) s += " s=" + std::to_string(pairs);
  return s;
}

std::vector<AppendixFixture> parse_fixtures(std::istream& in) {
  static const std::regex record(
      R"(^\s*(QH|S2)\s+(\d+)\s+(\d+)\s+g=(\d+)(?:\s+s=(\d+))?\s*\|\s*(.+?)\s*$)");
  std::vector<AppendixFixture> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::smatch m;
    if (!std::regex_match(line, m, record))
      throw std::runtime_error("fixture line " + std::to_string(lineno) + ": cannot parse \"" +
                               line + "\"");
    AppendixFixture f;
    f.surface = m[1] == "QH" ? Surface::kQuadric : Surface::kSigma2;
    f.a = std::stoi(m[2]);
    f.b = std::stoi(m[3]);
    f.genus = std::stoi(m[4]);
    f.pairs = m[5].matched ? std::stoi(m[5]) : 0;
    if (f.pairs > 0 && f.genus != 0)
      throw std::runtime_error("fixture line " + std::to_string(lineno) +
                               ": pairs of points need genus 0");
    try {
      f.expected = parse_laurent(m[6].str());
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("fixture line " + std::to_string(lineno) + ": " + e.what());
    }
    f.line = lineno;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<AppendixFixture> load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file " + path.string());
  return parse_fixtures(in);
}

std::filesystem::path default_fixture_path() {
  if (const char* dir = std::getenv("REFINV_DATA_DIR"); dir != nullptr && *dir != '\0')
    return std::filesystem::path(dir) / "appendix_fixtures.txt";
  return std::filesystem::path(REFINV_DATA_DIR) / "appendix_fixtures.txt";
}

const std::vector<AppendixFixture>& appendix_fixtures() {
  static const std::vector<AppendixFixture> fixtures = load_fixtures(default_fixture_path());
  return fixtures;
}

std::optional<LaurentPoly> find_fixture(Surface surface, int a, int b, int genus, int pairs) {
  for (const auto& f : appendix_fixtures())
    if (f.surface == surface && f.a == a && f.b == b && f.genus == genus && f.pairs == pairs)
      return f.expected;
  return std::nullopt;
}

}  // namespace refinv
