// Acceptance run: one PASS/FAIL line per criterion, with the failing
// instances listed underneath. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "refinv/cli.hpp"
#include "refinv/floordiag.hpp"
#include "refinv/fixtures.hpp"
#include "refinv/invariants.hpp"
#include "refinv/surgery.hpp"

using namespace refinv;

namespace {

struct Criterion {
  bool pass = true;
  std::vector<std::string> details;  // failures and informational notes

  void fail(const std::string& what) {
    pass = false;
    details.push_back("FAIL " + what);
  }
  void note(const std::string& what) { details.push_back("info " + what); }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

// Every invariant computed during the run, for the palindromic/nonnegative check.
std::vector<std::pair<std::string, LaurentPoly>> seen;

LaurentPoly record(std::string label, LaurentPoly p) {
  seen.emplace_back(std::move(label), p);
  return p;
}

std::string str(const LaurentPoly& p) { return p.to_string(); }

bool want_g_table(const AppendixFixture& f) {
  if (f.pairs != 0) return false;
  if (f.surface == Surface::kQuadric) return f.a == 1 || f.genus >= 1;
  return true;
}

Criterion g_tables(InvariantEngine& engine) {
  Criterion c;
  int checked = 0;
  for (const auto& f : appendix_fixtures()) {
    if (!want_g_table(f)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const auto v = record(f.label(), engine.invariant(f.polygon(), f.genus));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++checked;
    c.expect(v == f.expected, f.label() + ": computed " + str(v) + ", appendix " + str(f.expected));
    c.expect(secs < 10, f.label() + " took " + std::to_string(secs) + " s");
  }
  c.note(std::to_string(checked) + " rows");
  return c;
}

Criterion s_tables(InvariantEngine& engine) {
  Criterion c;
  int checked = 0;
  for (const auto& f : appendix_fixtures()) {
    if (f.surface != Surface::kQuadric || f.genus != 0 || f.a == 1) continue;
    ++checked;
    const auto d = engine.descendant(f.polygon(), f.pairs);
    record(f.label(), d.value);
    const std::string flag = d.extrapolated ? " [extrapolated]" : "";
    c.expect(d.value == f.expected,
             f.label() + flag + ": computed " + str(d.value) + ", appendix " + str(f.expected));
    // The literal corner-cut model, for comparison only.
    if (f.pairs > 0) {
      try {
        const auto corner = engine.descendant(f.polygon(), f.pairs, BlowupModel::kCornerCut);
        if (corner.value != f.expected)
          c.note(f.label() + " corner-cut model gives " + str(corner.value));
      } catch (const RecursionError& e) {
        c.note(f.label() + " corner-cut model: " + e.what());
      }
    }
  }
  c.note(std::to_string(checked) + " rows");
  return c;
}

Criterion conjecture(InvariantEngine& engine) {
  Criterion c;
  const auto reports = run_conjecture_suite(engine, 4);
  for (const auto& r : reports) {
    std::ostringstream label;
    label << "(" << r.a << "," << r.b << ") g=" << r.genus;
    if (r.pairs) label << " s=" << *r.pairs;
    record("Sigma2" + label.str(), r.lhs);
    c.expect(r.pass, label.str() + ": Sigma2 " + str(r.lhs) + ", quadric side " + str(r.rhs) +
                         (r.note.empty() ? "" : " (" + r.note + ")"));
  }
  c.note(std::to_string(reports.size()) + " instances");
  return c;
}

Criterion hand_check() {
  Criterion c;
  const auto contributions = diagram_contributions(make_rectangle(2, 2), 0);
  c.expect(contributions.size() == 3, "expected 3 diagrams, got " + std::to_string(contributions.size()));
  std::vector<std::pair<std::string, BigInt>> got, want = {
      {LaurentPoly::constant(1).to_string(), 4},
      {LaurentPoly::constant(1).to_string(), 4},
      {parse_laurent("q^-1 + 2 + q").to_string(), 1}};
  LaurentPoly total;
  for (const auto& d : contributions) {
    got.emplace_back(d.multiplicity.to_string(), d.markings);
    total = total + d.multiplicity * LaurentPoly::constant(d.markings);
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  c.expect(got == want, "(multiplicity, markings) pairs differ");
  c.expect(total == parse_laurent("q^-1 + 10 + q"), "sum " + str(total));
  return c;
}

Criterion identities() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  for (int m = 0; m <= 12; ++m)
    c.expect(check_u_inversion(m, 12).pass, "u-inversion m=" + std::to_string(m));
  for (int l = 0; l <= 12; ++l)
    for (int b = 0; b <= l; ++b)
      c.expect(check_mainproof_coeffs(l, b).pass,
               "main-proof l=" + std::to_string(l) + " b=" + std::to_string(b));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 1, "took " + std::to_string(secs) + " s");
  return c;
}

Criterion evaluations(InvariantEngine& engine) {
  Criterion c;
  const auto at1 = [&](const char* label, const NewtonPolygon& p, BigInt want) {
    const auto got = evaluate(record(label, engine.invariant(p, 0)), 1);
    c.expect(got == want, std::string(label) + " at q=1: " + got.str());
  };
  at1("P2 d=3", make_p2(3), 12);
  at1("rect 2x2", make_rectangle(2, 2), 12);
  at1("rect 3x3", make_rectangle(3, 3), 3510);
  if (auto f = find_fixture(Surface::kQuadric, 3, 3, 0, 0))
    c.expect(evaluate(*f, 1) == 3510, "appendix rect 3x3 row sums to " + evaluate(*f, 1).str());

  // W(d; s+1) = W(d; s) - 2 W(d - 2E; s), each side evaluated separately.
  int steps = 0;
  for (int d = 3; d <= 4; ++d) {
    const auto plane = make_p2(d);
    const auto cut = corner_cut(plane, {0, 0});
    for (int s = 0; pairs_admissible(plane, s + 1); ++s) {
      const BigInt lhs = evaluate(record("P2 s", engine.descendant(plane, s + 1).value), -1);
      const BigInt w = evaluate(engine.descendant(plane, s).value, -1);
      const BigInt w_cut = evaluate(record("P2 cut", engine.descendant(cut, s).value), -1);
      ++steps;
      c.expect(lhs == w - 2 * w_cut, "P2 d=" + std::to_string(d) + " s=" + std::to_string(s + 1) +
                                         ": " + lhs.str() + " vs " + w.str() + " - 2*" + w_cut.str());
    }
  }
  // Known Welschinger numbers of the plane as an outside reference.
  const std::vector<std::vector<int>> known = {{8, 6, 4, 2}, {240, 144, 80, 40, 16, 0}};
  for (int d = 3; d <= 4; ++d)
    for (int s = 0; s < static_cast<int>(known[d - 3].size()); ++s) {
      const BigInt w = evaluate(engine.descendant(make_p2(d), s).value, -1);
      c.expect(w == known[d - 3][s],
               "W(P2 d=" + std::to_string(d) + ", s=" + std::to_string(s) + ") = " + w.str());
    }
  c.note(std::to_string(steps) + " recursion steps at q=-1");
  return c;
}

Criterion properties(InvariantEngine& engine) {
  Criterion c;
  for (const auto& [label, p] : seen) {
    c.expect(p.is_palindromic(), label + " not palindromic: " + str(p));
    c.expect(p.has_nonnegative_coefficients(), label + " has negative coefficients: " + str(p));
  }
  c.note(std::to_string(seen.size()) + " invariants checked for palindromicity/positivity");

  int symmetric = 0;
  for (const auto& r : run_symmetry_suite(engine, 4)) {
    ++symmetric;
    c.expect(r.pass, "transpose " + std::to_string(r.a) + "x" + std::to_string(r.b) +
                         " g=" + std::to_string(r.genus) + " s=" + std::to_string(r.pairs));
  }
  c.note(std::to_string(symmetric) + " transpose pairs");

  // Corner-choice independence: the first cut may be taken at any admissible
  // corner, and the result must agree with the default model.
  int compared = 0, stuck = 0, spread = 0;
  for (const auto& f : appendix_fixtures()) {
    if (f.surface != Surface::kQuadric || f.genus != 0 || f.pairs == 0 || f.a == 1) continue;
    const auto rect = f.polygon();
    const auto corners = admissible_corners(rect);
    if (corners.size() < 2) continue;
    const auto reference = engine.descendant(rect, f.pairs).value;
    for (auto corner : corners) {
      try {
        const auto v = engine.descendant_via_corner(rect, f.pairs, corner).value;
        ++compared;
        c.expect(v == reference, f.label() + " first cut at (" + std::to_string(corner.x) + "," +
                                     std::to_string(corner.y) + ") gives " + str(v));
      } catch (const RecursionError&) {
        ++stuck;
      }
    }
    // Arbitrary cut orders at deeper levels are not a model of the blow-up;
    // report how far they spread.
    if (engine.corner_sweep(rect, f.pairs).size() > 1) ++spread;
  }
  c.note(std::to_string(compared) + " first-corner choices agree; " + std::to_string(stuck) +
         " stop with no admissible corner");
  c.note(std::to_string(spread) + " corpus entries where arbitrary deeper cut orders disagree");

  for (const auto& r : run_monotone_suite(engine)) {
    if (r.a == 2 && r.b == 2) continue;
    c.expect(r.pass, "monotone " + std::to_string(r.a) + "x" + std::to_string(r.b) +
                         " s=" + std::to_string(r.pairs) + (r.note.empty() ? "" : ": " + r.note));
  }

  for (int d = 3; d <= 4; ++d) {
    const int exponent = (d - 1) * (d - 2) / 2 - 1;
    for (int s = 0; pairs_admissible(make_p2(d), s); ++s) {
      const auto v = engine.descendant(make_p2(d), s).value;
      const BigInt got = v.coefficient(exponent);
      c.expect(got == 3 * d + 1 - 2 * s, "P2 d=" + std::to_string(d) + " s=" + std::to_string(s) +
                                             " coefficient of q^" + std::to_string(exponent) + " = " +
                                             got.str());
    }
  }
  return c;
}

Criterion substitution() {
  Criterion c;
  c.note("the symplectic surgery theorems are exercised through the identity, transform and "
         "property suites above, not by geometric computation");
  return c;
}

}  // namespace

int main() {
  InvariantEngine engine;
  struct Entry {
    const char* name;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {"1 appendix g-tables", [&] { return g_tables(engine); }},
      {"2 appendix s-tables", [&] { return s_tables(engine); }},
      {"3 quadric conjecture instances", [&] { return conjecture(engine); }},
      {"4 hand-check 2x2 genus 0", [] { return hand_check(); }},
      {"5 identity suites", [] { return identities(); }},
      {"6 evaluations", [&] { return evaluations(engine); }},
      {"7 property suites", [&] { return properties(engine); }},
      {"8 documented substitution", [] { return substitution(); }},
  };

  int failed = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.pass ? "PASS " : "FAIL ") << e.name << "  (" << secs << " s)\n";
    for (const auto& d : c.details) std::cout << "     " << d << "\n";
    failed += !c.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
