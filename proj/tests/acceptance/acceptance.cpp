// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any
// failure. Each criterion has a pinned wall-clock budget.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "meandric/errors.hpp"
#include "meandric/golden.hpp"
#include "meandric/irreducible.hpp"
#include "meandric/meander.hpp"
#include "meandric/pipeline.hpp"

using namespace meandric;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (seconds > budget_seconds) {
    outcome.passed = false;
    outcome.detail += " [over budget]";
  }
  if (!outcome.passed) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (outcome.passed ? "PASS" : "FAIL") << ' ' << id << ' ' << title
       << " (" << seconds << "s / " << budget_seconds << "s budget)";
  if (!outcome.detail.empty()) line << ": " << outcome.detail;
  std::cout << line.str() << std::endl;
}

IntPolynomial golden_poly(int r) {
  const auto& c = golden::polynomials().at(r);
  return IntPolynomial(std::vector<mpz_class>(c.begin(), c.end()));
}

Outcome compare_polys(const PipelineResult& result, int from, int to) {
  std::ostringstream detail;
  bool ok = true;
  for (int r = from; r <= to; ++r) {
    const bool same = result.polys.count(r) && result.polys.at(r) == golden_poly(r);
    ok = ok && same;
    detail << "P_" << r << (same ? " exact" : " MISMATCH") << (r < to ? ", " : "");
  }
  return {ok, detail.str()};
}

}  // namespace

int main() {
  std::random_device rd;
  const fs::path cache = fs::temp_directory_path() /
                         ("meandric-acceptance-" + std::to_string(rd()));
  fs::create_directories(cache);
  TableOptions options;
  options.cache_dir = cache;
  options.workers = 0;  // all available cores

  PipelineResult r5, r6;

  criterion(1, "golden polynomials P_1..P_5", 300, [&] {
    r5 = run_pipeline(5, 0, options);
    return compare_polys(r5, 1, 5);
  });

  IrreducibleTable table6;
  criterion(2, "extended golden polynomial P_6", 3600, [&] {
    table6 = build_irreducible_table(6, options);
    r6 = run_pipeline(table6, 6);
    return compare_polys(r6, 6, 6);
  });

  criterion(3, "asymptotic constants c_1..c_6", 1, [&] {
    std::ostringstream detail;
    bool ok = true;
    for (int r = 1; r <= 6; ++r) {
      const auto* polys = r <= 5 ? &r5.polys : &r6.polys;
      if (!polys->count(r)) return Outcome{false, "P_" + std::to_string(r) + " missing"};
      const auto c = asymptotic_constant(r, polys->at(r));
      const bool same = c.defined && c.exact == mpq_class(golden::constants().at(r));
      ok = ok && same;
      detail << (c.defined ? c.exact.get_str() : "undefined") << (r < 6 ? ", " : "");
    }
    return Outcome{ok, detail.str()};
  });

  criterion(4, "I-series head through Y^2", 1, [&] {
    TableOptions small;
    small.max_n = 4;
    const auto table = build_irreducible_table(2, small);
    const auto s = series_from_table(table, {4, 2, 2, 2});
    // X + X^2 Y A + X^2 Y B + X^3 Y^2 A^2 + 6 X^3 Y^2 A B + X^3 Y^2 B^2
    //   + 2 X^4 Y^2 A B + 2 X^4 Y^2 A^2 B^2
    TruncSeries expected({4, 2, 2, 2});
    expected[1].add_term(0, 0, 0, 1);
    expected[2].add_term(1, 1, 0, 1);
    expected[2].add_term(1, 0, 1, 1);
    expected[3].add_term(2, 2, 0, 1);
    expected[3].add_term(2, 1, 1, 6);
    expected[3].add_term(2, 0, 2, 1);
    expected[4].add_term(2, 1, 1, 2);
    expected[4].add_term(2, 2, 2, 2);
    return Outcome{s == expected, s == expected ? "8 terms, coefficient for coefficient" : "differs"};
  });

  criterion(5, "brute-force oracle equivalence", 180, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = verify_against_brute(5, 0);
    const double brute_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // n = 7, then n = 8 for a sweep of about two million pairs.
    std::uint64_t pairs = 0, mismatches = 0;
    for (int n : {7, 8}) {
      const auto all = enumerate_nc(n);
      for (const auto& a : all)
        for (const auto& b : all) {
          ++pairs;
          if (loop_count_algebraic(a, b) != loop_count_geometric(a, b)) ++mismatches;
        }
    }
    const double dual_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() - brute_s;
    std::ostringstream detail;
    detail << report.checks.size() << " I/K/M/F checks for n<=5 "
           << (report.passed() ? "exact" : "MISMATCH") << " in " << brute_s
           << "s (<=60s); " << pairs << " pairs at n=7 and n=8, " << mismatches
           << " algebraic/geometric disagreements in " << dual_s << "s (<=120s)";
    const bool ok = report.passed() && mismatches == 0 &&
                    pairs == catalan_number(7) * catalan_number(7) +
                                 catalan_number(8) * catalan_number(8) &&
                    brute_s <= 60 && dual_s <= 120;
    return Outcome{ok, detail.str()};
  });

  criterion(6, "structural propositions asserted in every run", 1, [&] {
    const char* required[] = {"K: f_{0,0,0} = X/(1-X)", "M: g_{0,0,0} = Catalan",
                              "K: rational form of f_{r,a,b}"};
    std::size_t checks = 0;
    bool ok = r6.diagnostics.passed() && r5.diagnostics.passed();
    for (const auto* result : {&r5, &r6}) {
      for (const char* name : required) {
        bool seen = false;
        for (const auto& c : result->diagnostics.checks) seen = seen || c.name == name;
        ok = ok && seen;
      }
      for (int r = 1; r <= result->r_max; ++r) {
        bool tail = false;
        for (const auto& c : result->diagnostics.checks) {
          tail = tail || c.name == "r=" + std::to_string(r) + ": w-form valuation and tail";
        }
        ok = ok && tail;
      }
      checks += result->diagnostics.checks.size();
    }
    return Outcome{ok, std::to_string(checks) + " stage checks passed across the r<=5 and r<=6 runs"};
  });

  criterion(7, "I_{n,6,a,b} empty for (8,10), (9,9), (10,8), (10,10)", 1, [&] {
    bool ok = table6.max_n() == 12 && table6.max_r() == 6;
    std::uint64_t r6_total = 0;
    for (int n = 1; n <= 12; ++n) {
      for (auto [a, b] : {std::pair{8, 10}, {9, 9}, {10, 8}, {10, 10}}) {
        ok = ok && table6.count(n, 6, a, b) == 0;
      }
      for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b) r6_total += table6.count(n, 6, a, b);
    }
    // Non-vacuous: the r = 6 layer was actually enumerated.
    ok = ok && r6_total > 0;
    return Outcome{ok, "n<=12 covered, " + std::to_string(r6_total) + " systems with r=6"};
  });

  criterion(8, "Lando-Zvonkin identity to order 8", 60, [&] {
    const auto report = lando_zvonkin_check(8, options);
    return Outcome{report.passed() && report.checks.size() == 8,
                   report.checks.empty() ? "" : report.checks.back().detail};
  });

  criterion(9, "large-n asymptotics via exact constants and trend", 1, [&] {
    // Limits are out of reach at desk scale; what is checked is that the
    // ratio to the leading term moves toward 1 for r <= 3.
    bool ok = true;
    std::string last;
    for (const auto& note : r6.diagnostics.notes) {
      if (note.find("approaching 1 monotonically") != std::string::npos) {
        last = note;
      } else if (note.find("not monotone") != std::string::npos) {
        ok = false;
        last = note;
      }
    }
    return Outcome{ok && !last.empty(), last};
  });

  fs::remove_all(cache);
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
