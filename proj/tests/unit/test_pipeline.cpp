#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "meandric/errors.hpp"
#include "meandric/golden.hpp"
#include "meandric/pipeline.hpp"

using namespace meandric;

namespace {

IntPolynomial golden_poly(int r) {
  const auto& c = golden::polynomials().at(r);
  return IntPolynomial(std::vector<mpz_class>(c.begin(), c.end()));
}

}  // namespace

TEST(Pipeline, SmallDefectsMatchReferencePolynomials) {
  const auto result = run_pipeline(3);
  EXPECT_TRUE(result.diagnostics.passed());
  EXPECT_EQ(result.bounds, (SeriesBounds{16, 3, 4, 4}));
  for (int r = 1; r <= 3; ++r) EXPECT_EQ(result.polys.at(r), golden_poly(r));
  EXPECT_EQ(result.polys.at(2), (IntPolynomial{8, 4, -12, 4}));
}

TEST(Pipeline, ZeroDefectIsCatalan) {
  const auto result = run_pipeline(0);
  EXPECT_TRUE(result.polys.empty());
  const auto& f0 = result.f_series.at(0);
  ASSERT_EQ(f0.size(), 4u);
  EXPECT_EQ(f0, (std::vector<mpz_class>{1, 2, 5, 14}));
}

TEST(Pipeline, FSeriesMatchesBruteForceLoopCounts) {
  const auto result = run_pipeline(2);
  for (int n = 1; n <= 8; ++n) {
    const auto counts = brute_meander_counts(n);
    for (int r = 0; r <= 2 && r < n; ++r) {
      EXPECT_EQ(result.f_series.at(r)[n - 1], counts.at(n - r))
          << "n=" << n << " r=" << r;
    }
  }
}

TEST(Pipeline, StructuralChecksAreRecorded) {
  const auto result = run_pipeline(2);
  std::ostringstream report;
  write_report(report, result.diagnostics);
  const auto text = report.str();
  for (const char* name :
       {"K: f_{0,0,0} = X/(1-X)", "K: rational form of f_{r,a,b}",
        "M: g_{0,0,0} = Catalan", "r=2: w-form valuation and tail",
        "r=2: P_r coefficients even", "r=2: closed form reproduces F_r"}) {
    EXPECT_NE(text.find(std::string("PASS ") + name), std::string::npos)
        << name;
  }
  EXPECT_EQ(text.find("FAIL"), std::string::npos);
}

TEST(Pipeline, TamperedTableIsCaught) {
  auto entries = build_irreducible_table(2).entries();
  entries[{3, 2, 1, 1}] += 1;
  const IrreducibleTable tampered(entries, {2, 4, 0, 0, ""});
  EXPECT_THROW(run_pipeline(tampered, 2), StructureViolation);
}

TEST(Pipeline, Preconditions) {
  const auto table = build_irreducible_table(2);
  EXPECT_THROW(run_pipeline(table, 3), CoverageError);
  EXPECT_THROW(run_pipeline(table, 2, 11), DomainError);
  EXPECT_THROW(run_pipeline(table, -1), DomainError);
  EXPECT_NO_THROW(run_pipeline(table, 2, 14));
}

TEST(Asymptotics, HalfIntegerGammaIdentity) {
  // Gamma((2r-1)/2) = (2r-3)!! sqrt(pi) / 2^{r-1}.
  for (int r = 1; r <= 10; ++r) {
    double dfact = 1;
    for (int k = 2 * r - 3; k > 1; k -= 2) dfact *= k;
    const double closed = dfact * std::sqrt(std::numbers::pi) / std::ldexp(1.0, r - 1);
    EXPECT_NEAR(std::tgamma((2 * r - 1) / 2.0) / closed, 1.0, 1e-13) << r;
  }
}

TEST(Asymptotics, ReferenceConstants) {
  for (int r = 1; r <= 6; ++r) {
    const auto c = asymptotic_constant(r, golden_poly(r));
    ASSERT_TRUE(c.defined);
    EXPECT_EQ(c.exact, mpq_class(golden::constants().at(r))) << r;
    // Direct form: P(1) / (2^{2r-2} Gamma((2r-1)/2)).
    const double direct = golden_poly(r).evaluate(mpz_class(1)).get_d() /
                          (std::ldexp(1.0, 2 * r - 2) * std::tgamma((2 * r - 1) / 2.0));
    EXPECT_NEAR(c.value / direct, 1.0, 1e-12) << r;
  }
}

TEST(Asymptotics, VanishingAtOneIsUndefined) {
  const auto c = asymptotic_constant(2, IntPolynomial{1, -1});
  EXPECT_FALSE(c.defined);
  EXPECT_THROW(asymptotic_constant(0, IntPolynomial{1}), DomainError);
}

TEST(Verification, BruteForceAgreement) {
  const auto report = verify_against_brute(5);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.checks.size(), 20u);
  EXPECT_THROW(verify_against_brute(kMaxBruteSetN + 1), SizeLimitError);
}

TEST(Verification, LandoZvonkin) {
  const auto report = lando_zvonkin_check(7);
  EXPECT_TRUE(report.passed());
  ASSERT_EQ(report.checks.size(), 7u);
  EXPECT_NE(report.checks[6].detail.find("Cat_n^2 184041"), std::string::npos);
  EXPECT_FALSE(report.notes.empty());
}

TEST(ResultJson, StableShape) {
  const auto result = run_pipeline(2);
  std::ostringstream a, b;
  write_result_json(a, result);
  write_result_json(b, run_pipeline(2));
  EXPECT_EQ(a.str(), b.str());
  const auto text = a.str();
  EXPECT_NE(text.find("{\"r\": 2, \"coeffs\": [8,4,-12,4]}"), std::string::npos);
  EXPECT_NE(text.find("\"constant\": \"2\""), std::string::npos);
  EXPECT_LT(text.find("\"polynomials\""), text.find("\"f_series\""));
  EXPECT_LT(text.find("\"f_series\""), text.find("\"asymptotics\""));
  EXPECT_LT(text.find("\"asymptotics\""), text.find("\"diagnostics\""));
}
