#include "meandric/pipeline.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "meandric/errors.hpp"
#include "meandric/meander.hpp"

namespace meandric {
namespace {

constexpr int kMaxLandoZvonkinN = 10;

std::vector<mpz_class> catalan_sequence(int nx) {
  std::vector<mpz_class> cat(nx + 1);
  cat[0] = 1;
  for (int n = 0; n < nx; ++n) cat[n + 1] = cat[n] * 2 * (2 * n + 1) / (n + 2);
  return cat;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

void check_k_structure(const TruncSeries& k_series, CheckReport& report) {
  const int nx = k_series.bounds().nx;
  // f_{0,0,0} = X/(1-X) and f_{0,a,b} = 0 otherwise.
  std::ostringstream bad;
  for (int n = 1; n <= nx; ++n) {
    for (const auto& t : k_series[n].terms()) {
      if (t.y != 0) continue;
      const bool ok = (t.a == 0 && t.b == 0) ? t.coeff == 1 : false;
      if (!ok) {
        bad << " [X^" << n << " A^" << int{t.a} << " B^" << int{t.b}
            << "]=" << t.coeff;
      }
    }
    if (k_series[n].coefficient(0, 0, 0) == 0) bad << " [X^" << n << "]=0";
  }
  report.add("K: f_{0,0,0} = X/(1-X)", bad.str().empty(),
             bad.str().empty() ? "all " + std::to_string(nx) + " coefficients equal 1"
                               : "mismatch" + bad.str());

  // (1-X)^{2r+1} f_{r,a,b}(X) = X^{r+1} Q(X), deg Q <= r-1, integer Q.
  std::set<StatTriple> keys;
  for (int n = 1; n <= nx; ++n) {
    for (const auto& t : k_series[n].terms()) {
      if (t.y >= 1) keys.insert({t.y, t.a, t.b});
    }
  }
  std::ostringstream violations;
  for (const auto& key : keys) {
    const auto f = k_series.slice(key.r, key.a, key.b);
    const auto h =
        uni::multiply(f, uni::binomial_power(-1, 2 * key.r + 1, nx), nx);
    for (int m = 0; m <= nx; ++m) {
      const bool inside = m >= key.r + 1 && m - key.r - 1 <= key.r - 1;
      if (!inside && h[m] != 0) {
        violations << " (" << key.r << ',' << key.a << ',' << key.b << ")@X^"
                   << m;
        break;
      }
    }
  }
  const auto v = violations.str();
  report.add("K: rational form of f_{r,a,b}", v.empty(),
             v.empty() ? std::to_string(keys.size()) +
                             " series have degree <= r-1 numerators over (1-X)^(2r+1)"
                       : "violations" + v);
}

void check_m_structure(const TruncSeries& m_series, CheckReport& report) {
  const int nx = m_series.bounds().nx;
  const auto cat = catalan_sequence(nx);
  std::ostringstream bad;
  for (int n = 1; n <= nx; ++n) {
    for (const auto& t : m_series[n].terms()) {
      if (t.y == 0 && (t.a != 0 || t.b != 0)) {
        bad << " [X^" << n << " A^" << int{t.a} << " B^" << int{t.b} << "]";
      }
    }
    if (m_series[n].coefficient(0, 0, 0) != cat[n]) bad << " [X^" << n << "]";
  }
  report.add("M: g_{0,0,0} = Catalan", bad.str().empty(),
             bad.str().empty() ? "Cat_1..Cat_" + std::to_string(nx)
                               : "mismatch" + bad.str());
}

// Re-expands w^{r+1}(1+w)(1-w)^{-(2r-1)} P(w) and substitutes
// w = sum_{n>=1} Cat_n t^n, returning the t-coefficients 0..nx.
uni::Series closed_form_in_t(const IntPolynomial& poly, int r, int nx) {
  uni::Series p(poly.coeffs().begin(), poly.coeffs().end());
  p.resize(nx + 1, 0);
  auto g = uni::multiply(p, uni::binomial_power(1, 1, nx), nx);
  g = uni::multiply(g, uni::binomial_power(-1, -(2 * r - 1), nx), nx);
  uni::Series shifted(nx + 1, 0);
  for (int m = 0; m + r + 1 <= nx; ++m) shifted[m + r + 1] = g[m];

  auto w_of_t = catalan_sequence(nx);
  w_of_t[0] = 0;
  uni::Series out(nx + 1, 0);
  uni::Series power(nx + 1, 0);
  power[0] = 1;
  for (int m = 1; m <= nx; ++m) {
    power = uni::multiply(power, w_of_t, nx);
    if (shifted[m] == 0) continue;
    for (int n = 0; n <= nx; ++n) out[n] += shifted[m] * power[n];
  }
  return out;
}

mpz_class double_factorial(int k) {
  mpz_class out = 1;
  for (int i = k; i > 1; i -= 2) out *= i;
  return out;
}

}  // namespace

bool CheckReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void CheckReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

AsymptoticConstant asymptotic_constant(int r, const IntPolynomial& poly) {
  if (r < 1) throw DomainError("asymptotic_constant: r must be at least 1");
  AsymptoticConstant out;
  const mpz_class at_one = poly.evaluate(mpz_class(1));
  if (at_one == 0) return out;
  mpz_class denominator = double_factorial(2 * r - 3);
  mpz_mul_2exp(denominator.get_mpz_t(), denominator.get_mpz_t(), r - 1);
  out.defined = true;
  out.exact = mpq_class(at_one, denominator);
  out.exact.canonicalize();
  out.value = out.exact.get_d() / std::sqrt(std::numbers::pi);
  return out;
}

PipelineResult run_pipeline(const IrreducibleTable& table, int r_max, int nx) {
  if (r_max < 0) throw DomainError("r_max must be non-negative");
  if (nx == 0) nx = default_nx(r_max);
  if (nx < default_nx(r_max)) {
    throw DomainError("nx=" + std::to_string(nx) + " below the required " +
                      std::to_string(default_nx(r_max)));
  }
  if (table.max_r() < r_max) {
    throw CoverageError("irreducible table truncated at r=" +
                        std::to_string(table.max_r()) + ", need r=" +
                        std::to_string(r_max));
  }
  PipelineResult result;
  result.r_max = r_max;
  result.bounds = {nx, r_max, default_nab(r_max), default_nab(r_max)};
  auto& report = result.diagnostics;

  result.i_series = series_from_table(table, result.bounds);
  result.k_series = f_transform(result.i_series);
  check_k_structure(result.k_series, report);
  result.m_series = f_transform(result.k_series);
  check_m_structure(result.m_series, report);

  const auto collapsed = substitute_ab_one(result.m_series);
  const auto cat = catalan_sequence(nx);
  for (int r = 0; r <= r_max; ++r) {
    const auto f = y_slice(collapsed, r);
    const auto values = f.slice(0, 0, 0);
    result.f_series[r] = std::vector<mpz_class>(values.begin() + 1, values.end());
    if (r == 0) {
      bool ok = true;
      for (int n = 1; n <= nx; ++n) ok = ok && values[n] == cat[n];
      report.add("F_0 = Catalan", ok);
      continue;
    }
    const std::string tag = "r=" + std::to_string(r);

    bool even = true;
    for (const auto& v : values) even = even && mpz_even_p(v.get_mpz_t());
    report.add(tag + ": F_r coefficients even", even);

    IntPolynomial poly;
    try {
      poly = extract_polynomial(change_var_to_w(f, nx), r);
      report.add(tag + ": w-form valuation and tail", true,
                 "deg P = " + std::to_string(poly.degree()) + " <= " +
                     std::to_string(3 * r - 3));
    } catch (const StructureViolation& e) {
      report.add(tag + ": w-form valuation and tail", false, e.what());
      continue;
    }
    result.polys[r] = poly;

    bool poly_even = true;
    for (const auto& c : poly.coeffs()) {
      poly_even = poly_even && mpz_even_p(c.get_mpz_t());
    }
    report.add(tag + ": P_r coefficients even", poly_even);

    const auto back = closed_form_in_t(poly, r, nx);
    bool closed = true;
    for (int n = 1; n <= nx; ++n) closed = closed && back[n] == values[n];
    report.add(tag + ": closed form reproduces F_r", closed,
               "through t^" + std::to_string(nx));

    result.asympt[r] = asymptotic_constant(r, poly);
    const auto& c = result.asympt[r];
    if (!c.defined) {
      report.notes.push_back(tag + ": P_r(1) = 0, asymptotic constant undefined");
    } else if (r <= 3) {
      // Trend only: finite-n corrections decay like 1/n.
      auto ratio_at = [&](int n) {
        return values[n].get_d() / (c.value * std::pow(4.0, n) *
                                    std::pow(double(n), (2 * r - 3) / 2.0));
      };
      bool monotone = true;
      for (int n = r + 2; n <= nx; ++n) {
        monotone = monotone &&
                   std::abs(ratio_at(n) - 1.0) < std::abs(ratio_at(n - 1) - 1.0);
      }
      const double ratio = ratio_at(nx);
      std::ostringstream note;
      note << tag << ": M_n/(c_r 4^n n^((2r-3)/2)/sqrt(pi)) at n=" << nx
           << " is " << std::setprecision(6) << ratio
           << (std::abs(ratio - 1.0) <= 0.2 ? " (within 20%" : " (outside 20%")
           << (monotone ? ", approaching 1 monotonically)" : ", not monotone)");
      report.notes.push_back(note.str());
    }
  }

  if (!report.passed()) {
    std::ostringstream msg;
    msg << "pipeline structural check failed:\n";
    write_report(msg, report);
    throw StructureViolation(msg.str());
  }
  return result;
}

PipelineResult run_pipeline(int r_max, int nx,
                            const TableOptions& table_options) {
  const auto table = build_irreducible_table(r_max, table_options);
  return run_pipeline(table, r_max, nx);
}

CheckReport verify_against_brute(int n_max, int workers) {
  if (n_max < 1 || n_max > kMaxBruteSetN) {
    throw SizeLimitError("verify_against_brute: n_max must lie in 1.." +
                         std::to_string(kMaxBruteSetN));
  }
  TableOptions options;
  options.max_n = n_max;
  options.workers = workers;
  options.override_guard = true;  // max_r = n_max - 1, but n stays tiny
  const auto table = build_irreducible_table(n_max - 1, options);
  const int cap = std::max(n_max - 1, 1);
  const SeriesBounds bounds{n_max, n_max - 1, cap, cap};
  const auto i_series = series_from_table(table, bounds);
  const auto k_series = f_transform(i_series);
  const auto m_series = f_transform(k_series);
  const auto collapsed = substitute_ab_one(m_series);

  CheckReport report;
  const std::pair<SetKind, const TruncSeries*> kinds[] = {
      {SetKind::I, &i_series}, {SetKind::K, &k_series}, {SetKind::M, &m_series}};
  const char* names[] = {"I", "K", "M"};
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 0; k < 3; ++k) {
      const auto brute = brute_set_counts(n, kinds[k].first, workers);
      const auto& series = *kinds[k].second;
      std::ostringstream diff;
      std::size_t brute_terms = 0;
      for (const auto& [key, count] : brute) {
        ++brute_terms;
        const auto got = series.coefficient(n, key.r, key.a, key.b);
        if (got != mpz_class(std::to_string(count))) {
          diff << " (" << key.r << ',' << key.a << ',' << key.b
               << "): series " << got << " brute " << count << ';';
        }
      }
      if (series[n].terms().size() != brute_terms) {
        diff << " series has " << series[n].terms().size()
             << " terms, brute force " << brute_terms << ';';
      }
      const auto d = diff.str();
      report.add(std::string(names[k]) + "-series vs brute force, n=" +
                     std::to_string(n),
                 d.empty(), d.empty() ? std::to_string(brute_terms) + " (r,a,b) cells" : d);
    }
    const auto loops = brute_meander_counts(n, workers);
    std::ostringstream diff;
    for (const auto& [k, count] : loops) {
      const auto got = collapsed.coefficient(n, n - k, 0, 0);
      if (got != mpz_class(std::to_string(count))) {
        diff << " k=" << k << ": series " << got << " brute " << count << ';';
      }
    }
    const auto d = diff.str();
    report.add("F_r vs brute loop counts, n=" + std::to_string(n), d.empty(), d);
  }
  return report;
}

CheckReport lando_zvonkin_check(int n_max, const TableOptions& table_options) {
  if (n_max < 1 || n_max > kMaxLandoZvonkinN) {
    throw SizeLimitError("lando_zvonkin_check: n_max must lie in 1.." +
                         std::to_string(kMaxLandoZvonkinN));
  }
  TableOptions options = table_options;
  options.max_n = n_max;
  options.override_guard = true;
  const auto table = build_irreducible_table(n_max - 1, options);

  uni::Series irreducible(n_max + 1, 0);
  irreducible[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    irreducible[n] = mpz_class(std::to_string(table.total(n)));
  }

  // B = N(x B^2) by fixed-point iteration; each pass fixes one more order.
  uni::Series b(n_max + 1, 0);
  b[0] = 1;
  for (int pass = 0; pass < n_max; ++pass) {
    auto inner = uni::multiply(b, b, n_max);
    inner.insert(inner.begin(), mpz_class(0));  // times x
    inner.resize(n_max + 1);
    uni::Series next(n_max + 1, 0);
    uni::Series power(n_max + 1, 0);
    power[0] = 1;
    for (int k = 0; k <= n_max; ++k) {
      if (k > 0) power = uni::multiply(power, inner, n_max);
      for (int m = 0; m <= n_max; ++m) next[m] += irreducible[k] * power[m];
    }
    b = std::move(next);
  }

  TruncSeries i_series({n_max, 0, 0, 0});
  for (int n = 1; n <= n_max; ++n) i_series[n].add_term(0, 0, 0, irreducible[n]);
  const auto m_series = f_transform(f_transform(i_series));

  CheckReport report;
  const auto cat = catalan_sequence(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const mpz_class two_step = m_series.coefficient(n, 0, 0, 0);
    const mpz_class square = cat[n] * cat[n];
    const bool ok = b[n] == two_step && two_step == square;
    std::ostringstream detail;
    detail << "quadratic " << b[n] << ", two-step " << two_step << ", Cat_n^2 "
           << square;
    report.add("Lando-Zvonkin order " + std::to_string(n), ok, detail.str());
  }
  const double target =
      std::pow(std::numbers::pi / (4.0 - std::numbers::pi), 2.0);
  for (int n = 1; n <= n_max; ++n) {
    std::ostringstream note;
    note << "|I_" << n << "| = " << irreducible[n] << ", |I_n|^(1/n) = "
         << std::setprecision(6)
         << std::pow(irreducible[n].get_d(), 1.0 / n) << " (limit "
         << target << ")";
    report.notes.push_back(note.str());
  }
  return report;
}

void write_result_json(std::ostream& out, const PipelineResult& result) {
  auto list = [&](const std::vector<mpz_class>& values) {
    out << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out << ',';
      out << values[i];
    }
    out << ']';
  };
  out << "{\n  \"r_max\": " << result.r_max << ",\n  \"bounds\": {\"nx\": "
      << result.bounds.nx << ", \"ny\": " << result.bounds.ny
      << ", \"na\": " << result.bounds.na << ", \"nb\": " << result.bounds.nb
      << "},\n  \"polynomials\": [";
  bool first = true;
  for (const auto& [r, poly] : result.polys) {
    out << (first ? "\n" : ",\n") << "    {\"r\": " << r << ", \"coeffs\": ";
    list(poly.coeffs());
    out << '}';
    first = false;
  }
  out << "\n  ],\n  \"f_series\": [";
  first = true;
  for (const auto& [r, values] : result.f_series) {
    out << (first ? "\n" : ",\n") << "    {\"r\": " << r << ", \"coeffs\": ";
    list(values);
    out << '}';
    first = false;
  }
  out << "\n  ],\n  \"asymptotics\": [";
  first = true;
  for (const auto& [r, c] : result.asympt) {
    out << (first ? "\n" : ",\n") << "    {\"r\": " << r
        << ", \"defined\": " << (c.defined ? "true" : "false")
        << ", \"constant\": \"" << (c.defined ? c.exact.get_str() : "")
        << "\", \"value\": " << std::setprecision(12) << c.value << '}';
    first = false;
  }
  out << "\n  ],\n  \"diagnostics\": [";
  first = true;
  for (const auto& check : result.diagnostics.checks) {
    out << (first ? "\n" : ",\n") << "    {\"name\": \""
        << json_escape(check.name)
        << "\", \"passed\": " << (check.passed ? "true" : "false")
        << ", \"detail\": \"" << json_escape(check.detail) << "\"}";
    first = false;
  }
  out << "\n  ]\n}\n";
}

void write_report(std::ostream& out, const CheckReport& report) {
  for (const auto& check : report.checks) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name;
    if (!check.detail.empty()) out << ": " << check.detail;
    out << '\n';
  }
  for (const auto& note : report.notes) out << "NOTE " << note << '\n';
}

}  // namespace meandric
