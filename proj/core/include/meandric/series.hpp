#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace meandric {

class IrreducibleTable;

/// Truncation degrees in Y, A and B.
struct CoeffBounds {
  int ny = 0;
  int na = 0;
  int nb = 0;
  bool operator==(const CoeffBounds&) const = default;
};

/// Truncation of a series in X whose coefficients are polynomials in Y, A, B.
struct SeriesBounds {
  int nx = 0;
  int ny = 0;
  int na = 0;
  int nb = 0;
  bool operator==(const SeriesBounds&) const = default;
  CoeffBounds coeff() const { return {ny, na, nb}; }
};

/// Sparse polynomial in Y, A, B with exact integer coefficients. Terms are
/// kept sorted by (y, a, b) with no zero coefficients and no exponent past
/// the bounds; anything beyond the bounds is dropped on construction.
class CoeffPoly {
 public:
  struct Term {
    std::uint8_t y = 0;
    std::uint8_t a = 0;
    std::uint8_t b = 0;
    mpz_class coeff;
  };

  CoeffPoly() = default;
  explicit CoeffPoly(CoeffBounds bounds) : bounds_(bounds) {}
  static CoeffPoly constant(CoeffBounds bounds, const mpz_class& value);

  CoeffBounds bounds() const noexcept { return bounds_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  mpz_class coefficient(int y, int a, int b) const;
  /// Adds value to the coefficient of Y^y A^a B^b (ignored past the bounds).
  void add_term(int y, int a, int b, const mpz_class& value);

  /// Sum of all coefficients with Y-exponent y.
  mpz_class y_total(int y) const;

  CoeffPoly& operator+=(const CoeffPoly& other);
  CoeffPoly& operator-=(const CoeffPoly& other);
  CoeffPoly& operator*=(const mpz_class& scalar);
  friend CoeffPoly operator+(CoeffPoly lhs, const CoeffPoly& rhs) {
    return lhs += rhs;
  }
  friend CoeffPoly operator-(CoeffPoly lhs, const CoeffPoly& rhs) {
    return lhs -= rhs;
  }
  friend CoeffPoly operator*(const CoeffPoly& lhs, const CoeffPoly& rhs);

  bool operator==(const CoeffPoly& other) const;

 private:
  CoeffBounds bounds_;
  std::vector<Term> terms_;
};

/// Truncated power series sum_{n=1}^{nx} c_n(Y,A,B) X^n. There is no constant
/// term; every series handled here vanishes at X = 0.
class TruncSeries {
 public:
  TruncSeries() = default;
  explicit TruncSeries(SeriesBounds bounds, std::string variable = "X");

  const SeriesBounds& bounds() const noexcept { return bounds_; }
  /// Display name of the series variable ("X" or "w"); no arithmetic effect.
  const std::string& variable() const noexcept { return variable_; }

  /// Coefficient of X^n, 1 <= n <= nx.
  const CoeffPoly& operator[](int n) const { return coeffs_.at(n - 1); }
  CoeffPoly& operator[](int n) { return coeffs_.at(n - 1); }

  mpz_class coefficient(int n, int y, int a, int b) const;
  bool is_zero() const;

  /// Coefficient of Y^y A^a B^b as an integer sequence, index n for X^n
  /// (index 0 holds 0).
  std::vector<mpz_class> slice(int y, int a, int b) const;

  friend TruncSeries operator+(const TruncSeries& lhs, const TruncSeries& rhs);
  friend TruncSeries operator*(const TruncSeries& lhs, const TruncSeries& rhs);
  bool operator==(const TruncSeries& other) const;

 private:
  SeriesBounds bounds_;
  std::string variable_ = "X";
  std::vector<CoeffPoly> coeffs_;
};

/// Univariate polynomial with exact integer coefficients, ascending degree.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  mpz_class evaluate(const mpz_class& x) const;
  mpq_class evaluate(const mpq_class& x) const;

  /// e.g. "4 w^3 - 12 w^2 + 4 w + 8".
  std::string to_string(const std::string& variable = "w") const;

  bool operator==(const IntPolynomial&) const = default;

 private:
  std::vector<mpz_class> coeffs_;
};

/// Plain truncated integer series helpers, index = power.
namespace uni {
using Series = std::vector<mpz_class>;
/// Product truncated to powers 0..degree.
Series multiply(const Series& lhs, const Series& rhs, int degree);
/// (1 + x)^e for integer e (negative allowed), truncated.
Series binomial_power(int sign, int exponent, int degree);
}  // namespace uni

/// The unique M with M = R(X (1 + M)), solved order by order in X.
TruncSeries f_transform(const TruncSeries& cumulants);

/// I(X,Y,A,B) from irreducible counts. Throws CoverageError when the table
/// stops short of n <= min(nx, 2 min(ny, table.max_r)).
TruncSeries series_from_table(const IrreducibleTable& table,
                              SeriesBounds bounds);

/// Sets A = B = 1; the result has na = nb = 0.
TruncSeries substitute_ab_one(const TruncSeries& s);

/// [Y^y] s, returned with ny = 0.
TruncSeries y_slice(const TruncSeries& s, int y);

/// s(w / (1 + w)^2), truncated at w^nw (nw <= nx).
TruncSeries change_var_to_w(const TruncSeries& s, int nw);

/// Recovers P with s_w = w^{r+1} (1+w) P(w) / (1-w)^{2r-1}, deg P <= 3r-3.
/// s_w must be univariate (ny = na = nb = 0) with nw >= 4r + 2. Throws
/// StructureViolation when the low-order or tail coefficients do not vanish.
IntPolynomial extract_polynomial(const TruncSeries& s_w, int r);

/// Lines "n y a b coefficient" for every stored term.
void write_series_dump(std::ostream& out, const TruncSeries& s);

}  // namespace meandric
