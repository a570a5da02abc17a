#include "meandric/series.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "meandric/errors.hpp"
#include "meandric/irreducible.hpp"

namespace meandric {
namespace {

bool term_less(const CoeffPoly::Term& t, int y, int a, int b) {
  if (t.y != y) return t.y < y;
  if (t.a != a) return t.a < a;
  return t.b < b;
}

void check_bounds(const SeriesBounds& lhs, const SeriesBounds& rhs) {
  if (!(lhs == rhs)) throw DomainError("series truncation bounds differ");
}

// Dense scratch space for sums of products; compacted back to a sparse
// CoeffPoly once all contributions are in.
class DenseAccumulator {
 public:
  explicit DenseAccumulator(CoeffBounds bounds)
      : bounds_(bounds),
        cells_(static_cast<std::size_t>(bounds.ny + 1) * (bounds.na + 1) *
               (bounds.nb + 1)),
        touched_(cells_.size(), 0) {}

  void add(const CoeffPoly& p) {
    for (const auto& t : p.terms()) {
      const auto i = index(t.y, t.a, t.b);
      cells_[i] += t.coeff;
      touched_[i] = 1;
    }
  }

  void add_product(const CoeffPoly& x, const CoeffPoly& y) {
    for (const auto& tx : x.terms()) {
      for (const auto& ty : y.terms()) {
        const int ey = tx.y + ty.y;
        if (ey > bounds_.ny) break;  // terms are sorted by y first
        const int ea = tx.a + ty.a;
        const int eb = tx.b + ty.b;
        if (ea > bounds_.na || eb > bounds_.nb) continue;
        const auto i = index(ey, ea, eb);
        mpz_addmul(cells_[i].get_mpz_t(), tx.coeff.get_mpz_t(),
                   ty.coeff.get_mpz_t());
        touched_[i] = 1;
      }
    }
  }

  CoeffPoly take() {
    CoeffPoly out(bounds_);
    for (int y = 0; y <= bounds_.ny; ++y) {
      for (int a = 0; a <= bounds_.na; ++a) {
        for (int b = 0; b <= bounds_.nb; ++b) {
          const auto i = index(y, a, b);
          if (!touched_[i]) continue;
          if (cells_[i] != 0) out.add_term(y, a, b, cells_[i]);
          cells_[i] = 0;
          touched_[i] = 0;
        }
      }
    }
    return out;
  }

 private:
  std::size_t index(int y, int a, int b) const {
    return (static_cast<std::size_t>(y) * (bounds_.na + 1) + a) *
               (bounds_.nb + 1) +
           b;
  }

  CoeffBounds bounds_;
  std::vector<mpz_class> cells_;
  std::vector<char> touched_;
};

}  // namespace

// ---------------------------------------------------------------- CoeffPoly

CoeffPoly CoeffPoly::constant(CoeffBounds bounds, const mpz_class& value) {
  CoeffPoly p(bounds);
  p.add_term(0, 0, 0, value);
  return p;
}

mpz_class CoeffPoly::coefficient(int y, int a, int b) const {
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), 0,
      [&](const Term& t, int) { return term_less(t, y, a, b); });
  if (it != terms_.end() && it->y == y && it->a == a && it->b == b) {
    return it->coeff;
  }
  return 0;
}

void CoeffPoly::add_term(int y, int a, int b, const mpz_class& value) {
  if (y < 0 || a < 0 || b < 0 || y > bounds_.ny || a > bounds_.na ||
      b > bounds_.nb || value == 0) {
    return;
  }
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), 0,
      [&](const Term& t, int) { return term_less(t, y, a, b); });
  if (it != terms_.end() && it->y == y && it->a == a && it->b == b) {
    it->coeff += value;
    if (it->coeff == 0) terms_.erase(it);
    return;
  }
  terms_.insert(it, Term{static_cast<std::uint8_t>(y),
                         static_cast<std::uint8_t>(a),
                         static_cast<std::uint8_t>(b), value});
}

mpz_class CoeffPoly::y_total(int y) const {
  mpz_class sum = 0;
  for (const auto& t : terms_) {
    if (t.y == y) sum += t.coeff;
  }
  return sum;
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& other) {
  if (!(bounds_ == other.bounds_)) {
    throw DomainError("coefficient bounds differ");
  }
  for (const auto& t : other.terms_) add_term(t.y, t.a, t.b, t.coeff);
  return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& other) {
  if (!(bounds_ == other.bounds_)) {
    throw DomainError("coefficient bounds differ");
  }
  for (const auto& t : other.terms_) add_term(t.y, t.a, t.b, -t.coeff);
  return *this;
}

CoeffPoly& CoeffPoly::operator*=(const mpz_class& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= scalar;
  return *this;
}

CoeffPoly operator*(const CoeffPoly& lhs, const CoeffPoly& rhs) {
  if (!(lhs.bounds_ == rhs.bounds_)) {
    throw DomainError("coefficient bounds differ");
  }
  DenseAccumulator acc(lhs.bounds_);
  acc.add_product(lhs, rhs);
  return acc.take();
}

bool CoeffPoly::operator==(const CoeffPoly& other) const {
  if (!(bounds_ == other.bounds_) || terms_.size() != other.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& x = terms_[i];
    const auto& y = other.terms_[i];
    if (x.y != y.y || x.a != y.a || x.b != y.b || x.coeff != y.coeff) {
      return false;
    }
  }
  return true;
}

// -------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(SeriesBounds bounds, std::string variable)
    : bounds_(bounds),
      variable_(std::move(variable)),
      coeffs_(std::max(bounds.nx, 0), CoeffPoly(bounds.coeff())) {
  if (bounds.nx < 0 || bounds.ny < 0 || bounds.na < 0 || bounds.nb < 0) {
    throw DomainError("negative truncation bound");
  }
  if (bounds.ny > 255 || bounds.na > 255 || bounds.nb > 255) {
    throw DomainError("truncation bound above 255");
  }
}

mpz_class TruncSeries::coefficient(int n, int y, int a, int b) const {
  if (n < 1 || n > bounds_.nx) return 0;
  return coeffs_[n - 1].coefficient(y, a, b);
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const CoeffPoly& c) { return c.is_zero(); });
}

std::vector<mpz_class> TruncSeries::slice(int y, int a, int b) const {
  std::vector<mpz_class> out(bounds_.nx + 1, 0);
  for (int n = 1; n <= bounds_.nx; ++n) out[n] = coeffs_[n - 1].coefficient(y, a, b);
  return out;
}

TruncSeries operator+(const TruncSeries& lhs, const TruncSeries& rhs) {
  check_bounds(lhs.bounds_, rhs.bounds_);
  TruncSeries out = lhs;
  for (int n = 1; n <= lhs.bounds_.nx; ++n) out[n] += rhs[n];
  return out;
}

TruncSeries operator*(const TruncSeries& lhs, const TruncSeries& rhs) {
  check_bounds(lhs.bounds_, rhs.bounds_);
  TruncSeries out(lhs.bounds_, lhs.variable_);
  DenseAccumulator acc(lhs.bounds_.coeff());
  for (int n = 2; n <= lhs.bounds_.nx; ++n) {
    for (int i = 1; i < n; ++i) acc.add_product(lhs[i], rhs[n - i]);
    out[n] = acc.take();
  }
  return out;
}

bool TruncSeries::operator==(const TruncSeries& other) const {
  return bounds_ == other.bounds_ && coeffs_ == other.coeffs_;
}

// ------------------------------------------------------------- IntPolynomial

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPolynomial::evaluate(const mpz_class& x) const {
  mpz_class value = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    value = value * x + *it;
  }
  return value;
}

mpq_class IntPolynomial::evaluate(const mpq_class& x) const {
  mpq_class value = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    value = value * x + mpq_class(*it);
  }
  value.canonicalize();
  return value;
}

std::string IntPolynomial::to_string(const std::string& variable) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const mpz_class& c = coeffs_[d];
    if (c == 0) continue;
    const mpz_class magnitude = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (magnitude != 1 || d == 0) {
      out << magnitude;
      if (d > 0) out << ' ';
    }
    if (d >= 1) out << variable;
    if (d >= 2) out << '^' << d;
  }
  return out.str();
}

// ----------------------------------------------------------------------- uni

namespace uni {

Series multiply(const Series& lhs, const Series& rhs, int degree) {
  Series out(degree + 1, 0);
  for (int i = 0; i <= degree && i < static_cast<int>(lhs.size()); ++i) {
    if (lhs[i] == 0) continue;
    for (int j = 0; i + j <= degree && j < static_cast<int>(rhs.size()); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), lhs[i].get_mpz_t(), rhs[j].get_mpz_t());
    }
  }
  return out;
}

Series binomial_power(int sign, int exponent, int degree) {
  Series out(degree + 1, 0);
  mpz_class c = 1;
  for (int k = 0; k <= degree; ++k) {
    out[k] = c;
    c = c * (exponent - k) * sign;
    c /= (k + 1);
  }
  return out;
}

}  // namespace uni

// ---------------------------------------------------------------- operations

TruncSeries f_transform(const TruncSeries& cumulants) {
  const auto bounds = cumulants.bounds();
  const int nx = bounds.nx;
  const auto cb = bounds.coeff();
  TruncSeries moments(bounds, cumulants.variable());

  int top = 0;  // highest nonzero cumulant order
  for (int k = 1; k <= nx; ++k) {
    if (!cumulants[k].is_zero()) top = k;
  }
  if (top == 0) return moments;

  // powers[k][m] = [X^m] (1 + M)^k for k >= 2; (1 + M)^1 is read directly.
  std::vector<std::vector<CoeffPoly>> powers(top + 1);
  for (int k = 2; k <= top; ++k) powers[k].resize(nx - k + 1);
  const CoeffPoly one = CoeffPoly::constant(cb, 1);
  auto shifted = [&](int m) -> const CoeffPoly& {
    return m == 0 ? one : moments[m];
  };
  auto power = [&](int k, int m) -> const CoeffPoly& {
    return k == 1 ? shifted(m) : powers[k][m];
  };

  DenseAccumulator acc(cb);
  for (int n = 1; n <= nx; ++n) {
    // [X^n] R(X(1+M)) = sum_k R_k [X^{n-k}] (1+M)^k uses M_1..M_{n-1} only.
    for (int k = 2; k <= std::min(n, top); ++k) {
      const int m = n - k;
      acc.add(power(k - 1, m));
      for (int j = 1; j <= m; ++j) acc.add_product(power(k - 1, m - j), moments[j]);
      powers[k][m] = acc.take();
    }
    for (int k = 1; k <= std::min(n, top); ++k) {
      if (!cumulants[k].is_zero()) acc.add_product(cumulants[k], power(k, n - k));
    }
    moments[n] = acc.take();
  }
  return moments;
}

TruncSeries series_from_table(const IrreducibleTable& table,
                              SeriesBounds bounds) {
  const int usable_r = std::min(bounds.ny, table.max_r());
  const int needed_n = std::min(bounds.nx, std::max(2 * usable_r, 1));
  if (table.max_n() < needed_n) {
    throw CoverageError("irreducible table covers n <= " +
                        std::to_string(table.max_n()) + " but n <= " +
                        std::to_string(needed_n) + " is required");
  }
  TruncSeries out(bounds, "X");
  for (const auto& [key, count] : table.entries()) {
    if (key.n > bounds.nx) continue;
    out[key.n].add_term(key.r, key.a, key.b, mpz_class(std::to_string(count)));
  }
  return out;
}

TruncSeries substitute_ab_one(const TruncSeries& s) {
  auto bounds = s.bounds();
  bounds.na = bounds.nb = 0;
  TruncSeries out(bounds, s.variable());
  for (int n = 1; n <= bounds.nx; ++n) {
    for (const auto& t : s[n].terms()) out[n].add_term(t.y, 0, 0, t.coeff);
  }
  return out;
}

TruncSeries y_slice(const TruncSeries& s, int y) {
  auto bounds = s.bounds();
  bounds.ny = 0;
  TruncSeries out(bounds, s.variable());
  for (int n = 1; n <= bounds.nx; ++n) {
    for (const auto& t : s[n].terms()) {
      if (t.y == y) out[n].add_term(0, t.a, t.b, t.coeff);
    }
  }
  return out;
}

TruncSeries change_var_to_w(const TruncSeries& s, int nw) {
  if (nw > s.bounds().nx || nw < 0) {
    throw DomainError("change_var_to_w: nw must lie in 0..nx");
  }
  auto bounds = s.bounds();
  bounds.nx = nw;
  TruncSeries out(bounds, "w");
  // t(w) = w / (1+w)^2 = sum_{k>=1} (-1)^{k-1} k w^k
  uni::Series t(nw + 1, 0);
  for (int k = 1; k <= nw; ++k) t[k] = (k % 2 == 1 ? k : -k);
  uni::Series power = t;
  for (int n = 1; n <= nw; ++n) {
    if (n > 1) power = uni::multiply(power, t, nw);
    const CoeffPoly& c = s[n];
    if (c.is_zero()) continue;
    for (int m = n; m <= nw; ++m) {
      if (power[m] == 0) continue;
      CoeffPoly scaled = c;
      scaled *= power[m];
      out[m] += scaled;
    }
  }
  return out;
}

IntPolynomial extract_polynomial(const TruncSeries& s_w, int r) {
  const auto& bounds = s_w.bounds();
  if (r < 1) throw DomainError("extract_polynomial: r must be at least 1");
  if (bounds.ny != 0 || bounds.na != 0 || bounds.nb != 0) {
    throw DomainError("extract_polynomial: series must be univariate");
  }
  const int nw = bounds.nx;
  if (nw < 4 * r + 2) {
    throw DomainError("extract_polynomial: need nw >= " +
                      std::to_string(4 * r + 2) + ", got " +
                      std::to_string(nw));
  }
  const auto values = s_w.slice(0, 0, 0);
  auto h = uni::multiply(values, uni::binomial_power(-1, 2 * r - 1, nw), nw);
  h = uni::multiply(h, uni::binomial_power(1, -1, nw), nw);
  for (int m = 0; m <= r; ++m) {
    if (h[m] != 0) {
      throw StructureViolation("r=" + std::to_string(r) + ": coefficient of w^" +
                               std::to_string(m) +
                               " must vanish below w^(r+1), got " + h[m].get_str());
    }
  }
  const int max_degree = 3 * r - 3;
  std::vector<mpz_class> coeffs;
  for (int d = 0; r + 1 + d <= nw; ++d) {
    const mpz_class& c = h[r + 1 + d];
    if (d > max_degree) {
      if (c != 0) {
        throw StructureViolation(
            "r=" + std::to_string(r) + ": nonzero coefficient " + c.get_str() +
            " at degree " + std::to_string(d) + " beyond " +
            std::to_string(max_degree));
      }
    } else {
      coeffs.push_back(c);
    }
  }
  return IntPolynomial(std::move(coeffs));
}

void write_series_dump(std::ostream& out, const TruncSeries& s) {
  for (int n = 1; n <= s.bounds().nx; ++n) {
    for (const auto& t : s[n].terms()) {
      out << n << ' ' << int{t.y} << ' ' << int{t.a} << ' ' << int{t.b} << ' '
          << t.coeff << '\n';
    }
  }
}

}  // namespace meandric
