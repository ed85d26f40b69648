#include "weylchar/scalar.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "weylchar/error.hpp"

namespace weylchar {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

std::vector<long> compute_cyclotomic_polynomial(int n) {
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& divisor = cyclotomic_polynomial(d);
    const std::size_t dd = divisor.size() - 1;
    std::vector<long> quotient(poly.size() - dd, 0);
    for (std::size_t k = poly.size() - 1; k + 1 > dd; --k) {
      const long c = poly[k];
      if (c == 0) continue;
      quotient[k - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) poly[k - dd + j] -= c * divisor[j];
    }
    poly = std::move(quotient);
  }
  return poly;
}

/// Exact solve of A x = b for a full-column-rank A; empty if inconsistent.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a,
                                                 std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_col_of_row;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows && a[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[pivot_row]);
    std::swap(b[sel], b[pivot_row]);
    const Rational inv = 1 / a[pivot_row][col];
    for (std::size_t j = col; j < cols; ++j) a[pivot_row][j] *= inv;
    b[pivot_row] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[r][j] -= f * a[pivot_row][j];
      b[r] -= f * b[pivot_row];
    }
    pivot_col_of_row.push_back(col);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows; ++r) {
    if (b[r] != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t r = 0; r < pivot_row; ++r) x[pivot_col_of_row[r]] = b[r];
  return x;
}

/// Reduces a dense polynomial in zeta_n (any length) to the power basis of
/// Q(zeta_n).
std::vector<Rational> reduce_mod_phi(int n, const std::vector<Rational>& dense) {
  std::vector<Rational> folded(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (dense[k] != 0) folded[k % static_cast<std::size_t>(n)] += dense[k];
  }
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = folded.size(); k-- > deg;) {
    if (folded[k] == 0) continue;
    const Rational c = folded[k];
    for (std::size_t j = 0; j <= deg; ++j) folded[k - deg + j] -= c * phi[j];
  }
  folded.resize(deg);
  return folded;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw std::domain_error("cyclotomic polynomial of non-positive index");
  static std::mutex mutex;
  static std::map<int, std::vector<long>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::vector<long> poly = n == 1 ? std::vector<long>{-1, 1} : compute_cyclotomic_polynomial(n);
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(poly)).first->second;
}

Cyclotomic::Cyclotomic() : coeffs_{Rational(0)} {}

Cyclotomic::Cyclotomic(long value) : coeffs_{Rational(value)} {}

Cyclotomic::Cyclotomic(const Rational& value) : coeffs_{value} {}

Cyclotomic::Cyclotomic(int n, std::vector<Rational> reduced_coeffs)
    : conductor_(n), coeffs_(std::move(reduced_coeffs)) {}

Cyclotomic Cyclotomic::root_of_unity(int n, long k) {
  if (n < 1) throw std::domain_error("root of unity of non-positive order");
  long e = k % n;
  if (e < 0) e += n;
  std::vector<Rational> dense(static_cast<std::size_t>(n), Rational(0));
  dense[static_cast<std::size_t>(e)] = 1;
  Cyclotomic c;
  c.normalize_from_dense(n, std::move(dense));
  return c;
}

Cyclotomic Cyclotomic::from_powers(int n, const std::vector<Rational>& coeffs) {
  if (n < 1) throw std::domain_error("cyclotomic field of non-positive conductor");
  Cyclotomic c;
  c.normalize_from_dense(n, coeffs);
  return c;
}

void Cyclotomic::normalize_from_dense(int n, std::vector<Rational> dense) {
  // Q(zeta_{2m}) = Q(zeta_m) for odd m: zeta_{2m}^k = (-1)^k zeta_m^{k(m+1)/2}.
  if (n % 4 == 2) {
    const int m = n / 2;
    std::vector<Rational> moved(static_cast<std::size_t>(m), Rational(0));
    for (std::size_t k = 0; k < dense.size(); ++k) {
      if (dense[k] == 0) continue;
      const std::size_t target = (k * static_cast<std::size_t>((m + 1) / 2)) % static_cast<std::size_t>(m);
      if (k % 2 == 0) {
        moved[target] += dense[k];
      } else {
        moved[target] -= dense[k];
      }
    }
    n = m;
    dense = std::move(moved);
  }
  std::vector<Rational> reduced = reduce_mod_phi(n, dense);

  bool rational = true;
  for (std::size_t k = 1; k < reduced.size(); ++k) {
    if (reduced[k] != 0) {
      rational = false;
      break;
    }
  }
  if (rational) {
    conductor_ = 1;
    coeffs_ = {reduced.empty() ? Rational(0) : reduced[0]};
    return;
  }

  // Smallest subfield Q(zeta_d), d | n, containing the value. The set of
  // admissible d is closed under gcd, so the first hit is the conductor.
  for (int d = 3; d < n; ++d) {
    if (n % d != 0 || d % 4 == 2) continue;
    const int phi_d = euler_phi(d);
    const std::size_t rows = reduced.size();
    std::vector<std::vector<Rational>> basis(rows, std::vector<Rational>(static_cast<std::size_t>(phi_d)));
    for (int j = 0; j < phi_d; ++j) {
      std::vector<Rational> power(static_cast<std::size_t>(n), Rational(0));
      power[static_cast<std::size_t>((j * (n / d)) % n)] = 1;
      const auto column = reduce_mod_phi(n, power);
      for (std::size_t r = 0; r < rows; ++r) basis[r][static_cast<std::size_t>(j)] = column[r];
    }
    if (auto sub = solve_exact(std::move(basis), reduced)) {
      conductor_ = d;
      coeffs_ = std::move(*sub);
      return;
    }
  }
  conductor_ = n;
  coeffs_ = std::move(reduced);
}

bool Cyclotomic::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }

std::optional<Rational> Cyclotomic::as_rational() const {
  if (conductor_ != 1) return std::nullopt;
  return coeffs_[0];
}

std::optional<Integer> Cyclotomic::as_integer() const {
  if (conductor_ != 1 || coeffs_[0].get_den() != 1) return std::nullopt;
  return Integer(coeffs_[0].get_num());
}

std::vector<Rational> Cyclotomic::lift(int m) const {
  if (m % conductor_ != 0) throw std::domain_error("lift to a field not containing the value");
  std::vector<Rational> dense(static_cast<std::size_t>(m), Rational(0));
  const int step = m / conductor_;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    dense[(k * static_cast<std::size_t>(step)) % static_cast<std::size_t>(m)] += coeffs_[k];
  }
  return dense;
}

Cyclotomic Cyclotomic::galois(long k) const {
  if (conductor_ == 1) return *this;
  const int n = conductor_;
  long e = k % n;
  if (e < 0) e += n;
  if (std::gcd(e, static_cast<long>(n)) != 1) {
    throw std::domain_error("Galois exponent not coprime to the conductor");
  }
  std::vector<Rational> dense(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    dense[(j * static_cast<std::size_t>(e)) % static_cast<std::size_t>(n)] += coeffs_[j];
  }
  Cyclotomic out;
  out.normalize_from_dense(n, std::move(dense));
  return out;
}

Cyclotomic Cyclotomic::conjugate() const { return galois(-1); }

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  if (conductor_ == 1 && rhs.conductor_ == 1) {
    coeffs_[0] += rhs.coeffs_[0];
    return *this;
  }
  const int m = std::lcm(conductor_, rhs.conductor_);
  auto a = lift(m);
  const auto b = rhs.lift(m);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  normalize_from_dense(m, std::move(a));
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) { return *this += -rhs; }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
  if (rhs.conductor_ == 1) {
    for (auto& c : coeffs_) c *= rhs.coeffs_[0];
    if (rhs.coeffs_[0] == 0) *this = Cyclotomic();
    return *this;
  }
  if (conductor_ == 1) {
    const Rational s = coeffs_[0];
    *this = rhs;
    for (auto& c : coeffs_) c *= s;
    if (s == 0) *this = Cyclotomic();
    return *this;
  }
  const int m = std::lcm(conductor_, rhs.conductor_);
  const auto a = lift(m);
  const auto b = rhs.lift(m);
  std::vector<Rational> prod(static_cast<std::size_t>(m), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      prod[(i + j) % static_cast<std::size_t>(m)] += a[i] * b[j];
    }
  }
  normalize_from_dense(m, std::move(prod));
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
}

std::strong_ordering canonical_compare(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ != b.conductor_) return a.conductor_ <=> b.conductor_;
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
    const int c = cmp(a.coeffs_[k], b.coeffs_[k]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t Cyclotomic::hash() const {
  std::size_t h = static_cast<std::size_t>(conductor_) * 0x9e3779b97f4a7c15ULL;
  for (const auto& c : coeffs_) {
    const std::size_t v = static_cast<std::size_t>(mpz_get_si(c.get_num_mpz_t())) * 31U +
                          static_cast<std::size_t>(mpz_get_si(c.get_den_mpz_t()));
    h ^= v + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Cyclotomic::to_string() const {
  if (is_zero()) return "0";
  if (conductor_ == 1) return coeffs_[0].get_str();
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    std::string term;
    if (k == 0) {
      term = c.get_str();
    } else {
      std::string root = "z" + std::to_string(conductor_);
      if (k > 1) root += "^" + std::to_string(k);
      if (c == 1) {
        term = root;
      } else if (c == -1) {
        term = "-" + root;
      } else {
        term = c.get_str() + "*" + root;
      }
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  Cyclotomic parse_all() {
    Cyclotomic value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("invalid scalar literal '" + std::string(text_) + "': " + what + " at offset " +
                    std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Cyclotomic expression() {
    Cyclotomic value;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    value = term();
    if (negate) value = -value;
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        break;
      }
    }
    return value;
  }

  Cyclotomic term() {
    Cyclotomic value = factor();
    while (accept('*')) value *= factor();
    return value;
  }

  Cyclotomic factor() {
    skip_space();
    if (accept('(')) {
      Cyclotomic inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (accept('z')) {
      const Integer n = number();
      if (n < 1 || n > 100000) fail("root of unity order out of range");
      long k = 1;
      if (accept('^')) {
        const bool neg = accept('-');
        const Integer e = number();
        if (!e.fits_slong_p()) fail("exponent too large");
        k = neg ? -e.get_si() : e.get_si();
      }
      return Cyclotomic::root_of_unity(static_cast<int>(n.get_si()), k);
    }
    const Integer num = number();
    if (accept('/')) {
      const Integer den = number();
      if (den == 0) fail("zero denominator");
      return Cyclotomic(make_rational(num, den));
    }
    return Cyclotomic(Rational(num));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Cyclotomic Cyclotomic::parse(std::string_view text) { return LiteralParser(text).parse_all(); }

Cyclotomic normalize(const Cyclotomic& c) { return c; }

Cyclotomic conjugate(const Cyclotomic& c) { return c.conjugate(); }

std::optional<Integer> as_integer(const Cyclotomic& c) { return c.as_integer(); }

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

}  // namespace weylchar
