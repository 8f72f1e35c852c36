// Exact number systems used by every geometric predicate in tetrapack:
// arbitrary-precision rationals, elements of a real quadratic field
// Q(sqrt d), and univariate rational polynomials with a sign classifier
// that works over a whole closed interval.
//
// Nothing in here touches floating point except the explicit
// to_long_double() conversions used for export and approximate display.

#ifndef TETRAPACK_EXACT_HPP_
#define TETRAPACK_EXACT_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace tetrapack {

// RATIONAL

// Arbitrary-precision rational, always in lowest terms with a positive
// denominator (GMP keeps mpq_t canonical after every arithmetic operation).
class Rational {
public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0)
      fail("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "p/q" or "p" with an optional leading '-'. No decimals, no
  // exponents: scalars enter the program only in exact form.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      return !s.empty() && std::all_of(s.begin(), s.end(),
                                       [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      num = text.substr(0, slash);
      den = text.substr(slash + 1);
    }
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!digits(num_digits) || !digits(den))
      fail("malformed rational '" + std::string(text) + "' (expected p/q)");
    std::string n(num);
    if (n.front() == '+')
      n.erase(0, 1);
    mpz_class d(std::string(den), 10);
    if (d == 0)
      fail("rational with zero denominator: '" + std::string(text) + "'");
    return Rational(mpz_class(n, 10), d);
  }

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }

  // Canonical text form "p/q" (q > 0, lowest terms). Integers keep "/1".
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_), raw); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (sgn(o.q_) == 0)
      fail("rational division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  struct RawTag {};
  static constexpr RawTag raw{};
  Rational(mpq_class q, RawTag) : q_(std::move(q)) {}

  mpq_class q_;
};

inline int sign(const Rational& r) { return sgn(r.value()); }
inline bool is_zero(const Rational& r) { return sign(r) == 0; }
inline long double to_long_double(const Rational& r) { return r.value().get_d(); }
inline Rational abs(const Rational& r) { return sign(r) < 0 ? -r : r; }

inline mpz_class floor(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.value().get_num_mpz_t(), r.value().get_den_mpz_t());
  return out;
}

inline mpz_class ceil(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.value().get_num_mpz_t(), r.value().get_den_mpz_t());
  return out;
}

// Representative of r modulo 1 in [0, 1).
inline Rational mod1(const Rational& r) { return r - Rational(floor(r), mpz_class(1)); }

// QUADRATIC FIELD

constexpr bool is_square_free(int d) {
  if (d < 2)
    return false;
  for (int p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0)
      return false;
  return true;
}

// Element rat + coef*sqrt(D) of the real quadratic field Q(sqrt D). The
// radicand is a template parameter, so every binary operation is between
// elements of the same field by construction.
template <int D>
class QuadExt {
  static_assert(is_square_free(D), "radicand must be a square-free integer > 1");

public:
  static constexpr int radicand = D;

  QuadExt() = default;
  template <std::integral I>
  QuadExt(I v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational r) : rat_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational r, Rational c) : rat_(std::move(r)), coef_(std::move(c)) {}

  const Rational& rat() const { return rat_; }
  const Rational& coef() const { return coef_; }

  QuadExt conjugate() const { return {rat_, -coef_}; }
  // Field norm (a + b sqrt D)(a - b sqrt D).
  Rational norm() const { return rat_ * rat_ - coef_ * coef_ * Rational(D); }

  QuadExt operator-() const { return {-rat_, -coef_}; }
  QuadExt& operator+=(const QuadExt& o) { rat_ += o.rat_; coef_ += o.coef_; return *this; }
  QuadExt& operator-=(const QuadExt& o) { rat_ -= o.rat_; coef_ -= o.coef_; return *this; }
  QuadExt& operator*=(const QuadExt& o) {
    Rational r = rat_ * o.rat_ + coef_ * o.coef_ * Rational(D);
    Rational c = rat_ * o.coef_ + coef_ * o.rat_;
    rat_ = std::move(r);
    coef_ = std::move(c);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    Rational n = o.norm();
    if (is_zero(n))
      fail("quadratic-field division by zero");
    *this *= o.conjugate();
    rat_ /= n;
    coef_ /= n;
    return *this;
  }
  friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
  friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
  friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
  friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
  friend bool operator==(const QuadExt& a, const QuadExt& b) {
    return a.rat_ == b.rat_ && a.coef_ == b.coef_;
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& q) {
    return os << q.rat_ << " + " << q.coef_ << "*sqrt(" << D << ")";
  }

private:
  Rational rat_;
  Rational coef_;
};

using Q10 = QuadExt<10>;

// Sign of rat + coef*sqrt(d). When the two parts disagree in sign the
// larger magnitude wins; magnitudes are compared as integers,
// p^2 s^2 against r^2 q^2 d for rat = p/q, coef = r/s.
template <int D>
int quad_sign(const QuadExt<D>& x) {
  int sa = sign(x.rat()), sb = sign(x.coef());
  if (sb == 0)
    return sa;
  if (sa == 0 || sa == sb)
    return sb;
  mpz_class p = x.rat().numerator(), q = x.rat().denominator();
  mpz_class r = x.coef().numerator(), s = x.coef().denominator();
  mpz_class lhs = p * p * s * s;
  mpz_class rhs = r * r * q * q * D;
  return lhs > rhs ? sa : sb;  // equality is impossible for square-free D
}

template <int D>
int sign(const QuadExt<D>& x) { return quad_sign(x); }
template <int D>
bool is_zero(const QuadExt<D>& x) { return is_zero(x.rat()) && is_zero(x.coef()); }
template <int D>
long double to_long_double(const QuadExt<D>& x) {
  return to_long_double(x.rat()) + to_long_double(x.coef()) * std::sqrt(static_cast<long double>(D));
}
template <int D>
QuadExt<D> abs(const QuadExt<D>& x) { return sign(x) < 0 ? -x : x; }

// Exact floor of a field element: start from a floating estimate, then
// correct it with exact sign tests.
template <int D>
mpz_class floor(const QuadExt<D>& x) {
  long double approx = std::floor(to_long_double(x));
  mpz_class n;
  n.set_str(std::to_string(static_cast<long long>(approx)), 10);
  auto at = [&](const mpz_class& k) { return QuadExt<D>(x.rat() - Rational(k, 1), x.coef()); };
  while (sign(at(n)) < 0)
    --n;
  while (sign(at(n + 1)) >= 0)
    ++n;
  return n;
}

// Exact ordering helpers for any signed scalar.
template <class S>
bool less(const S& a, const S& b) { return sign(a - b) < 0; }
template <class S>
bool less_equal(const S& a, const S& b) { return sign(a - b) <= 0; }

// Decimal rendering rounded half away from zero at `digits` fractional
// digits. The rounding decision is exact for both number systems.
template <class S>
std::string to_decimal(const S& value, int digits) {
  if (digits < 0 || digits > 60)
    fail("decimal precision out of range");
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i)
    scale *= 10;
  bool negative = sign(value) < 0;
  S mag = negative ? S(-value) : value;
  S scaled = mag * S(Rational(scale, 1));
  mpz_class n = floor(scaled);
  S frac = scaled - S(Rational(n, 1));
  if (sign(frac - S(Rational(1, 2))) >= 0)
    n += 1;
  std::string body = n.get_str();
  if (digits > 0) {
    if (static_cast<int>(body.size()) <= digits)
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (negative && n != 0 ? "-" : "") + body;
}

// POLYNOMIALS

// Univariate polynomial with rational coefficients in ascending degree.
// The coefficient vector never has a trailing zero, so the zero polynomial
// is the empty vector and degree() is -1 for it.
class RatPoly {
public:
  RatPoly() = default;
  template <std::integral I>
  RatPoly(I v) : RatPoly(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  RatPoly(Rational c) {  // NOLINT(google-explicit-constructor)
    if (!::tetrapack::is_zero(c))
      c_.push_back(std::move(c));
  }
  explicit RatPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

  // The indeterminate.
  static RatPoly x() { return RatPoly(std::vector<Rational>{0, 1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational();
  }
  Rational constant() const {
    if (!is_constant())
      fail("polynomial is not constant");
    return coefficient(0);
  }

  Rational operator()(const Rational& t) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * t + *it;
    return acc;
  }

  RatPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
      d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return RatPoly(std::move(d));
  }

  // p(offset + scale*t) as a polynomial in t.
  RatPoly compose_affine(const Rational& offset, const Rational& scale) const {
    RatPoly inner(std::vector<Rational>{offset, scale});
    RatPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * inner + RatPoly(*it);
    return acc;
  }

  RatPoly operator-() const {
    RatPoly r = *this;
    for (auto& c : r.c_)
      c = -c;
    return r;
  }
  RatPoly& operator+=(const RatPoly& o) {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
      c_[i] += o.c_[i];
    trim();
    return *this;
  }
  RatPoly& operator-=(const RatPoly& o) { return *this += -o; }
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(r));
  }
  RatPoly& operator*=(const RatPoly& o) { return *this = *this * o; }
  // Division is only defined by nonzero constants; geometric code divides
  // by small integers (centroids, volumes).
  friend RatPoly operator/(RatPoly a, const RatPoly& b) {
    Rational d = b.constant();
    if (::tetrapack::is_zero(d))
      fail("polynomial division by zero");
    for (auto& c : a.c_)
      c /= d;
    return a;
  }
  RatPoly& operator/=(const RatPoly& o) { return *this = *this / o; }
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const RatPoly& p) {
    if (p.is_zero())
      return os << "0";
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
      if (i)
        os << " + ";
      os << "(" << p.c_[i] << ")";
      if (i)
        os << "*x^" << i;
    }
    return os;
  }

private:
  void trim() {
    while (!c_.empty() && ::tetrapack::is_zero(c_.back()))
      c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline bool is_zero(const RatPoly& p) { return p.is_zero(); }

// Remainder of a divided by b (b nonzero).
inline RatPoly poly_remainder(RatPoly a, const RatPoly& b) {
  if (b.is_zero())
    fail("polynomial remainder by zero");
  while (!a.is_zero() && a.degree() >= b.degree()) {
    Rational f = a.coefficient(a.degree()) / b.coefficient(b.degree());
    std::vector<Rational> shift(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    shift.back() = f;
    a -= RatPoly(std::move(shift)) * b;
  }
  return a;
}

// Monic greatest common divisor; gcd(0, 0) is 0.
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = poly_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero())
    return a;
  return a / RatPoly(a.coefficient(a.degree()));
}

// Bernstein coefficients of p on [lo, hi], in degree max(deg p, 0).
inline std::vector<Rational> bernstein_coefficients(const RatPoly& p, const Rational& lo,
                                                    const Rational& hi) {
  RatPoly q = p.compose_affine(lo, hi - lo);
  int n = std::max(q.degree(), 0);
  // binom[k][i] = C(k, i)
  std::vector<std::vector<mpz_class>> binom(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    binom[k].assign(static_cast<std::size_t>(k) + 1, 1);
    for (int i = 1; i < k; ++i)
      binom[k][i] = binom[k - 1][i - 1] + binom[k - 1][i];
  }
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= k; ++i)
      b[k] += Rational(binom[k][i], binom[n][i]) * q.coefficient(i);
  return b;
}

enum class SignClass {
  strictly_positive,
  nonnegative,   // >= 0 everywhere with at least one zero
  nonpositive,   // <= 0 everywhere with at least one zero
  strictly_negative,
  mixed,
  zero,          // identically zero: both nonnegative and nonpositive
};

inline const char* to_string(SignClass s) {
  switch (s) {
  case SignClass::strictly_positive: return "strictly-positive";
  case SignClass::nonnegative: return "nonnegative";
  case SignClass::nonpositive: return "nonpositive";
  case SignClass::strictly_negative: return "strictly-negative";
  case SignClass::mixed: return "mixed";
  case SignClass::zero: return "zero";
  }
  return "?";
}

inline bool is_nonnegative(SignClass s) {
  return s == SignClass::strictly_positive || s == SignClass::nonnegative || s == SignClass::zero;
}
inline bool is_nonpositive(SignClass s) {
  return s == SignClass::strictly_negative || s == SignClass::nonpositive || s == SignClass::zero;
}
inline bool is_strict(SignClass s) {
  return s == SignClass::strictly_positive || s == SignClass::strictly_negative;
}

struct IntervalSign {
  SignClass cls = SignClass::zero;
  std::vector<Rational> zeros;  // exact zeros found (sorted); empty when cls is zero
};

namespace detail {

struct SignScan {
  const RatPoly& p;
  bool pos = false, neg = false;
  std::vector<Rational> zeros;

  bool mixed() const { return pos && neg; }

  void point(const Rational& t) {
    int s = sign(p(t));
    if (s > 0)
      pos = true;
    else if (s < 0)
      neg = true;
    else
      zeros.push_back(t);
  }

  // Endpoint values are already recorded by the caller.
  void interval(const Rational& lo, const Rational& hi, int depth) {
    if (mixed())
      return;
    if (depth > 64)
      fail("interval sign classification did not converge");
    auto b = bernstein_coefficients(p, lo, hi);
    bool all_ge = std::all_of(b.begin(), b.end(), [](const Rational& c) { return sign(c) >= 0; });
    bool all_le = std::all_of(b.begin(), b.end(), [](const Rational& c) { return sign(c) <= 0; });
    // p is a convex combination of the Bernstein basis, positive inside
    // (lo, hi); so one-signed coefficients (not all zero) decide the interior.
    if (all_ge) {
      pos = true;
      return;
    }
    if (all_le) {
      neg = true;
      return;
    }
    Rational mid = (lo + hi) / Rational(2);
    point(mid);
    interval(lo, mid, depth + 1);
    interval(mid, hi, depth + 1);
  }
};

} // namespace detail

// Exact sign classification of p over the closed interval [lo, hi].
// Bernstein coefficients on the interval decide it when they are
// one-signed; otherwise the interval is bisected. Rational multiple roots
// (the only kind a cubic can have) are inserted as split points first, so
// the bisection terminates for every polynomial of degree <= 3.
inline IntervalSign poly_sign_on_interval(const RatPoly& p, const Rational& lo, const Rational& hi) {
  if (!(lo < hi))
    fail("poly_sign_on_interval requires lo < hi");
  if (p.is_zero())
    return {SignClass::zero, {}};

  std::vector<Rational> cuts{lo, hi};
  RatPoly g = poly_gcd(p, p.derivative());
  while (g.degree() >= 1) {
    if (g.degree() == 1) {
      cuts.push_back(-g.coefficient(0) / g.coefficient(1));
      break;
    }
    RatPoly h = poly_gcd(g, g.derivative());
    if (h.degree() < 1)
      break;  // distinct irrational multiple roots; bisection relies on the depth cap
    g = h;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](const Rational& c) { return c < lo || c > hi; }),
             cuts.end());

  detail::SignScan scan{p, false, false, {}};
  for (const auto& c : cuts)
    scan.point(c);
  for (std::size_t i = 0; i + 1 < cuts.size() && !scan.mixed(); ++i)
    scan.interval(cuts[i], cuts[i + 1], 0);

  IntervalSign out;
  std::sort(scan.zeros.begin(), scan.zeros.end());
  scan.zeros.erase(std::unique(scan.zeros.begin(), scan.zeros.end()), scan.zeros.end());
  out.zeros = std::move(scan.zeros);
  if (scan.mixed())
    out.cls = SignClass::mixed;
  else if (scan.pos)
    out.cls = out.zeros.empty() ? SignClass::strictly_positive : SignClass::nonnegative;
  else
    out.cls = out.zeros.empty() ? SignClass::strictly_negative : SignClass::nonpositive;
  return out;
}

} // namespace tetrapack

#endif // TETRAPACK_EXACT_HPP_
