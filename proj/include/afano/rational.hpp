#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afano {

// Exact rational, always in lowest terms with positive denominator.
// Storage is delegated to boost's cpp_rational.
class Rational {
 public:
  using Big = boost::multiprecision::cpp_int;
  using Impl = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT: implicit from integers is intended
  Rational(int n) : v_(n) {}        // NOLINT
  Rational(long long p, long long q) {
    if (q == 0) throw std::domain_error("Rational: zero denominator");
    v_ = Impl(Big(p), Big(q));
  }
  explicit Rational(Impl v) : v_(std::move(v)) {}

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view s) {
    auto trim = [](std::string_view t) {
      while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
      while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
      return t;
    };
    s = trim(s);
    auto digits = [](std::string_view t) {
      if (t.empty()) return false;
      std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    std::string_view p = trim(s.substr(0, slash));
    std::string_view q = slash == std::string_view::npos ? "1" : trim(s.substr(slash + 1));
    if (!digits(p) || !digits(q) || q[0] == '-' || q[0] == '+')
      throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
    Big bp(std::string(p[0] == '+' ? p.substr(1) : p));
    Big bq{std::string(q)};
    if (bq == 0) throw std::domain_error("Rational: zero denominator");
    return Rational(Impl(bp, bq));
  }

  Big num() const { return boost::multiprecision::numerator(v_); }
  Big den() const { return boost::multiprecision::denominator(v_); }
  const Impl& impl() const { return v_; }

  bool is_integer() const { return den() == 1; }
  bool is_zero() const { return v_ == 0; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  long long to_int() const {
    if (!is_integer()) throw std::domain_error("Rational: " + str() + " is not an integer");
    return num().convert_to<long long>();
  }

  std::string str() const {
    std::string s = num().str();
    if (!is_integer()) s += "/" + den().str();
    return s;
  }

  Rational operator-() const { return Rational(Impl(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  Impl v_{0};
};

inline Rational pow(const Rational& b, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Integer part rounding toward negative infinity.
inline Rational floor(const Rational& r) {
  Rational::Big q = r.num() / r.den();
  if (r.sign() < 0 && q * r.den() != r.num()) q -= 1;
  return Rational(Rational::Impl(q));
}

}  // namespace afano
