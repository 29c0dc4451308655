#pragma once

// Exact rational arithmetic on 64-bit integers. Intermediate products are
// carried in 128 bits; a result that does not fit throws std::overflow_error.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace coverplex {

using int128 = __int128;

namespace detail {

inline std::int64_t narrow(int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("coverplex: rational overflow");
  return static_cast<std::int64_t>(v);
}

inline int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline int sign(int128 v) { return (v > 0) - (v < 0); }

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  static Rational from128(int128 n, int128 d) {
    Rational r;
    r.assign(n, d);
    return r;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  // Largest integer <= value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p", "p/q" and "-p/q".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("coverplex: malformed rational '" + s + "'");
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(int128(a.num_) * b.den_ + int128(b.num_) * a.den_, int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(int128(a.num_) * b.den_ - int128(b.num_) * a.den_, int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(int128(a.num_) * b.num_, int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("coverplex: division by zero");
    return from128(int128(a.num_) * b.den_, int128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = detail::narrow(-int128(num_));
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int128 l = int128(a.num_) * b.den_;
    int128 r = int128(b.num_) * a.den_;
    return l <=> r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(int128 n, int128 d) {
    if (d == 0) throw std::domain_error("coverplex: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = detail::narrow(n);
    den_ = detail::narrow(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace coverplex
