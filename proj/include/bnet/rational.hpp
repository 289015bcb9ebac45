/* bnet: exact rational scalar used by the dense matrix path */

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bnet {

/// Exact rational on 64-bit numerator/denominator. Every operation reduces
/// the result and throws std::overflow_error if it leaves the 64-bit range,
/// so a value is either exact or the computation fails loudly.
class rational {
public:
  rational() = default;
  rational(int64_t n) : num_(n) {}  // NOLINT: implicit by design
  rational(int64_t n, int64_t d) : num_(n), den_(d) { normalize(); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  friend rational operator+(const rational& a, const rational& b) {
    i128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    i128 d = i128(a.den_) * b.den_;
    return make(n, d);
  }
  friend rational operator-(const rational& a, const rational& b) {
    i128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    i128 d = i128(a.den_) * b.den_;
    return make(n, d);
  }
  friend rational operator*(const rational& a, const rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend rational operator/(const rational& a, const rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  rational operator-() const {
    rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  rational& operator+=(const rational& b) { return *this = *this + b; }
  rational& operator-=(const rational& b) { return *this = *this - b; }
  rational& operator*=(const rational& b) { return *this = *this * b; }
  rational& operator/=(const rational& b) { return *this = *this / b; }

  friend bool operator==(const rational& a, const rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }

  rational inverse() const {
    if (num_ == 0) throw std::domain_error("rational: inverse of zero");
    return rational(den_, num_);
  }

  /// "a" when integral, else "a/b".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  using i128 = __int128;

  static int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational: 64-bit overflow");
    return static_cast<int64_t>(v);
  }

  static rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() { *this = make(num_, den_); }

  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace bnet
