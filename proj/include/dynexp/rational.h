#pragma once

#include <cstdint>
#include <string>

namespace dynexp {

// Exact p/q with q > 0, always reduced. Arithmetic is checked against int64
// overflow.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT
  Rational(int64_t n, int64_t d);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  int64_t Ceil() const;
  int64_t Floor() const;
  double ToDouble() const { return static_cast<double>(num_) / den_; }
  std::string ToString() const;
  static Rational Parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend int Compare(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return Compare(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return Compare(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return Compare(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return Compare(a, b) >= 0; }

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

// a * x >= b * y for non-negative integer x, y without rounding.
bool ScaledAtLeast(const Rational& a, int64_t x, const Rational& b, int64_t y);

Rational Min(const Rational& a, const Rational& b);
Rational Max(const Rational& a, const Rational& b);

}  // namespace dynexp
