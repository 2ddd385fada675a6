#include "dynexp/rational.h"

#include <limits>
#include <numeric>

#include "dynexp/error.h"

namespace dynexp {

namespace {

using i128 = __int128;

int64_t Narrow(i128 v) {
  if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min()) {
    Fail(ErrorKind::kOverflow, "rational arithmetic overflow");
  }
  return static_cast<int64_t>(v);
}

i128 Gcd(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational Make(i128 n, i128 d) {
  if (d == 0) Fail(ErrorKind::kInvalidArgument, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = Gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(Narrow(n), Narrow(d));
}

}  // namespace

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kNotFound: return "not_found";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kExpired: return "expired";
    case ErrorKind::kTooLarge: return "too_large";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

void Fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

Rational::Rational(int64_t n, int64_t d) {
  if (d == 0) Fail(ErrorKind::kInvalidArgument, "zero denominator");
  if (d < 0) {
    if (n == std::numeric_limits<int64_t>::min() || d == std::numeric_limits<int64_t>::min()) {
      Fail(ErrorKind::kOverflow, "rational arithmetic overflow");
    }
    n = -n;
    d = -d;
  }
  int64_t g = std::gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

int64_t Rational::Floor() const {
  int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

int64_t Rational::Ceil() const {
  int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::ToString() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::Parse(const std::string& text) {
  try {
    size_t slash = text.find('/');
    size_t used = 0;
    if (slash == std::string::npos) {
      int64_t n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    int64_t n = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    int64_t d = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return Rational(n, d);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    Fail(ErrorKind::kParse, "not a rational: '" + text + "'");
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

int Compare(const Rational& a, const Rational& b) {
  i128 l = i128(a.num_) * b.den_, r = i128(b.num_) * a.den_;
  return l < r ? -1 : (l > r ? 1 : 0);
}

bool ScaledAtLeast(const Rational& a, int64_t x, const Rational& b, int64_t y) {
  // a.num/a.den * x >= b.num/b.den * y
  i128 l = i128(a.num()) * x * b.den();
  i128 r = i128(b.num()) * y * a.den();
  return l >= r;
}

Rational Min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational Max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace dynexp
