#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "trustgrow/error.hpp"

namespace trustgrow {

// Exact rational with a normalized, positive denominator. Arithmetic is done
// in 128 bits and reduced back; results that do not fit in 64 bits throw.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den = 1) {  // NOLINT: implicit from integers
    if (den == 0) fail(ErrorKind::input, "fraction with zero denominator");
    assign(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "3", "-2", "3/8", "0.375", ".5". Decimals are read exactly.
  static Fraction parse(std::string_view text) {
    auto bad = [&] { fail(ErrorKind::input, "not a rational number: '" + std::string(text) + "'"); };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) bad();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Fraction n = parse(text.substr(0, slash));
      Fraction d = parse(text.substr(slash + 1));
      if (d.num_ == 0) bad();
      return n / d;
    }

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    __int128 num = 0;
    __int128 den = 1;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : text) {
      if (c == '.') {
        if (seen_point) bad();
        seen_point = true;
        continue;
      }
      if (c < '0' || c > '9') bad();
      seen_digit = true;
      num = num * 10 + (c - '0');
      if (seen_point) den *= 10;
      if (num > kLimit || den > kLimit) bad();
    }
    if (!seen_digit) bad();
    return from_wide(negative ? -num : num, den);
  }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.num_ == 0) fail(ErrorKind::input, "division by zero fraction");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Fraction operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

  Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
  Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
  Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
  Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

 private:
  static constexpr __int128 kLimit = static_cast<__int128>(INT64_MAX);

  static __int128 wide_gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Fraction from_wide(__int128 num, __int128 den) {
    if (den == 0) fail(ErrorKind::input, "fraction with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = wide_gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > kLimit || num < -kLimit || den > kLimit) {
      throw std::overflow_error("fraction overflow");
    }
    Fraction f;
    f.num_ = static_cast<std::int64_t>(num);
    f.den_ = static_cast<std::int64_t>(den);
    return f;
  }

  void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace trustgrow
