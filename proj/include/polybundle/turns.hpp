#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/rational.hpp>

namespace polybundle {

// An exact angle measured in full revolutions. Integer Turns are loop
// windings; Turns reduced mod 1 are points of the circle.
class Turns {
public:
  using Rep = boost::rational<std::int64_t>;

  Turns() = default;
  Turns(std::int64_t whole) : value_(whole) {}
  Turns(std::int64_t numerator, std::int64_t denominator) : value_(numerator, denominator) {}
  explicit Turns(Rep value) : value_(value) {}

  std::int64_t numerator() const { return value_.numerator(); }
  std::int64_t denominator() const { return value_.denominator(); }
  const Rep& rep() const { return value_; }

  bool is_integer() const { return value_.denominator() == 1; }

  // Representative in [0, 1).
  Turns mod1() const;

  Turns operator-() const { return Turns(-value_); }
  Turns& operator+=(const Turns& o) {
    value_ += o.value_;
    return *this;
  }
  Turns& operator-=(const Turns& o) {
    value_ -= o.value_;
    return *this;
  }
  friend Turns operator+(Turns a, const Turns& b) { return a += b; }
  friend Turns operator-(Turns a, const Turns& b) { return a -= b; }
  friend Turns operator*(std::int64_t k, const Turns& t) { return Turns(t.value_ * k); }

  friend bool operator==(const Turns& a, const Turns& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Turns& a, const Turns& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "p/q", or "p" when integral.
  std::string str() const;

private:
  Rep value_{0};
};

// Congruence mod 1.
bool congruent_mod1(const Turns& a, const Turns& b);

std::ostream& operator<<(std::ostream& os, const Turns& t);

// Least nonnegative residue of a mod n, n > 0.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

} // namespace polybundle
