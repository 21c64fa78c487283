#include "polybundle/turns.hpp"

#include <boost/rational.hpp>

namespace polybundle {

Turns Turns::mod1() const {
  std::int64_t whole = boost::rational_cast<std::int64_t>(value_);
  Rep frac = value_ - whole;
  if (frac < 0) frac += 1;
  return Turns(frac);
}

std::string Turns::str() const {
  if (is_integer()) return std::to_string(numerator());
  return std::to_string(numerator()) + "/" + std::to_string(denominator());
}

bool congruent_mod1(const Turns& a, const Turns& b) { return (a - b).is_integer(); }

std::ostream& operator<<(std::ostream& os, const Turns& t) { return os << t.str(); }

} // namespace polybundle
