#ifndef OLYRANK_RATIONAL_HPP
#define OLYRANK_RATIONAL_HPP

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "olyrank/errors.hpp"

namespace olyrank {

/// Small exact fraction with a positive, reduced denominator.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw ValidationError("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }
  constexpr double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr Rational operator*(Rational a, Rational b) {
    const auto g1 = std::gcd(a.num_, b.den_);
    const auto g2 = std::gcd(b.num_, a.den_);
    return Rational((a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1)),
                    (a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1)));
  }
  friend constexpr Rational reciprocal(Rational a) { return Rational(a.den_, a.num_); }

  friend constexpr bool operator==(Rational a, Rational b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr std::strong_ordering operator<=>(Rational a, Rational b) noexcept {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::string to_string(Rational r) {
  return r.den() == 1 ? std::to_string(r.num()) : std::to_string(r.num()) + "/" + std::to_string(r.den());
}

/// Parses "p", "p/q" or a plain decimal such as "1.5" exactly.
inline Rational parse_rational(std::string_view s) {
  auto to_int = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw ValidationError("malformed number '" + std::string(s) + "'");
    return v;
  };
  if (const auto slash = s.find('/'); slash != std::string_view::npos)
    return Rational(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    if (frac.size() > 15) throw ValidationError("too many decimals in '" + std::string(s) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::string_view whole = s.substr(0, dot);
    const bool negative = !whole.empty() && whole.front() == '-';
    const std::int64_t w = whole.empty() || whole == "-" ? 0 : to_int(whole);
    const std::int64_t f = frac.empty() ? 0 : to_int(frac);
    if (f < 0) throw ValidationError("malformed number '" + std::string(s) + "'");
    return Rational(w * scale + (negative ? -f : f), scale);
  }
  return Rational(to_int(s));
}

}  // namespace olyrank

#endif  // OLYRANK_RATIONAL_HPP
