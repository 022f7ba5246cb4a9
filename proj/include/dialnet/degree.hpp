#pragma once

// Exact degrees in the unit interval and the lineale operations on them.
//
// A Degree is a reduced fraction p/q with 0 <= p <= q. Every comparison is
// exact; nothing in the library uses floating point for truth values.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dialnet/error.hpp"

namespace dialnet {

class Degree {
public:
  using int_type = std::int64_t;

  constexpr Degree() = default;

  /// Throws DegreeError unless 0 <= num/den <= 1.
  constexpr Degree(int_type num, int_type den) : num_(num), den_(den) {
    if (den_ == 0) throw DegreeError("degree with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ < 0 || num_ > den_) {
      throw DegreeError("degree " + std::to_string(num) + "/" + std::to_string(den) +
                        " lies outside [0,1]");
    }
    const int_type g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  static constexpr Degree zero() { return Degree(0, 1); }
  static constexpr Degree one() { return Degree(1, 1); }

  constexpr int_type num() const { return num_; }
  constexpr int_type den() const { return den_; }

  constexpr bool is_zero() const { return num_ == 0; }
  constexpr bool is_one() const { return num_ == den_; }
  constexpr bool positive() const { return num_ > 0; }

  friend constexpr bool operator==(const Degree&, const Degree&) = default;

  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Canonical text form "p/q" in lowest terms (also for 0/1 and 1/1).
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p/q", an integer "0"/"1", or a decimal literal such as "0.3"
  /// (converted exactly to 3/10).
  static Degree parse(std::string_view text);

private:
  int_type num_ = 0;
  int_type den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.str(); }

namespace detail {

inline Degree::int_type parse_digits(std::string_view digits, std::string_view whole) {
  const bool all_digits = std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (digits.empty() || !all_digits) throw DegreeError("malformed degree '" + std::string(whole) + "'");
  Degree::int_type value = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (ec != std::errc{} || ptr != end || value < 0) {
    throw DegreeError("malformed degree '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace detail

inline Degree Degree::parse(std::string_view text) {
  if (text.empty()) throw DegreeError("empty degree");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Degree(detail::parse_digits(text.substr(0, slash), text),
                  detail::parse_digits(text.substr(slash + 1), text));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || frac.size() > 17) {
      throw DegreeError("malformed degree '" + std::string(text) + "'");
    }
    int_type den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const int_type w = detail::parse_digits(whole, text);
    const int_type f = detail::parse_digits(frac, text);
    if (w > 1) throw DegreeError("degree '" + std::string(text) + "' lies outside [0,1]");
    return Degree(w * den + f, den);
  }
  return Degree(detail::parse_digits(text, text), 1);
}

// Lattice operations on I.

constexpr Degree meet(Degree a, Degree b) { return a <= b ? a : b; }
constexpr Degree join(Degree a, Degree b) { return a >= b ? a : b; }

/// Goedel residual of min: sup{c : min(c,a) <= b}.
constexpr Degree implies(Degree a, Degree b) { return a <= b ? Degree::one() : b; }

/// Residual of max in the reversed order: inf{c : max(c,a) >= b}.
constexpr Degree co_implies(Degree a, Degree b) { return a >= b ? Degree::zero() : b; }

/// Which way round the unit interval is read. The opposite lineale reverses
/// the order, so its monoid is max with unit 0 and its residual is co_implies.
enum class Orientation { standard, opposite };

constexpr std::string_view to_string(Orientation o) {
  return o == Orientation::standard ? "standard" : "opposite";
}

inline Orientation parse_orientation(std::string_view s) {
  if (s == "standard") return Orientation::standard;
  if (s == "opposite") return Orientation::opposite;
  throw ParseError("unknown orientation '" + std::string(s) + "'");
}

/// The lineale (I, <=, min, 1, implies) or its order dual.
struct Lineale {
  Orientation orientation = Orientation::standard;

  constexpr bool le(Degree a, Degree b) const {
    return orientation == Orientation::standard ? a <= b : a >= b;
  }
  constexpr Degree monoid(Degree a, Degree b) const {
    return orientation == Orientation::standard ? meet(a, b) : join(a, b);
  }
  constexpr Degree unit() const {
    return orientation == Orientation::standard ? Degree::one() : Degree::zero();
  }
  constexpr Degree residual(Degree a, Degree b) const {
    return orientation == Orientation::standard ? implies(a, b) : co_implies(a, b);
  }
};

/// Every degree p/q with q <= max_den, ascending and without repeats.
inline std::vector<Degree> degree_grid(Degree::int_type max_den) {
  std::vector<Degree> out;
  for (Degree::int_type q = 1; q <= max_den; ++q) {
    for (Degree::int_type p = 0; p <= q; ++p) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dialnet
