#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdsi {

/// Exact rational number kept in lowest terms with a positive denominator.
/// Comparisons cross-multiply in 128-bit arithmetic.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t numerator) : num_(numerator), den_(1) {}  // NOLINT

  Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / (g == 0 ? 1 : g);
    den_ = denominator / (g == 0 ? 1 : g);
  }

  constexpr std::int64_t numerator() const noexcept { return num_; }
  constexpr std::int64_t denominator() const noexcept { return den_; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "P/Q" or a bare integer "P".
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    auto to_int = [&](std::string_view part) -> std::int64_t {
      if (part.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
      std::size_t used = 0;
      const std::string s(part);
      std::int64_t value = 0;
      try {
        value = std::stoll(s, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
      }
      if (used != s.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
      return value;
    };
    if (slash == std::string_view::npos) return Rational(to_int(text));
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace fdsi
