#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace lj {

// Only compare Rat with Rat: mixed Rat/integer comparisons recurse forever under C++20
// rewritten-operator rules in the Boost versions we build against.
using Rat = boost::rational<std::int64_t>;

// Non-negative rational number or +infinity, with 0 * inf = inf * 0 = 0.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(std::int64_t n);  // NOLINT(google-explicit-constructor)
  explicit ExtRat(Rat q);
  ExtRat(std::int64_t num, std::int64_t den);

  static ExtRat inf();

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && q_.numerator() == 0; }
  bool is_integer() const { return !inf_ && q_.denominator() == 1; }
  const Rat& value() const { return q_; }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b);
  friend ExtRat operator*(const ExtRat& a, const ExtRat& b);
  // truncated subtraction a - b (0 when b >= a); inf - inf = inf
  ExtRat monus(const ExtRat& b) const;

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.q_ == b.q_);
  }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

  // "inf", integers, finite decimals ("2.5"), otherwise "p/q".
  std::string str() const;
  double to_double() const;

  // Accepts "inf", "∞", "3", "2.25", "5/2". Rejects negatives.
  static std::optional<ExtRat> parse(std::string_view s);

 private:
  bool inf_ = false;
  Rat q_{0};
};

ExtRat min(const ExtRat& a, const ExtRat& b);
ExtRat max(const ExtRat& a, const ExtRat& b);

}  // namespace lj
