#include "lj/rational.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lj {

ExtRat::ExtRat(std::int64_t n) : q_(n) {
  if (n < 0) throw std::domain_error("negative extended rational");
}

ExtRat::ExtRat(Rat q) : q_(q) {
  if (q.numerator() < 0) throw std::domain_error("negative extended rational");
}

ExtRat::ExtRat(std::int64_t num, std::int64_t den) : ExtRat(Rat(num, den)) {}

ExtRat ExtRat::inf() {
  ExtRat r;
  r.inf_ = true;
  return r;
}

namespace {

// keeps every intermediate product of boost::rational below 2^62
void guard(const Rat& a, const Rat& b) {
  constexpr std::int64_t lim = std::int64_t(1) << 30;
  if (a.numerator() > lim || a.denominator() > lim || b.numerator() > lim || b.denominator() > lim)
    throw std::overflow_error("extended rational out of exact range");
}

}  // namespace

ExtRat operator+(const ExtRat& a, const ExtRat& b) {
  if (a.inf_ || b.inf_) return ExtRat::inf();
  guard(a.q_, b.q_);
  Rat r = a.q_;
  r += b.q_;
  return ExtRat(r);
}

ExtRat operator*(const ExtRat& a, const ExtRat& b) {
  if (a.is_zero() || b.is_zero()) return ExtRat(0);
  if (a.inf_ || b.inf_) return ExtRat::inf();
  guard(a.q_, b.q_);
  Rat r = a.q_;
  r *= b.q_;
  return ExtRat(r);
}

ExtRat ExtRat::monus(const ExtRat& b) const {
  if (inf_) return inf();
  if (b.inf_ || b.q_ >= q_) return ExtRat(0);
  Rat r = q_;
  r -= b.q_;
  return ExtRat(r);
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
  if (a.q_ < b.q_) return std::strong_ordering::less;
  if (b.q_ < a.q_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRat min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

std::string ExtRat::str() const {
  if (inf_) return "inf";
  std::int64_t n = q_.numerator(), d = q_.denominator();
  if (d == 1) return std::to_string(n);
  // finite decimal iff d has no prime factors other than 2 and 5
  std::int64_t r = d;
  int twos = 0, fives = 0;
  while (r % 2 == 0) r /= 2, ++twos;
  while (r % 5 == 0) r /= 5, ++fives;
  if (r != 1 || std::max(twos, fives) > 12)
    return std::to_string(n) + "/" + std::to_string(d);
  int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::int64_t scaled = n * (scale / d);
  std::string frac = std::to_string(scaled % scale);
  frac.insert(0, digits - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return std::to_string(scaled / scale) + "." + frac;
}

double ExtRat::to_double() const {
  if (inf_) return INFINITY;
  return static_cast<double>(q_.numerator()) / static_cast<double>(q_.denominator());
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

}  // namespace

std::optional<ExtRat> ExtRat::parse(std::string_view s) {
  if (s == "inf" || s == "∞") return inf();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto n = parse_int(s.substr(0, slash));
    auto d = parse_int(s.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return ExtRat(*n, *d);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) return std::nullopt;
    auto w = whole.empty() ? std::optional<std::int64_t>(0) : parse_int(whole);
    auto f = parse_int(frac);
    if (!w || !f) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return ExtRat(*w * scale + *f, scale);
  }
  auto n = parse_int(s);
  if (!n) return std::nullopt;
  return ExtRat(*n);
}

}  // namespace lj
