#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "pebcalc/error.hpp"

namespace pebcalc {

/// Runtime description of a coefficient field, as it appears on the command
/// line (`rational`, `prime:P`) and inside JSON documents.
struct FieldSpec {
  enum class Kind { Rational, Prime };

  Kind kind = Kind::Rational;
  std::uint32_t p = 0;

  static FieldSpec rational() { return {Kind::Rational, 0}; }
  static FieldSpec prime(std::uint32_t p);
  static FieldSpec parse(std::string_view text);

  std::string to_string() const { return kind == Kind::Rational ? "rational" : "prime:" + std::to_string(p); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline constexpr std::uint32_t kDefaultPrime = 65521;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldSpec FieldSpec::prime(std::uint32_t p) {
  // products of two residues must fit in 64 bits
  if (p >= (1u << 31) || !is_prime(p)) throw Error(Errc::FieldSpecInvalid, "not a prime below 2^31: " + std::to_string(p));
  return {Kind::Prime, p};
}

inline FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "rational" || text == "Q") return rational();
  if (text.starts_with("prime:")) {
    std::string_view digits = text.substr(6);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || p > UINT32_MAX)
      throw Error(Errc::FieldSpecInvalid, "bad prime in field spec '" + std::string(text) + "'");
    return prime(static_cast<std::uint32_t>(p));
  }
  throw Error(Errc::FieldSpecInvalid, "unknown field '" + std::string(text) + "'");
}

namespace detail {

inline std::pair<std::string_view, std::string_view> split_fraction(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return {s, std::string_view{}};
  return {s.substr(0, slash), s.substr(slash + 1)};
}

inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace detail

/// Integers modulo a prime p < 2^31.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(FieldSpec::prime(p).p) {}

  FieldSpec spec() const { return {FieldSpec::Kind::Prime, p_}; }
  std::uint32_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }

  Element add(Element a, Element b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : static_cast<Element>(std::uint64_t{a} + p_ - b); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return static_cast<Element>(std::uint64_t{a} * b % p_); }
  Element inv(Element a) const {
    if (a == 0) throw Error(Errc::InvalidParam, "division by zero in prime field");
    return pow(a, p_ - 2);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  std::string to_string(Element a) const { return std::to_string(a); }

  /// Accepts integers and fractions "a/b"; negative values are reduced mod p.
  Element parse(std::string_view text) const {
    auto [num, den] = detail::split_fraction(text);
    Element n = parse_int(num);
    return den.empty() ? n : div(n, parse_int(den));
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  Element pow(Element base, std::uint32_t e) const {
    std::uint64_t r = 1, b = base;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<Element>(r);
  }

  Element parse_int(std::string_view s) const {
    if (!detail::is_integer_literal(s)) throw Error(Errc::ParseError, "bad coefficient '" + std::string(s) + "'");
    boost::multiprecision::cpp_int v{std::string(s)};
    boost::multiprecision::cpp_int r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }

  std::uint32_t p_;
};

/// Exact rationals backed by arbitrary-precision integers.
class RationalField {
 public:
  using Element = boost::multiprecision::cpp_rational;

  FieldSpec spec() const { return FieldSpec::rational(); }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(v); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (a == 0) throw Error(Errc::InvalidParam, "division by zero in rational field");
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return a == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  std::string to_string(const Element& a) const {
    auto num = boost::multiprecision::numerator(a);
    auto den = boost::multiprecision::denominator(a);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
  }

  Element parse(std::string_view text) const {
    auto [num, den] = detail::split_fraction(text);
    if (!detail::is_integer_literal(num) || (!den.empty() && !detail::is_integer_literal(den)))
      throw Error(Errc::ParseError, "bad coefficient '" + std::string(text) + "'");
    boost::multiprecision::cpp_int n{std::string(num)};
    if (den.empty()) return Element(n);
    boost::multiprecision::cpp_int d{std::string(den)};
    if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Element(n, d);
  }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept Field = requires(const F& f, const typename F::Element& a) {
  { f.spec() } -> std::same_as<FieldSpec>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
};

/// Calls `fn` with the concrete field object described by `spec`.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Prime) return std::forward<Fn>(fn)(PrimeField(spec.p));
  return std::forward<Fn>(fn)(RationalField{});
}

}  // namespace pebcalc
