#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "pebcalc/error.hpp"

namespace pebcalc {

using Var = std::uint32_t;

inline constexpr Var kMaxVars = 64;

/// A multilinear monomial, i.e. a set of variables. The empty set is the
/// constant monomial 1. Variables are bit positions, so at most 64 of them.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  Monomial(std::initializer_list<Var> vars) {
    for (Var v : vars) *this = with(v);
  }

  static Monomial of(const std::vector<Var>& vars) {
    Monomial m;
    for (Var v : vars) m = m.with(v);
    return m;
  }
  static constexpr Monomial one() { return Monomial(); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int degree() const { return std::popcount(bits_); }
  constexpr bool is_one() const { return bits_ == 0; }
  constexpr bool contains(Var v) const { return v < kMaxVars && ((bits_ >> v) & 1u); }
  constexpr bool divides(Monomial other) const { return (bits_ & ~other.bits_) == 0; }

  Monomial with(Var v) const {
    if (v >= kMaxVars) throw Error(Errc::TooManyVariables, "variable id " + std::to_string(v) + " exceeds 63");
    return Monomial(bits_ | (std::uint64_t{1} << v));
  }
  constexpr Monomial without(Var v) const { return Monomial(bits_ & ~(std::uint64_t{1} << v)); }

  /// Multilinear product: x * x = x.
  constexpr Monomial operator*(Monomial o) const { return Monomial(bits_ | o.bits_); }
  constexpr Monomial operator&(Monomial o) const { return Monomial(bits_ & o.bits_); }
  constexpr Monomial minus(Monomial o) const { return Monomial(bits_ & ~o.bits_); }

  std::vector<Var> vars() const {
    std::vector<Var> out;
    out.reserve(static_cast<std::size_t>(degree()));
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<Var>(std::countr_zero(b)));
    return out;
  }

  std::string to_string() const {
    if (is_one()) return "1";
    std::string s;
    for (Var v : vars()) {
      if (!s.empty()) s += '*';
      s += 'x' + std::to_string(v);
    }
    return s;
  }

  friend constexpr bool operator==(Monomial, Monomial) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Graded order: lower degree first, ties broken by the bit pattern
/// (colexicographic on the variable sets).
struct GradedLess {
  constexpr bool operator()(Monomial a, Monomial b) const {
    int da = a.degree(), db = b.degree();
    return da != db ? da < db : a.bits() < b.bits();
  }
};

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = k < n - k ? k : n - k;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Number of multilinear monomials of degree <= d over n variables.
inline std::uint64_t monomial_dimension(unsigned n, unsigned d) {
  std::uint64_t total = 0;
  for (unsigned k = 0; k <= d && k <= n; ++k) total += binomial(n, k);
  return total;
}

/// Colex rank of a monomial among the monomials of its own degree.
inline std::uint64_t colex_rank(Monomial m) {
  std::uint64_t r = 0;
  unsigned i = 1;
  for (Var v : m.vars()) r += binomial(v, i++);
  return r;
}

/// Position of `m` in the degree-graded colex enumeration of all monomials of
/// degree <= deg(m) over n variables; used to index the monomial basis.
inline std::uint64_t graded_colex_index(Monomial m, unsigned n) {
  return monomial_dimension(n, static_cast<unsigned>(m.degree())) - binomial(n, static_cast<unsigned>(m.degree())) +
         colex_rank(m);
}

/// Calls `fn(Monomial)` for every subset of `universe` with at most `max_degree`
/// elements, in increasing degree.
template <class Fn>
void for_each_monomial(Monomial universe, int max_degree, Fn&& fn) {
  std::vector<Var> vars = universe.vars();
  const int n = static_cast<int>(vars.size());
  for (int k = 0; k <= max_degree && k <= n; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::uint64_t bits = 0;
      for (int i : idx) bits |= std::uint64_t{1} << vars[static_cast<std::size_t>(i)];
      fn(Monomial(bits));
      int i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

inline Monomial all_vars(unsigned n) {
  if (n > kMaxVars) throw Error(Errc::TooManyVariables, std::to_string(n) + " variables exceed the limit of 64");
  return Monomial(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

}  // namespace pebcalc

template <>
struct std::hash<pebcalc::Monomial> {
  std::size_t operator()(pebcalc::Monomial m) const noexcept { return std::hash<std::uint64_t>{}(m.bits()); }
};
