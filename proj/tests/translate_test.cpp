#include <gtest/gtest.h>

#include "support.hpp"

using namespace pebcalc;

namespace {

using Q = RationalField;
using P = Polynomial<Q>;
using J = Justification<Q>;

template <class Fn>
Errc error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::ParseError;
}

std::vector<Monomial> backbone_monomials(const InputMcRefutation<Q>& r) {
  std::vector<Monomial> out;
  for (auto i : r.backbone) out.push_back(r.derivation.lines[i].poly.terms()[0].first);
  return out;
}

}  // namespace

TEST(BlackToMc, Path2) {
  Dag d = make_path(2);
  PebblingStrategy s{GameVariant::Black, {place(0), place(1), remove(0), remove(1)}};
  auto r = black_to_mc(d, s, Q{});
  EXPECT_EQ(backbone_monomials(r), (std::vector<Monomial>{Monomial{1}, Monomial{0, 1}, Monomial{0}, Monomial{}}));
  using K = J::Kind;
  std::vector<K> kinds;
  for (const auto& l : r.derivation.lines) kinds.push_back(l.just.kind);
  EXPECT_EQ(kinds, (std::vector<K>{K::Axiom, K::Mult, K::Axiom, K::LinComb, K::Axiom, K::LinComb}));
  auto m = check_input_refutation(pebbling_system(d, Q{}), r);
  EXPECT_EQ(m.degree, 2u);
}

TEST(BlackToMc, SingleVertex) {
  Dag d = make_path(1);
  auto r = black_to_mc(d, {GameVariant::Black, {place(0), remove(0)}}, Q{});
  EXPECT_EQ(backbone_monomials(r), (std::vector<Monomial>{Monomial{0}, Monomial{}}));
  EXPECT_EQ(check_input_refutation(pebbling_system(d, Q{}), r).degree, 1u);
}

TEST(BlackToMc, Pyramid1Optimal) {
  Dag d = make_pyramid(1);
  auto w = pebbling_price_with_witness(d, GameVariant::Black);
  auto r = black_to_mc(d, w.witness, Q{});
  EXPECT_EQ(check_input_refutation(pebbling_system(d, Q{}), r).degree, w.price);
}

TEST(BlackToMc, Errors) {
  Dag d = make_path(2);
  EXPECT_EQ(error_of([&] { black_to_mc(d, {GameVariant::Black, {place(1)}}, Q{}); }), Errc::IllegalMove);
  EXPECT_EQ(error_of([&] { black_to_mc(parse_graph("3\n0 1\n0 2"), {GameVariant::Black, {}}, Q{}); }),
            Errc::NoUniqueSink);
}

TEST(BlackToMc, RandomStrategies) {
  pebtest::Rng rng(100);
  for (int i = 0; i < 150; ++i) {
    Dag d = pebtest::random_dag(rng, 9);
    auto sys = pebbling_system(d, PrimeField(kDefaultPrime));
    auto raw = pebtest::random_black_strategy(d, rng);
    auto s = canonical_black_strategy(d, raw);
    auto ms = validate_strategy(d, s);
    auto r = black_to_mc(d, s, sys.field);
    auto m = check_input_refutation(sys, r);
    EXPECT_EQ(m.degree, ms.space);
    EXPECT_LE(m.size, ms.time * ms.space);
    EXPECT_LE(*verify_configurational(sys, to_configurational(r.derivation)).vspace, m.degree);
    // a non-canonical input still gives a valid refutation of no larger degree
    auto mr = check_input_refutation(sys, black_to_mc(d, raw, sys.field));
    EXPECT_LE(mr.degree, validate_strategy(d, raw).space);
  }
}

TEST(McToPebbling, RoundTrip) {
  pebtest::Rng rng(101);
  for (int i = 0; i < 150; ++i) {
    Dag d = pebtest::random_dag(rng, 9);
    auto s = pebtest::random_canonical_black(d, rng);
    auto ms = validate_strategy(d, s);
    auto back = mc_to_pebbling(d, black_to_mc(d, s, Q{}));
    EXPECT_EQ(back.variant, GameVariant::Black);
    auto mb = validate_strategy(d, back);
    EXPECT_EQ(mb.space, ms.space);
    EXPECT_LE(mb.time, ms.time + ms.space);
  }
}

TEST(McToPebbling, Path2AndSingleVertex) {
  Dag p2 = make_path(2);
  auto r = black_to_mc(p2, {GameVariant::Black, {place(0), place(1), remove(0), remove(1)}}, Q{});
  EXPECT_EQ(validate_strategy(p2, mc_to_pebbling(p2, r)).space, 2u);
  Dag one = make_path(1);
  auto r1 = black_to_mc(one, {GameVariant::Black, {place(0), remove(0)}}, Q{});
  EXPECT_EQ(mc_to_pebbling(one, r1).moves, (std::vector<Move>{place(0), remove(0)}));
}

TEST(McToPebbling, Errors) {
  Q q;
  Dag p2 = make_path(2);
  auto r = black_to_mc(p2, {GameVariant::Black, {place(0), place(1), remove(0), remove(1)}}, q);
  // a backbone step combining with a derived, non-axiom line
  auto bad = r;
  auto& d = bad.derivation;
  pebtest::insert_line(d, &bad.backbone, 3, {d.lines[2].poly, J::lincomb(2, 2, q.one(), q.zero())});
  d.lines[4].just.b = 3;
  EXPECT_NO_THROW(verify_derivation(pebbling_system(p2, q), d));
  EXPECT_EQ(error_of([&] { mc_to_pebbling(p2, bad); }), Errc::NotInputRefutation);
  // the refutation of path_2 is not one of path_3
  EXPECT_EQ(error_of([&] { mc_to_pebbling(make_path(3), r); }), Errc::WrongSystem);
}

TEST(RevToNs, Path2) {
  Dag d = make_path(2);
  PebblingStrategy s{GameVariant::Reversible, {place(0), place(1), remove(1), remove(0)}};
  auto c = rev_to_ns(d, s, Q{});
  ASSERT_EQ(c.g.size(), 3u);
  EXPECT_EQ(c.g.at(0), P::one(Q{}));
  EXPECT_EQ(c.g.at(1), P::one(Q{}));
  EXPECT_EQ(c.g.at(2), P::monomial(Q{}, Monomial{0}));
  EXPECT_EQ(verify_ns(pebbling_system(d, Q{}), c).degree, 2u);
}

TEST(RevToNs, SingleVertex) {
  Dag d = make_path(1);
  auto c = rev_to_ns(d, {GameVariant::Reversible, {place(0), remove(0)}}, Q{});
  EXPECT_EQ(c.g.at(0), P::one(Q{}));
  EXPECT_EQ(c.g.at(1), P::one(Q{}));
}

TEST(RevToNs, Errors) {
  Dag d = make_path(2);
  EXPECT_EQ(error_of([&] { rev_to_ns(d, {GameVariant::Reversible, {place(0), remove(0)}}, Q{}); }),
            Errc::SinkNeverPebbled);
  EXPECT_EQ(error_of([&] { rev_to_ns(d, {GameVariant::Reversible, {place(0), place(1), remove(0), remove(1)}}, Q{}); }),
            Errc::IllegalMove);
}

TEST(RevToNs, RandomStrategies) {
  pebtest::Rng rng(102);
  for (int i = 0; i < 100; ++i) {
    Dag d = pebtest::random_dag(rng, 9);
    auto s = pebtest::random_reversible(d, rng);
    auto ms = validate_strategy(d, s);
    auto sys = pebbling_system(d, Q{});
    auto c = rev_to_ns(d, s, Q{});
    EXPECT_EQ(verify_ns(sys, c).degree, ms.space);
    EXPECT_NO_THROW(verify_ns(sys, lift_to_explicit(sys, c), NsMode::Explicit));
  }
}

TEST(RevToNs, OptimalWitnesses) {
  for (Vertex n = 1; n <= 10; ++n) {
    Dag d = make_path(n);
    auto w = pebbling_price_with_witness(d, GameVariant::Reversible);
    EXPECT_LE(verify_ns(pebbling_system(d, Q{}), rev_to_ns(d, w.witness, Q{})).degree, w.price);
  }
}
