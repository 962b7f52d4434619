#include <gtest/gtest.h>

#include "support.hpp"

using namespace pebcalc;

namespace {

PebblingStrategy black(std::vector<Move> moves) { return {GameVariant::Black, std::move(moves)}; }

Errc validation_error(const Dag& d, const PebblingStrategy& s) {
  try {
    validate_strategy(d, s);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "strategy accepted";
  return Errc::ParseError;
}

}  // namespace

TEST(ApplyMove, Examples) {
  Dag p2 = make_path(2);
  EXPECT_EQ(apply_move(p2, {}, place(0), GameVariant::Black), (PebbleConfig{1, 0}));
  EXPECT_EQ(apply_move(p2, {3, 0}, remove(1), GameVariant::Reversible), (PebbleConfig{1, 0}));
  EXPECT_THROW(apply_move(p2, {2, 0}, remove(1), GameVariant::Reversible), Error);
  EXPECT_EQ(apply_move(p2, {2, 0}, remove(1), GameVariant::Black), (PebbleConfig{}));
  EXPECT_EQ(apply_move(p2, {}, place(1, Color::White), GameVariant::White), (PebbleConfig{0, 2}));
  EXPECT_THROW(apply_move(p2, {0, 2}, remove(1, Color::White), GameVariant::White), Error);
  EXPECT_THROW(apply_move(p2, {}, place(0, Color::White), GameVariant::Black), Error);
  try {
    apply_move(p2, {}, place(5), GameVariant::Black);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownVertex);
  }
}

TEST(ValidateStrategy, Examples) {
  Dag p2 = make_path(2);
  auto m = validate_strategy(p2, black({place(0), place(1), remove(0), remove(1)}));
  EXPECT_EQ(m.time, 4u);
  EXPECT_EQ(m.space, 2u);
  try {
    validate_strategy(p2, black({place(1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IllegalMove);
    EXPECT_EQ(e.index(), std::optional<std::size_t>(0));
  }
  EXPECT_EQ(validation_error(p2, black({place(0), remove(0)})), Errc::DoesNotTouchSink);
  EXPECT_EQ(validation_error(p2, black({place(0), place(1), remove(0)})), Errc::DoesNotEndEmpty);
  Dag one = make_path(1);
  for (auto v : {GameVariant::Black, GameVariant::Reversible, GameVariant::BlackWhite}) {
    auto r = validate_strategy(one, {v, {place(0), remove(0)}});
    EXPECT_EQ(r.time, 2u);
    EXPECT_EQ(r.space, 1u);
  }
}

TEST(Dual, Examples) {
  Dag p2 = make_path(2);
  auto s = black({place(0), place(1), remove(0), remove(1)});
  auto w = black_white_dual(s);
  EXPECT_EQ(w.variant, GameVariant::White);
  EXPECT_EQ(w.moves, (std::vector<Move>{place(1, Color::White), place(0, Color::White), remove(1, Color::White),
                                        remove(0, Color::White)}));
  EXPECT_EQ(validate_strategy(p2, w), validate_strategy(p2, s));
  EXPECT_EQ(black_white_dual(w), s);
  auto single = black({place(0), remove(0)});
  EXPECT_EQ(black_white_dual(single).moves, (std::vector<Move>{place(0, Color::White), remove(0, Color::White)}));
}

TEST(Dual, RandomStrategiesKeepMeasures) {
  pebtest::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    Dag d = pebtest::random_dag(rng, 9);
    auto s = pebtest::random_black_strategy(d, rng);
    auto w = black_white_dual(s);
    EXPECT_EQ(validate_strategy(d, w), validate_strategy(d, s));
    EXPECT_EQ(black_white_dual(w), s);
  }
}

TEST(Price, Paths) {
  for (Vertex n = 2; n <= 16; ++n) EXPECT_EQ(pebbling_price(make_path(n), GameVariant::Black), 2u) << n;
  EXPECT_EQ(pebbling_price(make_path(1), GameVariant::Reversible), 1u);
  // reversible path price grows like log n: k pebbles reach 2^k - 1 vertices
  for (Vertex n = 1; n <= 16; ++n) {
    std::size_t expect = 0;
    while ((std::size_t{1} << expect) - 1 < n) ++expect;
    EXPECT_EQ(pebbling_price(make_path(n), GameVariant::Reversible), expect) << n;
  }
}

TEST(Price, PyramidsAndTrees) {
  for (Vertex h = 1; h <= 3; ++h) EXPECT_EQ(pebbling_price(make_pyramid(h), GameVariant::Black), h + 2) << h;
  for (Vertex h = 1; h <= 3; ++h) EXPECT_EQ(pebbling_price(make_binary_tree(h), GameVariant::Black), h + 2) << h;
}

TEST(Price, HierarchyAndWhiteEqualsBlack) {
  for (Vertex n = 1; n <= 5; ++n)
    for (const Dag& d : all_single_sink_dags(n)) {
      auto bw = pebbling_price(d, GameVariant::BlackWhite);
      auto b = pebbling_price(d, GameVariant::Black);
      auto r = pebbling_price(d, GameVariant::Reversible);
      EXPECT_LE(bw, b);
      EXPECT_LE(b, r);
      EXPECT_EQ(pebbling_price(d, GameVariant::White), b);
    }
}

TEST(Price, WitnessesReplay) {
  pebtest::Rng rng(4);
  for (int i = 0; i < 40; ++i) {
    Dag d = pebtest::random_dag(rng, 8);
    for (auto v : {GameVariant::Black, GameVariant::White, GameVariant::BlackWhite, GameVariant::Reversible}) {
      auto r = pebbling_price_with_witness(d, v);
      EXPECT_EQ(r.witness.variant, v);
      EXPECT_EQ(validate_strategy(d, r.witness).space, r.price);
    }
  }
}

TEST(Price, GraphTooLarge) {
  try {
    pebbling_price(make_path(25), GameVariant::Black);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GraphTooLarge);
  }
  EXPECT_THROW(pebbling_price(make_path(17), GameVariant::BlackWhite), Error);
  EXPECT_THROW(pebbling_price(make_path(10), GameVariant::Black, std::nullopt, SearchLimits{8, 8}), Error);
}

TEST(Price, ExplicitTargetOnMultiSink) {
  Dag d = parse_graph("3\n0 1\n0 2\n");
  EXPECT_THROW(pebbling_price(d, GameVariant::Black), Error);
  EXPECT_EQ(pebbling_price(d, GameVariant::Black, Vertex{1}), 2u);
}

TEST(MinTime, Examples) {
  Dag p2 = make_path(2);
  EXPECT_EQ(min_time_with_space(p2, GameVariant::Black, 2), std::optional<std::size_t>(4));
  EXPECT_EQ(min_time_with_space(p2, GameVariant::Black, 1), std::nullopt);
  pebtest::Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    Dag d = pebtest::random_dag(rng, 9);
    auto t = min_time_with_space(d, GameVariant::Black, d.size());
    ASSERT_TRUE(t);
    EXPECT_LE(*t, 2 * d.size());
  }
}

TEST(MinTime, NonIncreasingAndInfeasibleBelowPrice) {
  pebtest::Rng rng(10);
  for (int i = 0; i < 30; ++i) {
    Dag d = pebtest::random_dag(rng, 8);
    for (auto v : {GameVariant::Black, GameVariant::Reversible, GameVariant::BlackWhite}) {
      auto price = pebbling_price(d, v);
      std::optional<std::size_t> prev;
      for (std::size_t s = 1; s <= d.size(); ++s) {
        auto t = min_time_with_space(d, v, s);
        EXPECT_EQ(t.has_value(), s >= price);
        if (prev && t) { EXPECT_LE(*t, *prev); }
        if (t) prev = t;
      }
    }
  }
}

TEST(Frontier, Examples) {
  auto f = tradeoff_frontier(make_path(2), GameVariant::Black);
  EXPECT_EQ(f, (std::vector<FrontierPoint>{{2, 4}}));
  EXPECT_EQ(tradeoff_frontier(make_path(1), GameVariant::Black), (std::vector<FrontierPoint>{{1, 2}}));
  Dag pyr = make_pyramid(2);
  auto fp = tradeoff_frontier(pyr, GameVariant::Black);
  ASSERT_FALSE(fp.empty());
  EXPECT_EQ(fp.front().space, pebbling_price(pyr, GameVariant::Black));
  for (std::size_t i = 1; i < fp.size(); ++i) EXPECT_LE(fp[i].min_time, fp[i - 1].min_time);
}

TEST(Canonical, ShapeAndMeasures) {
  pebtest::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    Dag d = pebtest::random_dag(rng, 10);
    auto s = pebtest::random_black_strategy(d, rng);
    auto c = canonical_black_strategy(d, s);
    auto ms = validate_strategy(d, s), mc = validate_strategy(d, c);
    EXPECT_LE(mc.time, ms.time);
    EXPECT_LE(mc.space, ms.space);
    EXPECT_EQ(canonical_black_strategy(d, c), c);
    EXPECT_EQ(c.moves.back(), remove(d.unique_sink()));
  }
}
