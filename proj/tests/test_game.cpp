#include <gtest/gtest.h>

#include "test_util.hpp"

namespace evostab {
namespace {

using testing::G;
using testing::R;
using testing::S;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("-1"), Rational(-1));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" 7/3 "), Rational(7, 3));
  EXPECT_EQ(to_string(parse_rational("4/8")), "1/2");
  EXPECT_EQ(to_string(parse_rational("-6/3")), "-2");
}

TEST(Rational, RejectsMalformed) {
  for (const char* bad : {"", "1.5", "1/0", "1/-2", "a", "1/", "/2", "1e3", "--1"})
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(ParseGame, Example1) {
  const auto g = parse_game(R"({"k":2,"payoffs":[["-1","0"],["0","-1"]]})");
  EXPECT_EQ(g.k(), 2u);
  EXPECT_EQ(g(0, 0), Rational(-1));
  EXPECT_EQ(g(0, 1), Rational(0));
}

TEST(ParseGame, OneByOne) {
  const auto g = parse_game(R"({"k":1,"payoffs":[["0"]]})");
  EXPECT_EQ(g.k(), 1u);
  EXPECT_EQ(g(0, 0), Rational(0));
}

TEST(ParseGame, NonSquareNamesField) {
  try {
    parse_game(R"({"k":2,"payoffs":[["1"]]})");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "payoffs");
  }
  try {
    parse_game(R"({"k":2,"payoffs":[["1","2"],["3"]]})");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "payoffs[1]");
  }
}

TEST(ParseGame, BadRationalNamesEntry) {
  try {
    parse_game(R"({"k":2,"payoffs":[["1","2"],["3","0.5"]]})");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "payoffs[1][1]");
  }
  EXPECT_THROW(parse_game(R"({"k":1,"payoffs":[[1]]})"), ParseError);
  EXPECT_THROW(parse_game(R"({"payoffs":[["1"]]})"), ParseError);
  EXPECT_THROW(parse_game("{not json"), ParseError);
  EXPECT_THROW(parse_game(R"({"k":1,"payoffs":[["1"]],"labels":["a","b"]})"), ParseError);
}

TEST(ParseGame, LabelsRoundTrip) {
  const auto g = parse_game(R"({"k":2,"payoffs":[["-1","2"],["0","1"]],"labels":["Hawk","Dove"]})");
  EXPECT_EQ(g.labels()[1], "Dove");
  EXPECT_EQ(parse_game(game_to_json(g).dump()), g);
}

TEST(ParseStrategy, Literal) {
  EXPECT_EQ(parse_strategy("[1/2, 1/2]"), S({"1/2", "1/2"}));
  EXPECT_EQ(parse_strategy(R"(["1/4","3/4"])"), S({"1/4", "3/4"}));
  EXPECT_THROW(parse_strategy("[1/2,1/3]"), ParseError);
  EXPECT_THROW(parse_strategy("1/2,1/2"), ParseError);
  EXPECT_THROW(parse_strategy("[-1,2]"), ParseError);
}

TEST(MixedStrategy, SupportAndPurity) {
  const auto s = S({"0", "1/3", "2/3"});
  EXPECT_EQ(s.support(), (std::vector<std::size_t>{1, 2}));
  EXPECT_FALSE(s.is_pure());
  EXPECT_EQ(MixedStrategy::pure(3, 2).pure_index(), 2u);
  EXPECT_THROW(MixedStrategy(std::vector<Rational>{}), InvalidStrategy);
}

TEST(Payoff, Example1MixtureIsMinusHalf) {
  const auto g = example1_game();
  const auto p = S({"1/2", "1/2"});
  const std::vector<MixedStrategy> mutants{S({"1/4", "3/4"}), S({"3/4", "1/4"})};
  for (const char* e : {"1/4", "1/10"}) {
    const std::vector<Rational> eps{R(e), R(e)};
    const auto w = population_state(p, mutants, eps);
    EXPECT_EQ(payoff(g, p, w), R("-1/2"));
    EXPECT_EQ(payoff(g, mutants[0], w), R("-1/2"));
  }
}

TEST(Payoff, PureEntries) {
  const auto g = G({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(payoff(g, MixedStrategy::pure(3, i), MixedStrategy::pure(3, j)), g(i, j));
}

TEST(Payoff, Example2IsMinusProduct) {
  const auto g = example2_game();
  for (auto& q : simplex_grid(2, 5))
    for (auto& r : simplex_grid(2, 7)) EXPECT_EQ(payoff(g, q, r), Rational(-q[0] * r[0]));
}

TEST(Payoff, DimensionMismatch) {
  const auto g = example1_game();
  EXPECT_THROW(payoff(g, S({"1"}), S({"1/2", "1/2"})), DimensionError);
  EXPECT_THROW(best_response_set(g, MixedStrategy::pure(3, 0)), DimensionError);
}

TEST(BestResponse, Examples) {
  EXPECT_EQ(best_response_set(example2_game(), S({"0", "1"})), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(best_response_set(example1_game(), S({"1/2", "1/2"})), (std::vector<std::size_t>{0, 1}));
  const auto dominant = G({{0, 0, 0}, {1, 1, 1}, {5, 5, 5}});
  for (const auto& p : simplex_grid(3, 4)) EXPECT_EQ(best_response_set(dominant, p), (std::vector<std::size_t>{2}));
}

TEST(Nash, Examples) {
  EXPECT_TRUE(is_nash(example1_game(), S({"1/2", "1/2"})));
  EXPECT_FALSE(is_nash(example1_game(), S({"1/4", "3/4"})));
  EXPECT_TRUE(is_nash(example2_game(), S({"0", "1"})));
  EXPECT_FALSE(is_strict_nash(example2_game(), S({"0", "1"})));
  const auto diag = G({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}});
  for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(is_strict_nash(diag, MixedStrategy::pure(3, k)));
  EXPECT_FALSE(is_strict_nash(diag, S({"1/3", "1/3", "1/3"})));
  EXPECT_TRUE(is_strict_nash(G({{0}}), S({"1"})));
}

class GameProperties : public ::testing::TestWithParam<int> {};

TEST_P(GameProperties, BilinearityAndInvariance) {
  std::mt19937_64 rng(1000 + GetParam());
  const std::size_t k = 2 + GetParam() % 3;
  const auto g = random_rational_game(k, rng);
  const auto grid = simplex_grid(k, 3);
  const Rational alpha(2, 7);
  for (std::size_t a = 0; a < grid.size(); a += 2)
    for (std::size_t b = 1; b < grid.size(); b += 3) {
      const auto& p = grid[a];
      const auto& p2 = grid[b];
      std::vector<Rational> mix(k);
      for (std::size_t i = 0; i < k; ++i) mix[i] = alpha * p[i] + (1 - alpha) * p2[i];
      const MixedStrategy pm(mix);
      for (const auto& q : grid) {
        EXPECT_EQ(payoff(g, pm, q), alpha * payoff(g, p, q) + (1 - alpha) * payoff(g, p2, q));
        EXPECT_EQ(payoff(g, q, pm), alpha * payoff(g, q, p) + (1 - alpha) * payoff(g, q, p2));
      }
    }
  const auto shifted = testing::affine(g, Rational(3, 2), Rational(-5, 3));
  for (const auto& p : grid) {
    EXPECT_EQ(best_response_set(g, p), best_response_set(shifted, p));
    EXPECT_EQ(is_nash(g, p), is_nash(shifted, p));
    if (is_strict_nash(g, p)) {
      EXPECT_TRUE(is_nash(g, p));
    }
  }
  for (const auto& perm : testing::all_permutations(k)) {
    const auto pg = testing::permute(g, perm);
    for (const auto& p : grid) {
      const auto pp = testing::permute(p, perm);
      auto J = best_response_set(g, p);
      std::vector<std::size_t> mapped;
      for (std::size_t i = 0; i < k; ++i)
        if (std::binary_search(J.begin(), J.end(), perm[i])) mapped.push_back(i);
      EXPECT_EQ(best_response_set(pg, pp), mapped);
      EXPECT_EQ(is_nash(pg, pp), is_nash(g, p));
      EXPECT_EQ(is_strict_nash(pg, pp), is_strict_nash(g, p));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(RandomGames, GameProperties, ::testing::Range(0, 12));

}  // namespace
}  // namespace evostab
