#include <gtest/gtest.h>

#include "test_util.hpp"

namespace evostab {
namespace {

using testing::G;
using testing::R;
using testing::S;
using testing::superiority;

const PureWitness& pure(const std::optional<Witness>& w) { return std::get<PureWitness>(w.value().detail); }

TEST(Ess, WorkedExamples) {
  EXPECT_TRUE(is_ess(example1_game(), S({"1/2", "1/2"})));
  EXPECT_TRUE(is_ess(example2_game(), S({"0", "1"})));
  EXPECT_FALSE(is_ess(example1_game(), S({"1", "0"})));
  EXPECT_FALSE(is_ess(example1_game(), S({"0", "1"})));
}

TEST(Ess, InteriorAndBoundaryCones) {
  // Negated identity: the barycentre is an interior ESS, vertices are not Nash.
  const auto neg_i = G({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  EXPECT_TRUE(is_ess(neg_i, S({"1/3", "1/3", "1/3"})));
  EXPECT_FALSE(is_ess(neg_i, S({"1/2", "1/2", "0"})));
  // Rock-paper-scissors with zero-sum payoffs: Nash but only neutrally stable.
  const auto rps = G({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
  const auto centre = S({"1/3", "1/3", "1/3"});
  const auto d = decide_ess(rps, centre);
  ASSERT_EQ(d.status, EssStatus::not_stable);
  const auto& q = std::get<StrategyWitness>(d.witness->detail).q;
  EXPECT_NE(q, centre);
  EXPECT_LE(superiority(rps, centre, q), 0);
  // Pure p with two tied alternatives (closed-form two-direction cone).
  const auto tied = G({{0, 1, 1}, {0, -1, 2}, {0, 2, -1}});
  const auto e1 = MixedStrategy::pure(3, 0);
  EXPECT_EQ(best_response_set(tied, e1).size(), 3u);
  // Directions y: M = [[1, -1/2], [-1/2, 1]] after reduction: strictly copositive.
  EXPECT_TRUE(is_ess(tied, e1));
  const auto tied_bad = G({{0, 1, 1}, {0, -1, 4}, {0, 4, -1}});
  const auto bad = decide_ess(tied_bad, e1);
  ASSERT_EQ(bad.status, EssStatus::not_stable);
  const auto& qb = std::get<StrategyWitness>(bad.witness->detail).q;
  EXPECT_LE(superiority(tied_bad, e1, qb), 0);
  EXPECT_NE(qb, e1);
}

TEST(Ess, MixedSupportWithBoundaryDirection) {
  // p = (1/2,1/2,0) with e^3 also a best reply: free direction inside the
  // support plus one cone direction.
  const auto g = G({{-2, 0, 0}, {0, -2, 0}, {-1, -1, 2}});
  const auto p = S({"1/2", "1/2", "0"});
  ASSERT_EQ(best_response_set(g, p).size(), 3u);
  const auto d = decide_ess(g, p);
  ASSERT_EQ(d.status, EssStatus::not_stable);
  const auto& q = std::get<StrategyWitness>(d.witness->detail).q;
  EXPECT_GT(q[2], 0);
  EXPECT_LE(superiority(g, p, q), 0);
}

SymmetricGame four_direction_game(const Rational& off_diagonal) {
  // Column 1 is constant so every pure strategy is a best reply to e^1, and
  // u(e^1,q) - u(q,q) restricted to directions toward e^2..e^4 is y^T M y with
  // M = [[1, -o, 0], [-o, 1, 0], [0, 0, 1]].
  std::vector<std::vector<Rational>> u(4, std::vector<Rational>(4, Rational(0)));
  for (std::size_t i = 1; i < 4; ++i) u[i][i] = -1;
  u[1][2] = u[2][1] = off_diagonal;
  return SymmetricGame(u);
}

TEST(Ess, CertifiedGridOnThreeDirections) {
  const auto e1 = MixedStrategy::pure(4, 0);
  const auto ok = decide_ess(four_direction_game(Rational(1, 2)), e1);
  EXPECT_EQ(ok.status, EssStatus::stable);
  EXPECT_GT(ok.grid_denominator, 0);

  const auto refuted = decide_ess(four_direction_game(Rational(1)), e1);
  ASSERT_EQ(refuted.status, EssStatus::not_stable);
  const auto& q = std::get<StrategyWitness>(refuted.witness->detail).q;
  EXPECT_LE(superiority(four_direction_game(Rational(1)), e1, q), 0);

  // Strictly copositive with minimum 1/200 on the simplex: beyond grid 64.
  const auto tight = four_direction_game(Rational(99, 100));
  EXPECT_EQ(decide_ess(tight, e1).status, EssStatus::indeterminate);
  EXPECT_THROW(is_ess(tight, e1), IndeterminateError);
  EXPECT_THROW(analyze(tight, e1), IndeterminateError);
  EXPECT_EQ(decide_ess(tight, e1, EssOptions{2048}).status, EssStatus::stable);
}

TEST(Mess, WorkedExamples) {
  const auto d1 = decide_mess(example1_game(), S({"1/2", "1/2"}));
  EXPECT_FALSE(d1.holds);
  EXPECT_EQ(pure(d1.witness).j, 0u);
  EXPECT_EQ(pure(d1.witness).l, 1u);
  EXPECT_TRUE(is_mess(example2_game(), S({"0", "1"})));
  EXPECT_FALSE(is_mess(example2_game(), S({"1", "0"})));
}

TEST(LocalDominance, WorkedExamples) {
  const auto e2 = S({"0", "1"});
  EXPECT_TRUE(is_strictly_locally_dominant(example2_game(), e2));
  EXPECT_TRUE(is_locally_dominant(example2_game(), e2));
  EXPECT_FALSE(is_locally_dominant(example1_game(), S({"1/2", "1/2"})));
  const auto diag = G({{2, 0, 1}, {0, 2, 1}, {1, 1, 3}});
  for (std::size_t k = 0; k < 3; ++k) {
    const auto p = MixedStrategy::pure(3, k);
    EXPECT_TRUE(!is_strict_nash(diag, p) || is_strictly_locally_dominant(diag, p));
  }
  // Tied best reply that p does not beat everywhere: M-ESS but not strict.
  const auto weak = G({{-1, 0, 0}, {0, -1, -1}, {0, 0, 0}});
  const auto e3 = MixedStrategy::pure(3, 2);
  EXPECT_TRUE(is_mess(weak, e3));
  const auto sld = decide_strict_local_dominance(weak, e3);
  EXPECT_FALSE(sld.holds);
  EXPECT_EQ(pure(sld.witness).j, 0u);
}

TEST(Analyze, Example1) {
  const auto r = analyze(example1_game(), S({"1/2", "1/2"}));
  EXPECT_TRUE(r.is_nash);
  EXPECT_FALSE(r.is_strict_nash);
  EXPECT_TRUE(r.is_ess);
  EXPECT_FALSE(r.is_mess);
  EXPECT_FALSE(r.is_locally_dominant);
  EXPECT_FALSE(r.is_strictly_locally_dominant);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->flag, "strict_nash");
}

TEST(Analyze, Example2) {
  const auto r = analyze(example2_game(), S({"0", "1"}));
  EXPECT_TRUE(r.is_nash);
  EXPECT_FALSE(r.is_strict_nash);
  EXPECT_TRUE(r.is_ess);
  EXPECT_TRUE(r.is_mess);
  EXPECT_TRUE(r.is_locally_dominant);
  EXPECT_TRUE(r.is_strictly_locally_dominant);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->flag, "strict_nash");
  EXPECT_EQ(pure(r.witness).j, 0u);
}

TEST(Analyze, SingleStrategyGame) {
  const auto r = analyze(G({{5}}), S({"1"}));
  EXPECT_TRUE(r.is_nash && r.is_strict_nash && r.is_ess && r.is_mess && r.is_locally_dominant &&
              r.is_strictly_locally_dominant);
  EXPECT_FALSE(r.witness);
}

TEST(Analyze, DimensionMismatch) {
  EXPECT_THROW(analyze(example1_game(), S({"1"})), DimensionError);
  EXPECT_THROW(decide_strict_local_dominance(example1_game(), S({"1/3", "1/3", "1/3"})), DimensionError);
}

TEST(DisjointSupport, Examples) {
  EXPECT_TRUE(check_disjoint_support_strictness(example2_game(), S({"0", "1"}), R("1/4"), 8).holds);
  const auto g = G({{1, 1, 1}, {0, 0, 0}, {0, 0, 0}});
  EXPECT_TRUE(check_disjoint_support_strictness(g, MixedStrategy::pure(3, 0), R("1/4"), 8).holds);
  EXPECT_THROW(check_disjoint_support_strictness(example1_game(), S({"1/2", "1/2"}), R("1/4"), 8),
               PreconditionError);
}

TEST(DisjointSupport, FailsWhenTiedBestReplyMatchesOffDirection) {
  // e^3 is M-ESS; e^1 is a tied best reply earning the same as e^3 against
  // every r on the edge e^2-e^3, so the strict inequality breaks there.
  const auto g = G({{-1, 0, 0}, {0, -1, -1}, {0, 0, 0}});
  const auto res = check_disjoint_support_strictness(g, MixedStrategy::pure(3, 2), R("1/4"), 8);
  ASSERT_FALSE(res.holds);
  const auto& [s, r] = *res.counterexample;
  EXPECT_EQ(s[2], 0);
  EXPECT_EQ(payoff(g, MixedStrategy::pure(3, 2), r), payoff(g, s, r));
}

// Independent check of an ESS decision: a not_stable verdict must carry a
// witness that replays exactly, and a stable verdict must survive a grid
// scan of the best-response face.
void check_ess_against_face_grid(const SymmetricGame& g, const MixedStrategy& p, int denom) {
  const auto d = decide_ess(g, p);
  ASSERT_NE(d.status, EssStatus::indeterminate);
  const auto J = best_response_set(g, p);
  if (d.status == EssStatus::not_stable) {
    ASSERT_TRUE(d.witness);
    if (const auto* sw = std::get_if<StrategyWitness>(&d.witness->detail)) {
      EXPECT_NE(sw->q, p);
      for (std::size_t i : sw->q.support()) EXPECT_TRUE(std::binary_search(J.begin(), J.end(), i));
      EXPECT_LE(superiority(g, p, sw->q), 0);
    } else {
      EXPECT_FALSE(is_nash(g, p));
    }
    return;
  }
  EXPECT_TRUE(is_nash(g, p));
  for (const auto& q : simplex_grid(g.k(), denom)) {
    if (q == p) continue;
    bool on_face = true;
    for (std::size_t i : q.support()) on_face = on_face && std::binary_search(J.begin(), J.end(), i);
    if (on_face) {
      EXPECT_GT(superiority(g, p, q), 0) << to_string(p) << " vs " << to_string(q);
    }
  }
}

class RandomGameProperties : public ::testing::TestWithParam<int> {};

TEST_P(RandomGameProperties, FlagsAreConsistent) {
  std::mt19937_64 rng(77 + GetParam());
  const std::size_t k = 2 + GetParam() % 3;
  // Small integer entries make ties (and therefore non-strict cases) common.
  const auto g = GetParam() % 2 ? random_rational_game(k, rng) : random_game(k, rng(), -1, 1);
  for (const auto& p : simplex_grid(k, 3)) {
    StabilityReport r;
    try {
      r = analyze(g, p);
    } catch (const IndeterminateError&) {
      continue;
    }
    EXPECT_FALSE(r.is_strict_nash && !r.is_strictly_locally_dominant);
    EXPECT_FALSE(r.is_strictly_locally_dominant && !r.is_locally_dominant);
    EXPECT_EQ(r.is_mess, r.is_locally_dominant);
    EXPECT_FALSE(r.is_mess && !r.is_ess);
    EXPECT_FALSE(r.is_ess && !r.is_nash);
    EXPECT_TRUE(!r.is_mess || p.is_pure());
    EXPECT_EQ(r.is_nash, is_nash(g, p));
    EXPECT_EQ(r.is_strict_nash, is_strict_nash(g, p));
    check_ess_against_face_grid(g, p, 6);

    const auto flags = [](const StabilityReport& x) {
      return std::vector<bool>{x.is_nash, x.is_strict_nash, x.is_ess, x.is_mess, x.is_locally_dominant,
                               x.is_strictly_locally_dominant};
    };
    const auto shifted = analyze(testing::affine(g, Rational(5, 2), Rational(-4, 3)), p);
    EXPECT_EQ(flags(shifted), flags(r));
    for (const auto& perm : testing::all_permutations(k)) {
      const auto pr = analyze(testing::permute(g, perm), testing::permute(p, perm));
      EXPECT_EQ(flags(pr), flags(r));
    }
  }
}

TEST_P(RandomGameProperties, TwoByTwoPureEssIffMess) {
  std::mt19937_64 rng(500 + GetParam());
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_rational_game(2, rng, 2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto p = MixedStrategy::pure(2, i);
      EXPECT_EQ(is_ess(g, p), is_mess(g, p));
    }
  }
}

// Strict local dominance straight from its definition on a punctured grid
// neighbourhood: u(p,r) > u(s,r) for all grid s, r != p within the radius.
bool strict_local_dominance_on_grid(const SymmetricGame& g, const MixedStrategy& p, const Rational& radius,
                                    int denom) {
  std::vector<MixedStrategy> near;
  for (const auto& s : simplex_grid(g.k(), denom))
    if (s != p && l1_distance(s, p) <= radius) near.push_back(s);
  for (const auto& r : near)
    for (const auto& s : near)
      if (!(payoff(g, p, r) > payoff(g, s, r))) return false;
  return true;
}

TEST_P(RandomGameProperties, StrictLocalDominanceMatchesNeighbourhoodGrid) {
  std::mt19937_64 rng(900 + GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const auto g = random_game(k, rng(), -1, 1);
    for (std::size_t i = 0; i < k; ++i) {
      const auto p = MixedStrategy::pure(k, i);
      EXPECT_EQ(is_strictly_locally_dominant(g, p), strict_local_dominance_on_grid(g, p, R("1/8"), 32))
          << game_to_json(g).dump() << " e" << i;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGameProperties, ::testing::Range(0, 12));

}  // namespace
}  // namespace evostab
