#include <doctest.h>

#include <random>

#include "kpotts/expansion.hpp"
#include "oracles.hpp"
#include "support.hpp"

using kpotts::Cost;
using kpotts::kOutside;
using kpotts::Label;

TEST_CASE("expansion: single moves") {
  SUBCASE("expanding the current label changes nothing") {
    const kpotts::PottsInstance inst(3, 3, {0, 4, 4, 4, 0, 4, 4, 4, 0}, {{0, 1, 1}, {1, 2, 1}});
    std::vector<Label> x{2, 2, 2};
    CHECK(kpotts::expand_once(inst, x, {}, 2) == 0);
    CHECK(x == std::vector<Label>{2, 2, 2});
  }
  SUBCASE("a lone node reaches its unary argmin") {
    const kpotts::PottsInstance inst(1, 4, {7, 3, 9, 5}, {});
    const auto r = kpotts::run_to_convergence(inst, {0}, {});
    CHECK(r.x == std::vector<Label>{1});
    CHECK(r.energy == 3);
  }
  SUBCASE("frozen nodes never move") {
    const kpotts::PottsInstance inst(2, 2, {0, 9, 9, 0}, {{0, 1, 1}});
    const std::vector<char> frozen{1, 0};
    const auto r = kpotts::run_to_convergence(inst, {1, 0}, frozen);
    CHECK(r.x[0] == 1);
    CHECK(r.x[1] == 1);
  }
  SUBCASE("optimal start needs one sweep") {
    const kpotts::PottsInstance inst(2, 2, {0, 5, 5, 0}, {{0, 1, 1}});
    const auto r = kpotts::run_to_convergence(inst, {0, 1}, {});
    CHECK(r.stats.sweeps == 1);
    CHECK(r.stats.accepted == 0);
    CHECK(r.x == std::vector<Label>{0, 1});
  }
  SUBCASE("bad initial labelings") {
    const kpotts::PottsInstance inst(2, 2, {0, 5, 5, 0}, {{0, 1, 1}});
    CHECK_THROWS_AS(kpotts::run_to_convergence(inst, {0}, {}), kpotts::InvalidLabeling);
    CHECK_THROWS_AS(kpotts::run_to_convergence(inst, {0, kOutside}, {}),
                    kpotts::InvalidLabeling);
  }
}

TEST_CASE("expansion: moves are optimal among expansions") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int k = 2 + static_cast<int>(rng() % 3);
    const auto r = support::random_sparse(rng, n, k, 10, 6, 0.6);
    std::vector<Label> x(n);
    for (auto& v : x) v = static_cast<Label>(rng() % k);
    std::vector<char> frozen(n);
    for (auto& f : frozen) f = rng() % 4 == 0;
    const Label a = static_cast<Label>(rng() % k);

    // Oracle: every node either keeps x_i or (if not frozen) takes a.
    std::vector<std::vector<int>> allowed(n);
    for (int i = 0; i < n; ++i) {
      allowed[i] = {x[i]};
      if (!frozen[i] && x[i] != a) allowed[i].push_back(a);
    }
    const auto best =
        oracle::minimize(oracle::potts_problem(n, k, r.unary, r.edges), allowed);
    const Cost before = oracle::potts_energy(k, r.unary, r.edges, {x.begin(), x.end()});
    auto y = x;
    const Cost delta = kpotts::expand_once(r.inst, y, frozen, a);
    REQUIRE(delta <= 0);
    REQUIRE(before + delta == std::min(before, best.value));
    for (int i = 0; i < n; ++i) {
      if (frozen[i]) REQUIRE(y[i] == x[i]);
    }
  }
}

TEST_CASE("expansion: convergence and the two-phase pipeline") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int k = 2 + static_cast<int>(rng() % 3);
    const auto r = support::random_sparse(rng, n, k, 10, 6, 0.5);
    const auto fmin = oracle::minimize(oracle::potts_problem(n, k, r.unary, r.edges));

    const auto plain = kpotts::expansion_only(r.inst);
    const auto init = kpotts::unary_argmin(r.inst);
    REQUIRE(plain.energy <= kpotts::energy(r.inst, init));
    REQUIRE(plain.energy == kpotts::energy(r.inst, plain.x));
    REQUIRE(plain.energy <= 2 * fmin.value + 1);
    for (std::size_t s = 1; s < plain.stats.sweep_energies.size(); ++s) {
      REQUIRE(plain.stats.sweep_energies[s] <= plain.stats.sweep_energies[s - 1]);
    }

    // A converged expansion cannot disagree with a smallest-cut persistent
    // label: substituting it would be an improving expansion move.
    const auto kov = kpotts::fast_kovtun(r.inst).result.x;
    for (int i = 0; i < n; ++i) {
      if (kov[i] != kOutside) REQUIRE(plain.x[i] == kov[i]);
    }

    for (bool maximize : {false, true}) {
      const auto pipe = kpotts::full_pipeline(r.inst, maximize);
      const auto& x = pipe.persistency.x;
      REQUIRE(pipe.expansion.energy == kpotts::energy(r.inst, pipe.expansion.x));
      for (int i = 0; i < n; ++i) {
        if (x[i] != kOutside) REQUIRE(pipe.expansion.x[i] == x[i]);
      }
      // Fixing the persistent nodes keeps the global optimum reachable.
      std::vector<std::vector<int>> allowed(n);
      for (int i = 0; i < n; ++i) {
        if (x[i] != kOutside) {
          allowed[i] = {x[i]};
        } else {
          for (int a = 0; a < k; ++a) allowed[i].push_back(a);
        }
      }
      REQUIRE(oracle::minimize(oracle::potts_problem(n, k, r.unary, r.edges), allowed).value ==
              fmin.value);
    }
  }
}

TEST_CASE("expansion: instance A pipeline") {
  const kpotts::PottsInstance inst(2, 3, {0, 5, 5, 5, 0, 5}, {{0, 1, 1}});
  const auto pipe = kpotts::full_pipeline(inst);
  CHECK(pipe.expansion.x == std::vector<Label>{0, 1});
  CHECK(pipe.expansion.energy == 1);
}
