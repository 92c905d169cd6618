#include <doctest.h>

#include <random>

#include "kpotts/brute_force.hpp"
#include "kpotts/ksubmodular.hpp"
#include "oracles.hpp"
#include "support.hpp"

using kpotts::Cost;
using kpotts::kOutside;
using kpotts::Label;

namespace {

std::vector<int> to_oracle(std::span<const Label> x, int k) {
  std::vector<int> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] == kOutside ? k : x[i];
  return c;
}

// Small instance with even costs.
support::RandomPotts small_even(std::mt19937_64& rng, int n, int k, Cost cost_hi, Cost w_hi) {
  auto r = support::random_sparse(rng, n, k, cost_hi, w_hi, 0.6);
  for (Cost& v : r.unary) v *= 2;
  for (auto& e : r.edges) e.w *= 2;
  return support::make_potts(n, k, r.unary, r.edges);
}

}  // namespace

TEST_CASE("ksubmodular: meet and join") {
  CHECK(kpotts::meet(0, 1) == kOutside);
  CHECK(kpotts::join(0, 1) == kOutside);
  CHECK(kpotts::meet(kOutside, 2) == kOutside);
  CHECK(kpotts::join(kOutside, 2) == 2);
  CHECK(kpotts::meet(3, 3) == 3);
  CHECK(kpotts::join(3, 3) == 3);
  for (Label a = -1; a < 4; ++a) {
    CHECK(kpotts::meet(a, kOutside) == kOutside);
    CHECK(kpotts::join(a, kOutside) == a);
    for (Label b = -1; b < 4; ++b) {
      CHECK(kpotts::meet(a, b) == kpotts::meet(b, a));
      CHECK(kpotts::join(a, b) == kpotts::join(b, a));
    }
  }
  const std::vector<Label> x{0, 1, kOutside, 2};
  const std::vector<Label> y{0, 2, 1, kOutside};
  CHECK(kpotts::meet(x, y) == std::vector<Label>{0, kOutside, kOutside, kOutside});
  CHECK(kpotts::join(x, y) == std::vector<Label>{0, kOutside, 1, 2});
}

TEST_CASE("ksubmodular: exhaustive certificate") {
  std::mt19937_64 rng(11);
  SUBCASE("auxiliary g and the relaxation are k-submodular") {
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 3);
      const int k = 2 + static_cast<int>(rng() % 2);
      const auto r = small_even(rng, n, k, 9, 5);
      const auto aux = kpotts::build_auxiliary(r.inst);
      const auto g = [&](std::span<const Label> x) {
        return kpotts::auxiliary_energy(r.inst, aux, x);
      };
      REQUIRE(kpotts::is_ksubmodular(n, k, g).ok);
      REQUIRE(oracle::ksubmodular(oracle::auxiliary_problem(n, k, r.unary, r.edges)));

      const auto rel = kpotts::build_relaxation(r.inst);
      const auto gt = [&](std::span<const Label> x) { return rel.evaluate(x); };
      REQUIRE(kpotts::is_ksubmodular(n, k, gt).ok);
      REQUIRE(oracle::ksubmodular(oracle::relaxation_problem(n, k, r.unary, r.edges)));
    }
  }
  SUBCASE("a huge value at the all-o labeling breaks it") {
    const auto r = small_even(rng, 2, 2, 9, 5);
    const auto g = [&](std::span<const Label> x) -> Cost {
      bool all_o = true;
      for (Label a : x) all_o = all_o && a == kOutside;
      if (all_o) return 1'000'000;
      for (Label a : x) {
        if (a == kOutside) return 0;
      }
      return kpotts::energy(r.inst, x);
    };
    const auto check = kpotts::is_ksubmodular(2, 2, g);
    REQUIRE_FALSE(check.ok);
    REQUIRE(check.witness.has_value());
    const auto& w = *check.witness;
    CHECK(w.lhs > w.rhs);
    CHECK(g(kpotts::meet(w.x, w.y)) + g(kpotts::join(w.x, w.y)) == w.lhs);
    CHECK(g(w.x) + g(w.y) == w.rhs);
  }
  SUBCASE("domain too large") {
    const auto zero = [](std::span<const Label>) -> Cost { return 0; };
    CHECK_THROWS_AS(kpotts::is_ksubmodular(6, 2, zero), kpotts::CapacityError);
    CHECK_THROWS_AS(kpotts::is_ksubmodular(2, 5, zero), kpotts::CapacityError);
  }
}

TEST_CASE("ksubmodular: building the relaxation") {
  SUBCASE("single node") {
    const kpotts::PottsInstance inst(1, 3, {10, 6, 14}, {});
    const auto rel = kpotts::build_relaxation(inst);
    CHECK(rel.outside(0) == 8);
    const auto x = kpotts::minimize_relaxation(rel);
    CHECK(x == std::vector<Label>{1});
    CHECK(kpotts::persistency_from_relaxation(x) == std::vector<Label>{1});
  }
  SUBCASE("constant row") {
    const kpotts::PottsInstance inst(1, 4, {6, 6, 6, 6}, {});
    CHECK(kpotts::build_relaxation(inst).outside(0) == 6);
  }
  SUBCASE("ties count twice") {
    const kpotts::PottsInstance inst(1, 3, {4, 4, 0}, {});
    CHECK(kpotts::build_relaxation(inst).outside(0) == 2);
  }
  SUBCASE("instance A doubled") {
    const kpotts::PottsInstance inst(2, 3, {0, 10, 10, 10, 0, 10}, {{0, 1, 2}});
    const auto rel = kpotts::build_relaxation(inst);
    CHECK(rel.outside(0) == 5);
    CHECK(rel.outside(1) == 5);
    const auto oracle_min = oracle::minimize(oracle::relaxation_problem(
        2, 3, {0, 10, 10, 10, 0, 10}, {{0, 1, 2}}));
    const auto x = kpotts::minimize_relaxation(rel);
    CHECK(rel.evaluate(x) == oracle_min.value);
    CHECK(x == std::vector<Label>{0, 1});
  }
  SUBCASE("odd costs are rejected") {
    CHECK_THROWS_AS(kpotts::build_relaxation(kpotts::PottsInstance(1, 3, {5, 2, 7}, {})),
                    kpotts::ScalingError);
    CHECK_THROWS_AS(
        kpotts::build_relaxation(kpotts::PottsInstance(2, 2, {0, 2, 2, 0}, {{0, 1, 3}})),
        kpotts::ScalingError);
    CHECK_THROWS_AS(kpotts::build_relaxation(kpotts::PottsInstance(1, 1, {2}, {})),
                    kpotts::DegenerateInstance);
  }
  SUBCASE("all-zero costs") {
    const kpotts::PottsInstance inst(3, 3, std::vector<Cost>(9, 0), {{0, 1, 2}, {1, 2, 4}});
    const auto rel = kpotts::build_relaxation(inst);
    CHECK(rel.evaluate(kpotts::minimize_relaxation(rel)) == 0);
  }
  SUBCASE("agrees with f on full labelings") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 4);
      const int k = 2 + static_cast<int>(rng() % 3);
      const auto r = small_even(rng, n, k, 9, 5);
      const auto rel = kpotts::build_relaxation(r.inst);
      const auto p = oracle::relaxation_problem(n, k, r.unary, r.edges);
      kpotts::for_each_labeling(n, k, true, [&](std::span<const Label> x) {
        const Cost v = rel.evaluate(x);
        REQUIRE(v == p.eval(to_oracle(x, k)));
        bool full = true;
        for (Label a : x) full = full && a != kOutside;
        if (full) {
          REQUIRE(v == oracle::potts_energy(k, r.unary, r.edges, to_oracle(x, k)));
        }
      });
    }
  }
}

TEST_CASE("ksubmodular: minimization and persistency") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int k = 2 + static_cast<int>(rng() % 3);
    const auto r = small_even(rng, n, k, 9, 6);
    const auto rel = kpotts::build_relaxation(r.inst);
    const auto x = kpotts::minimize_relaxation(rel);
    const auto p = oracle::relaxation_problem(n, k, r.unary, r.edges);
    const auto best = oracle::minimize(p);
    REQUIRE(rel.evaluate(x) == best.value);

    // Some global minimizer of f agrees with every labeled entry.
    const auto fmin = oracle::minimize(oracle::potts_problem(n, k, r.unary, r.edges));
    const auto constraints = kpotts::persistency_from_relaxation(x);
    bool found = false;
    for (const auto& z : fmin.minimizers) {
      bool agree = true;
      for (int i = 0; i < n; ++i) {
        if (constraints[i] != kOutside && constraints[i] != z[i]) agree = false;
      }
      found = found || agree;
    }
    REQUIRE(found);

    // g(z join y*) <= g(z) for every z and every minimizer y*.
    for (const auto& ystar : best.minimizers) {
      std::vector<Label> y(n);
      for (int i = 0; i < n; ++i) y[i] = ystar[i] == k ? kOutside : ystar[i];
      kpotts::for_each_labeling(n, k, true, [&](std::span<const Label> z) {
        REQUIRE(rel.evaluate(kpotts::join(z, y)) <= rel.evaluate(z));
      });
    }
  }
  SUBCASE("all-o minimizer gives no constraints") {
    const std::vector<Label> o(3, kOutside);
    CHECK(kpotts::persistency_from_relaxation(o) == o);
  }
}

TEST_CASE("ksubmodular: relaxation labels a subset of Kovtun's nodes") {
  std::mt19937_64 rng(14);
  int conclusive = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int k = 2 + static_cast<int>(rng() % 3);
    auto r = support::perturb(rng, support::random_sparse(rng, n, k, 4, 3, 0.6));
    for (Cost& v : r.unary) v *= 2;
    for (auto& e : r.edges) e.w *= 2;
    r = support::make_potts(n, k, r.unary, r.edges);
    const auto report = kpotts::compare_with_kovtun(r.inst);
    if (report.inconclusive) continue;
    ++conclusive;
    REQUIRE(report.contained);
    CHECK(report.relaxation_fraction <= report.kovtun_fraction);
  }
  CHECK(conclusive > 60);

  SUBCASE("ties are reported as inconclusive") {
    const kpotts::PottsInstance inst(1, 2, {2, 2}, {});
    CHECK(kpotts::compare_with_kovtun(inst).inconclusive);
  }
  SUBCASE("instance A perturbed") {
    const kpotts::PottsInstance inst(2, 3, {0, 20, 22, 24, 2, 20}, {{0, 1, 2}});
    const auto report = kpotts::compare_with_kovtun(inst);
    CHECK_FALSE(report.inconclusive);
    CHECK(report.contained);
    CHECK(report.kovtun == std::vector<Label>{0, 1});
  }
}

TEST_CASE("brute force: enumeration helpers") {
  CHECK(kpotts::enumeration_size(3, 4, 100) == 64);
  CHECK(kpotts::enumeration_size(4, 4, 100) == -1);
  int count = 0;
  std::vector<Label> last;
  kpotts::for_each_labeling(2, 2, true, [&](std::span<const Label> x) {
    ++count;
    last.assign(x.begin(), x.end());
  });
  CHECK(count == 9);
  CHECK(last == std::vector<Label>{kOutside, kOutside});
  CHECK_THROWS_AS(kpotts::for_each_labeling(30, 4, false, [](std::span<const Label>) {}),
                  kpotts::CapacityError);

  const kpotts::PottsInstance inst(2, 2, {0, 1, 1, 0}, {{0, 1, 1}});
  const auto m = kpotts::brute_force_potts(inst);
  CHECK(m.value == 1);
  CHECK(m.minimizer_count == 3);
  CHECK(m.argmin == std::vector<Label>{0, 0});
  CHECK(kpotts::agrees_with_some_minimizer(m, std::vector<Label>{1, kOutside}));
  CHECK_FALSE(kpotts::agrees_with_some_minimizer(m, std::vector<Label>{1, 0}));
}
