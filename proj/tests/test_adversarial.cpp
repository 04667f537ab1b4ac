#include <cmath>
#include <random>

#include <doctest.h>

#include "maxbandit/adversarial.hpp"

using namespace maxbandit;

namespace {

const TailParams kTail{1.0, 1.0, 0.25};
const PacParams kPac{0.1, 0.05};

// Uniform(0,1) optimal arm plus a Uniform(0,0.5) arm at gap 0.5.
BanditInstance two_uniform() {
  return BanditInstance({std::make_shared<Uniform>(0.0, 1.0),
                         std::make_shared<Uniform>(0.0, 0.5)},
                        kTail);
}

}  // namespace

TEST_CASE("quadrature on known densities") {
  CHECK(integrate_density(Uniform(0.0, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Density singular at the right endpoint.
  CHECK(integrate_density(PowerTail(1.0, 0.25, 0.5)) ==
        doctest::Approx(1.0).epsilon(1e-7));
  CHECK(integrate_density(PowerTail(0.0, 1.0, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Pure atom: the integral is the atom mass.
  CHECK(integrate_density(PointMass(0.3)) == 1.0);
}

TEST_CASE("precondition rejections") {
  const auto inst = two_uniform();
  CHECK_THROWS_AS(build_hypothesis_multi(inst, 5, kPac), std::out_of_range);
  CHECK_THROWS_AS(build_hypothesis_multi(inst, 0, {0.3, 0.05}),
                  std::invalid_argument);  // eps >= eps0

  // eps0 above (4A)^(-1/beta) = 0.25.
  BanditInstance wide({std::make_shared<Uniform>(0.0, 1.0)}, {1.0, 1.0, 0.5});
  CHECK_THROWS_AS(build_hypothesis_multi(wide, 0, kPac),
                  std::invalid_argument);

  // Mixture bases have no supported decomposition.
  BanditInstance mixed(
      {std::make_shared<FiniteMixture>(
          std::vector<double>{0.5, 0.5},
          std::vector<DistPtr>{std::make_shared<PointMass>(0.2),
                               std::make_shared<PointMass>(0.9)})},
      kTail);
  CHECK_THROWS_AS(build_hypothesis_multi(mixed, 0, kPac),
                  std::invalid_argument);
}

TEST_CASE("wide-gap branch, hand values") {
  // Arm 1: D = 0.6 >= eps0, so the whole base is reweighted by
  // gamma1 = 1 - A eps0 = 0.75 and the tail fills (0.85, 1.1].
  const auto inst = two_uniform();
  const auto h = build_hypothesis_multi(inst, 1, kPac);
  CHECK(h.case_a);
  CHECK(h.gap == doctest::Approx(0.5));
  CHECK(h.gamma1 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(h.gamma_k == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(h.t_k == doctest::Approx(std::log(3.75) / 2.0).epsilon(1e-12));
  CHECK_FALSE(h.gamma2.has_value());
  CHECK(h.expected_max == doctest::Approx(1.1));

  const auto& d = *h.perturbed;
  CHECK(d.max_reward() == doctest::Approx(1.1));
  CHECK(d.cdf(0.25) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(d.cdf(0.5) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(d.cdf(0.85) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(d.cdf(1.0) == doctest::Approx(0.90).epsilon(1e-12));
  CHECK(d.cdf(1.1) == doctest::Approx(1.0).epsilon(1e-12));
  // The new arm meets the tail assumption with equality at eps.
  CHECK(d.tail_mass(0.1) == doctest::Approx(0.1).epsilon(1e-12));

  const auto checks = verify_construction(h, kTail);
  CHECK(checks.pass());
  CHECK(checks.integral == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("narrow-gap branch on a continuous base, hand values") {
  // Perturbing the optimal arm itself: D = eps = 0.1 < eps0. The level point
  // of Uniform(0,1) at 0.75 has no atom, so gamma3 falls back to gamma2.
  const auto inst = two_uniform();
  const auto h = build_hypothesis_multi(inst, 0, kPac);
  CHECK_FALSE(h.case_a);
  CHECK(*h.mu_bar == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(h.atom_mass == doctest::Approx(0.0));
  CHECK(*h.gamma2 == doctest::Approx(1.0 - 0.1 / 0.75).epsilon(1e-9));
  CHECK(*h.gamma3 == doctest::Approx(*h.gamma2).epsilon(1e-9));
  CHECK(h.gamma_k == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(h.t_k == doctest::Approx(std::log(3.75) / 0.8).epsilon(1e-12));

  const auto& d = *h.perturbed;
  CHECK(d.cdf(0.5) == doctest::Approx(0.4333333333).epsilon(1e-7));
  CHECK(d.cdf(0.75) == doctest::Approx(0.65).epsilon(1e-7));
  CHECK(d.cdf(0.9) == doctest::Approx(0.8).epsilon(1e-7));
  CHECK(d.cdf(1.0) == doctest::Approx(0.9).epsilon(1e-7));
  CHECK(d.cdf(1.05) == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(d.cdf(1.1) == doctest::Approx(1.0).epsilon(1e-12));

  const auto checks = verify_construction(h, kTail);
  CHECK(checks.pass());
}

TEST_CASE("narrow-gap branch on an atomic base, hand values") {
  // A point mass concentrates everything at the cut: the atom is reweighted to
  // gamma3 = 1 - A D = 0.9 and the tail carries the remaining 0.1.
  BanditInstance inst({std::make_shared<PointMass>(1.0)}, kTail);
  const auto h = build_hypothesis_multi(inst, 0, kPac);
  CHECK_FALSE(h.case_a);
  CHECK(*h.mu_bar == doctest::Approx(1.0));
  CHECK(h.atom_mass == doctest::Approx(1.0));
  CHECK(*h.gamma3 == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(*h.gamma2 == doctest::Approx(1.0 - 0.1 / 0.75).epsilon(1e-12));

  const auto& d = *h.perturbed;
  CHECK(d.cdf(0.999) == doctest::Approx(0.0));
  CHECK(d.cdf(1.0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(d.cdf(1.05) == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(d.cdf(1.1) == doctest::Approx(1.0).epsilon(1e-12));

  const auto checks = verify_construction(h, kTail);
  CHECK(checks.pass());
}

TEST_CASE("single-arm reduction hypothesis, hand values") {
  const auto inst = two_uniform();
  const auto h = build_hypothesis_unified(inst, kPac);
  CHECK(h.gamma == doctest::Approx(0.95).epsilon(1e-12));  // 1 - A eps / K
  CHECK(h.t == doctest::Approx(std::log(12.0) / 0.2).epsilon(1e-12));
  CHECK(h.expected_max == doctest::Approx(1.1));

  // The carved mass 0.05 is removed below the 0.875-level point of the
  // reduced mixture (mu_bar = 0.75), leaving its top 0.125 of mass intact.
  const auto& d = *h.perturbed;
  const double g2 = 1.0 - 0.05 / 0.875;
  CHECK(d.cdf(0.5) == doctest::Approx(g2 * 0.75).epsilon(1e-9));
  CHECK(d.cdf(0.75) == doctest::Approx(g2 * 0.875).epsilon(1e-9));
  CHECK(d.cdf(1.0) == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(d.cdf(1.1) == doctest::Approx(1.0).epsilon(1e-12));
  // Tail segment has coefficient A / K = 0.5.
  CHECK(d.cdf(1.05) == doctest::Approx(0.95 + 0.05 - 0.5 * 0.05).epsilon(1e-9));

  const auto checks = verify_construction(h, kTail);
  CHECK(checks.pass());
}

TEST_CASE("perturbed sampler passes a goodness-of-fit check") {
  // Continuous construction (no atoms): KS at the 99.9% level, n = 1e5.
  const auto h = build_hypothesis_multi(two_uniform(), 0, kPac);
  const auto& d = *h.perturbed;
  const int n = 100000;
  Rng rng(31337);
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = d.sample(rng);
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double F = d.cdf(xs[i]);
    ks = std::max(ks, std::abs(F - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - F));
  }
  CHECK(ks < 1.9495 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("constructions verify across random instances") {
  std::mt19937_64 gen(20260823);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int it = 0; it < 60; ++it) {
    const double beta = 0.5 + 0.5 * unit(gen);
    const double A = 0.2 + 0.8 * unit(gen);
    const double eps0 =
        std::pow(4.0 * A, -1.0 / beta) * (0.3 + 0.7 * unit(gen));
    const TailParams tail{A, beta, eps0};
    const PacParams pac{eps0 * (0.1 + 0.8 * unit(gen)),
                        1e-3 + 0.1 * unit(gen)};

    const int K = 1 + static_cast<int>(unit(gen) * 4);
    std::vector<DistPtr> arms;
    for (int k = 0; k < K; ++k) {
      const double mu = 3.0 * eps0 * unit(gen);
      if (unit(gen) < 0.5)
        arms.push_back(std::make_shared<PowerTail>(mu, A, beta));
      else
        arms.push_back(std::make_shared<PointMass>(mu));
    }
    BanditInstance inst(std::move(arms), tail);

    CAPTURE(it);
    for (int k = 0; k < K; ++k) {
      const auto h = build_hypothesis_multi(inst, k, pac);
      CHECK(h.perturbed->max_reward() ==
            doctest::Approx(inst.mu_star() + pac.eps));
      CHECK(h.gamma_k < 1.0);
      CHECK(h.t_k > 0.0);
      const auto c = verify_construction(h, tail);
      CAPTURE(k);
      CAPTURE(c.integral);
      CHECK(c.normalization);
      CHECK(c.new_maximum);
      CHECK(c.assumption1);
      CHECK(c.gamma_brackets);
    }

    const auto u = build_hypothesis_unified(inst, pac);
    const auto uc = verify_construction(u, tail);
    CHECK(uc.normalization);
    CHECK(uc.new_maximum);
    CHECK(uc.assumption1);
    CHECK(uc.gamma_brackets);
    CHECK(u.t > 0.0);
  }
}
