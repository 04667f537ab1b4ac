#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "maxbandit/bounds.hpp"

#ifdef MAXBANDIT_HAVE_MPFR
#include <mpfr.h>
#endif

using namespace maxbandit;

namespace {

// Three point-mass arms 0.9 / 0.5 / 0.5 with A = 1, beta = 1, eps0 = 0.25.
// All expected values below were computed by hand from the closed forms.
BanditInstance hand_instance() {
  return BanditInstance({std::make_shared<PointMass>(0.9),
                         std::make_shared<PointMass>(0.5),
                         std::make_shared<PointMass>(0.5)},
                        {1.0, 1.0, 0.25});
}

const PacParams kHandPac{0.1, 0.1};

}  // namespace

TEST_CASE("multi-arm lower bound, hand value") {
  // Two suboptimal arms, each ln(1.875) / (8 * min(0.25, 0.5)) = 0.31430.
  CHECK(thm1_lower_bound(hand_instance(), kHandPac) ==
        doctest::Approx(0.6286087).epsilon(1e-6));
}

TEST_CASE("multi-arm lower bound excludes exactly one optimal arm") {
  // Two optimal arms: only the lowest-index one is dropped from the sum, so
  // the tied arm contributes at gap 0.
  BanditInstance tied({std::make_shared<PointMass>(0.9),
                       std::make_shared<PointMass>(0.9)},
                      {1.0, 1.0, 0.25});
  const double term = std::log(1.875) / (8.0 * std::min(0.25, 0.1));
  CHECK(thm1_lower_bound(tied, kHandPac) ==
        doctest::Approx(term).epsilon(1e-12));
}

TEST_CASE("multi-arm upper bound, hand values") {
  // L = 6 ln(3 * 24.025851) = 25.666456, budget = L + ln 10 = 27.969041;
  // core = budget/0.1 + 2 * budget/0.4, init = 3 * (floor(budget/0.25) + 1).
  const auto [core, init] = thm2_upper_bound(hand_instance(), kHandPac);
  CHECK(core == doctest::Approx(419.5356159).epsilon(1e-8));
  CHECK(init == 336.0);
}

TEST_CASE("unified bounds, hand values") {
  const TailParams tail{1.0, 1.0, 0.25};
  CHECK(thm3_lower_bound(3, tail, kHandPac) ==
        doctest::Approx(13.43819602).epsilon(1e-8));
  CHECK(thm4_upper_bound(3, tail, kHandPac) ==
        doctest::Approx(71.07755279).epsilon(1e-8));
}

TEST_CASE("per-arm ratio terms, hand values") {
  const auto [t1, t2] = theta_terms(hand_instance(), kHandPac);
  CHECK(t1[0] == doctest::Approx(30.0));   // 3 / min(0.25, 0.1)
  CHECK(t1[1] == doctest::Approx(12.0));   // 3 / min(0.25, 0.5)
  CHECK(t2[0] == doctest::Approx(14.0));   // 1/0.1 + 1/0.25
  CHECK(t2[1] == doctest::Approx(6.5));    // 1/0.4 + 1/0.25
  CHECK(t1[2] == t1[1]);
  CHECK(t2[2] == t2[1]);
}

TEST_CASE("combined report is consistent with the parts") {
  const auto inst = hand_instance();
  const auto r = evaluate_bounds(inst, kHandPac);
  CHECK(r.thm2_total == doctest::Approx(r.thm2_core + r.thm2_init));
  CHECK(r.thm1_lower == doctest::Approx(thm1_lower_bound(inst, kHandPac)));
  CHECK(r.theta1.size() == 3);
  CHECK(r.theta2.size() == 3);
}

TEST_CASE("case verdicts") {
  // Large gap terms push the multi-arm core above the unified upper bound.
  const auto unified_case = case_comparison(hand_instance(), kHandPac);
  CHECK(unified_case.verdict == Verdict::unified_favored);
  CHECK(unified_case.unified_upper_beats_multi_upper);

  // 1000 arms, one good arm at a 0.5 gap, tight accuracy: the gap terms are
  // cheap next to the K/eps unified cost, so the multi-arm route wins.
  std::vector<DistPtr> arms;
  arms.push_back(std::make_shared<PointMass>(0.9));
  const auto bad = std::make_shared<PointMass>(0.4);
  for (int k = 1; k < 1000; ++k) arms.push_back(bad);
  BanditInstance big(std::move(arms), {1.0, 1.0, 0.25});
  const auto multi_case = case_comparison(big, {0.001, 0.01});
  CHECK(multi_case.verdict == Verdict::multi_arm_favored);
  CHECK(multi_case.multi_upper_beats_unified_lower);
  CHECK_FALSE(multi_case.unified_upper_beats_multi_upper);

  BanditInstance single({std::make_shared<PointMass>(0.5)}, {1.0, 1.0, 0.25});
  CHECK(case_comparison(single, kHandPac).verdict == Verdict::not_applicable);
}

TEST_CASE("ordering properties over random instances") {
  std::mt19937_64 gen(424242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    const double beta = 0.5 + 0.5 * unit(gen);
    const double A = 0.1 + 0.9 * unit(gen);
    // Stay inside the validity regime of the multi-arm lower bound.
    const double eps0 =
        std::pow(4.0 * A, -1.0 / beta) * (0.2 + 0.8 * unit(gen));
    const double eps = eps0 * (0.05 + 0.9 * unit(gen));
    const double delta = 1e-3 + (1e-2 - 1e-3) * unit(gen);
    const PacParams pac{eps, delta};

    const int K = 2 + static_cast<int>(unit(gen) * 6);
    std::vector<DistPtr> arms;
    for (int k = 0; k < K; ++k)
      arms.push_back(std::make_shared<PointMass>(2.0 * eps0 * unit(gen)));
    BanditInstance inst(std::move(arms), {A, beta, eps0});

    const auto r = evaluate_bounds(inst, pac);
    CAPTURE(it);
    // Lower bounds sit below their matching upper bounds.
    CHECK(r.thm1_lower <= r.thm2_total * (1.0 + 1e-12));
    CHECK(r.thm3_lower <= r.thm4_upper * (1.0 + 1e-12));
    // Everything is positive and finite.
    for (double v : {r.thm1_lower, r.thm2_core, r.thm2_init, r.thm3_lower,
                     r.thm4_upper})
      CHECK((v > 0.0 && std::isfinite(v)));
    // theta1 dominates theta2 for every arm.
    for (std::size_t k = 0; k < inst.num_arms(); ++k)
      CHECK(r.theta1[k] >= r.theta2[k] * (1.0 - 1e-12));

    // The core shrinks when the accuracy demand is relaxed.
    if (2.0 * eps < eps0) {
      const auto [core2, init2] =
          thm2_upper_bound(inst, {2.0 * eps, delta});
      CHECK(core2 <= r.thm2_core * (1.0 + 1e-12));
      (void)init2;
    }
  }
}

TEST_CASE("csv layout") {
  const auto inst = hand_instance();
  const auto csv = bound_report_csv(inst, evaluate_bounds(inst, kHandPac));
  std::istringstream in(csv);
  std::string line;
  int hash_lines = 0, rows = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      ++hash_lines;
    } else if (line.rfind("arm_index,", 0) == 0) {
      header_seen = true;
    } else if (!line.empty()) {
      ++rows;
    }
  }
  CHECK(hash_lines == 6);
  CHECK(header_seen);
  CHECK(rows == 3);
  CHECK(csv.find("# thm2_core,") != std::string::npos);
  // 1-based arm indices; the first row carries mu*_1 = 0.9, gap 0.
  CHECK(csv.find("\n1,0.9") != std::string::npos);
}

#ifdef MAXBANDIT_HAVE_MPFR

namespace {

constexpr mpfr_prec_t kPrec = 200;

// 200-bit re-evaluation of every closed form on the hand instance; the double
// pipeline must agree to ~1e-13 relative.
struct HighPrecisionBounds {
  double thm1, core, init, thm3, thm4;
};

double to_double(mpfr_t x) { return mpfr_get_d(x, MPFR_RNDN); }

HighPrecisionBounds reevaluate(const BanditInstance& inst,
                               const PacParams& pac) {
  const TailParams& tail = inst.tail();
  const std::size_t K = inst.num_arms();
  mpfr_t A, beta, eps0, eps, delta, tmp, tmp2, L, budget, acc;
  mpfr_inits2(kPrec, A, beta, eps0, eps, delta, tmp, tmp2, L, budget, acc,
              (mpfr_ptr)nullptr);
  mpfr_set_d(A, tail.A, MPFR_RNDN);
  mpfr_set_d(beta, tail.beta, MPFR_RNDN);
  mpfr_set_d(eps0, tail.eps0, MPFR_RNDN);
  mpfr_set_d(eps, pac.eps, MPFR_RNDN);
  mpfr_set_d(delta, pac.delta, MPFR_RNDN);

  // A * eps^beta.
  auto a_pow = [&](mpfr_t out, double base) {
    mpfr_set_d(tmp2, base, MPFR_RNDN);
    mpfr_pow(out, tmp2, beta, MPFR_RNDN);
    mpfr_mul(out, out, A, MPFR_RNDN);
  };

  // L = max(10, 6 ln(K (1 - ln(delta) / (A eps^beta)))).
  mpfr_log(tmp, delta, MPFR_RNDN);
  mpfr_neg(tmp, tmp, MPFR_RNDN);  // -ln delta
  a_pow(acc, pac.eps);
  mpfr_div(L, tmp, acc, MPFR_RNDN);
  mpfr_add_ui(L, L, 1, MPFR_RNDN);
  mpfr_mul_ui(L, L, static_cast<unsigned long>(K), MPFR_RNDN);
  mpfr_log(L, L, MPFR_RNDN);
  mpfr_mul_ui(L, L, 6, MPFR_RNDN);
  if (mpfr_cmp_ui(L, 10) < 0) mpfr_set_ui(L, 10, MPFR_RNDN);
  mpfr_add(budget, L, tmp, MPFR_RNDN);  // L - ln delta

  HighPrecisionBounds out{};

  // thm1: sum over non-optimal arms of ln(3/(16 d)) / (8 A min(eps0, e+gap)^b).
  mpfr_set_d(acc, 3.0, MPFR_RNDN);
  mpfr_set_d(tmp2, 16.0 * pac.delta, MPFR_RNDN);
  mpfr_div(acc, acc, tmp2, MPFR_RNDN);
  mpfr_log(acc, acc, MPFR_RNDN);  // acc = ln(3/(16 delta))
  mpfr_t sum;
  mpfr_init2(sum, kPrec);
  mpfr_set_ui(sum, 0, MPFR_RNDN);
  for (std::size_t k = 0; k < K; ++k) {
    if (k == inst.optimal_arm()) continue;
    a_pow(tmp, std::min(tail.eps0, pac.eps + inst.gap(k)));
    mpfr_mul_ui(tmp, tmp, 8, MPFR_RNDN);
    mpfr_div(tmp, acc, tmp, MPFR_RNDN);
    mpfr_add(sum, sum, tmp, MPFR_RNDN);
  }
  out.thm1 = to_double(sum);

  // thm2 core and init.
  mpfr_set_ui(sum, 0, MPFR_RNDN);
  for (std::size_t k = 0; k < K; ++k) {
    a_pow(tmp, std::max(pac.eps, inst.gap(k)));
    mpfr_div(tmp, budget, tmp, MPFR_RNDN);
    mpfr_add(sum, sum, tmp, MPFR_RNDN);
  }
  out.core = to_double(sum);
  a_pow(tmp, tail.eps0);
  mpfr_div(tmp, budget, tmp, MPFR_RNDN);
  mpfr_floor(tmp, tmp);
  mpfr_add_ui(tmp, tmp, 1, MPFR_RNDN);
  mpfr_mul_ui(tmp, tmp, static_cast<unsigned long>(K), MPFR_RNDN);
  out.init = to_double(tmp);

  // thm3 = K ln(3/(5 d)) / (4 A eps^beta).
  mpfr_set_d(tmp, 3.0, MPFR_RNDN);
  mpfr_set_d(tmp2, 5.0 * pac.delta, MPFR_RNDN);
  mpfr_div(tmp, tmp, tmp2, MPFR_RNDN);
  mpfr_log(tmp, tmp, MPFR_RNDN);
  mpfr_mul_ui(tmp, tmp, static_cast<unsigned long>(K), MPFR_RNDN);
  a_pow(acc, pac.eps);
  mpfr_mul_ui(acc, acc, 4, MPFR_RNDN);
  mpfr_div(tmp, tmp, acc, MPFR_RNDN);
  out.thm3 = to_double(tmp);

  // thm4 = K ln(1/d) / (A eps^beta) + 2.
  mpfr_log(tmp, delta, MPFR_RNDN);
  mpfr_neg(tmp, tmp, MPFR_RNDN);
  mpfr_mul_ui(tmp, tmp, static_cast<unsigned long>(K), MPFR_RNDN);
  a_pow(acc, pac.eps);
  mpfr_div(tmp, tmp, acc, MPFR_RNDN);
  mpfr_add_ui(tmp, tmp, 2, MPFR_RNDN);
  out.thm4 = to_double(tmp);

  mpfr_clears(A, beta, eps0, eps, delta, tmp, tmp2, L, budget, acc, sum,
              (mpfr_ptr)nullptr);
  return out;
}

}  // namespace

TEST_CASE("high-precision agreement of the closed forms") {
  std::mt19937_64 gen(777);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    const double beta = 0.5 + 0.5 * unit(gen);
    const double A = 0.1 + 0.9 * unit(gen);
    const double eps0 =
        std::pow(4.0 * A, -1.0 / beta) * (0.3 + 0.7 * unit(gen));
    const PacParams pac{eps0 * (0.1 + 0.8 * unit(gen)),
                        1e-3 + 0.05 * unit(gen)};
    std::vector<DistPtr> arms;
    const int K = 2 + static_cast<int>(unit(gen) * 5);
    for (int k = 0; k < K; ++k)
      arms.push_back(std::make_shared<PointMass>(eps0 * 2.0 * unit(gen)));
    BanditInstance inst(std::move(arms), {A, beta, eps0});

    const auto d = evaluate_bounds(inst, pac);
    const auto hp = reevaluate(inst, pac);
    CAPTURE(it);
    CHECK(d.thm1_lower == doctest::Approx(hp.thm1).epsilon(1e-13));
    CHECK(d.thm2_core == doctest::Approx(hp.core).epsilon(1e-13));
    CHECK(d.thm2_init == hp.init);
    CHECK(d.thm3_lower == doctest::Approx(hp.thm3).epsilon(1e-13));
    CHECK(d.thm4_upper == doctest::Approx(hp.thm4).epsilon(1e-13));
  }
}

#endif  // MAXBANDIT_HAVE_MPFR
