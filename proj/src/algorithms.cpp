#include "maxbandit/algorithms.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "maxbandit/log.hpp"

namespace maxbandit {

namespace {

double best_value(const std::vector<ArmStats>& per_arm) {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& s : per_arm)
    if (s.best && *s.best > v) v = *s.best;
  return v;
}

std::uint64_t total_count(const std::vector<ArmStats>& per_arm) {
  std::uint64_t t = 0;
  for (const auto& s : per_arm) t += s.count;
  return t;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

}  // namespace

void PacParams::validate(const TailParams& tail) const {
  tail.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("PacParams: eps must be > 0");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("PacParams: delta must lie in (0, 1)");
  if (eps > tail.eps0) {
    std::ostringstream msg;
    msg << "eps = " << eps << " exceeds eps0 = " << tail.eps0
        << "; the tail assumption gives no information at this accuracy and "
           "the sample-complexity guarantees do not apply";
    warn(msg.str());
  }
}

double compute_L(std::size_t K_size, const TailParams& tail,
                 const PacParams& pac, bool clamp) {
  pac.validate(tail);
  if (K_size == 0) throw std::invalid_argument("compute_L: empty arm set");
  const double ratio =
      -std::log(pac.delta) / (tail.A * std::pow(pac.eps, tail.beta));
  const double L = 6.0 * std::log(static_cast<double>(K_size) * (1.0 + ratio));
  return clamp ? std::max(L, 10.0) : L;
}

double ucb_radius(double count, double L, const TailParams& tail,
                  const PacParams& pac) {
  if (!(count > 0.0)) throw std::invalid_argument("ucb_radius: count must be > 0");
  return std::pow((L - std::log(pac.delta)) / (tail.A * count),
                  1.0 / tail.beta);
}

MaxCbSchedule max_cb_schedule(std::size_t K_size, const TailParams& tail,
                              const PacParams& pac, bool clamp) {
  MaxCbSchedule s;
  s.L = compute_L(K_size, tail, pac, clamp);
  const double budget = s.L - std::log(pac.delta);
  s.N0 = static_cast<std::uint64_t>(
             std::floor(budget / (tail.A * std::pow(tail.eps0, tail.beta)))) +
         1;
  s.per_arm_cap = static_cast<std::uint64_t>(std::floor(
                      budget / (tail.A * std::pow(pac.eps, tail.beta)))) +
                  1;
  s.total_cap = static_cast<std::uint64_t>(K_size) * s.per_arm_cap;
  return s;
}

RunResult run_max_cb(const BanditInstance& instance, const PacParams& pac,
                     Rng& rng, const MaxCbConfig& cfg) {
  const Stopwatch timer;
  const std::size_t K = instance.num_arms();
  const auto sched = max_cb_schedule(K, instance.tail(), pac, cfg.clamp_L);

  RunResult result;
  result.per_arm.resize(K);
  for (std::size_t k = 0; k < K; ++k)
    for (std::uint64_t i = 0; i < sched.N0; ++i)
      sample_arm(instance, k, result.per_arm[k], rng);

  for (;;) {
    std::size_t leader = 0;
    double leader_index = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
      const double y =
          *result.per_arm[k].best +
          ucb_radius(static_cast<double>(result.per_arm[k].count), sched.L,
                     instance.tail(), pac);
      if (y > leader_index) {  // strict: ties resolve to the lowest index
        leader_index = y;
        leader = k;
      }
    }
    const double radius =
        ucb_radius(static_cast<double>(result.per_arm[leader].count), sched.L,
                   instance.tail(), pac);
    if (radius < pac.eps) break;
    sample_arm(instance, leader, result.per_arm[leader], rng);
  }

  result.value = best_value(result.per_arm);
  result.total_samples = total_count(result.per_arm);
  result.wall_clock_s = timer.seconds();
  return result;
}

RunResult run_maximal_eliminator(const BanditInstance& instance,
                                 const PacParams& pac, Rng& rng,
                                 const MeConfig& cfg) {
  const Stopwatch timer;
  const TailParams& tail = instance.tail();
  pac.validate(tail);
  const std::size_t K = instance.num_arms();

  const double ratio =
      -std::log(pac.delta) / (tail.A * std::pow(pac.eps, tail.beta));
  const double L_me =
      std::log(12.0 * std::log(static_cast<double>(K) * (1.0 + ratio)));
  const double budget = L_me - std::log(pac.delta);
  if (!(budget > 0.0))
    throw std::invalid_argument(
        "run_maximal_eliminator: nonpositive confidence budget");
  const std::uint64_t n0 =
      static_cast<std::uint64_t>(
          std::floor(budget / (tail.A * std::pow(tail.eps0, tail.beta)))) +
      1;

  RunResult result;
  result.per_arm.resize(K);
  std::vector<std::size_t> survivors(K);
  for (std::size_t k = 0; k < K; ++k) survivors[k] = k;

  std::uint64_t cumulative = 0;  // per-arm draws so far (S_t)
  for (int t = 1;; ++t) {
    if (t > cfg.max_phases) {
      std::ostringstream msg;
      msg << "run_maximal_eliminator: exceeded " << cfg.max_phases
          << " phases without stopping";
      throw std::runtime_error(msg.str());
    }
    const std::uint64_t batch = (std::uint64_t{1} << (t - 1)) * n0;
    for (std::size_t k : survivors)
      for (std::uint64_t i = 0; i < batch; ++i)
        sample_arm(instance, k, result.per_arm[k], rng);
    cumulative += batch;

    const double ub_arg =
        cfg.literal_ub_arg
            ? (std::pow(2.0, t) - 0.5) * static_cast<double>(n0)
            : static_cast<double>(cumulative);
    const double radius =
        std::pow(budget / (tail.A * ub_arg), 1.0 / tail.beta);
    if (radius < pac.eps) break;

    double max_v = -std::numeric_limits<double>::infinity();
    for (std::size_t k : survivors) max_v = std::max(max_v, *result.per_arm[k].best);
    std::vector<std::size_t> next;
    next.reserve(survivors.size());
    for (std::size_t k : survivors)
      if (*result.per_arm[k].best + radius >= max_v) next.push_back(k);
    survivors = std::move(next);
  }

  result.value = best_value(result.per_arm);
  result.total_samples = total_count(result.per_arm);
  result.wall_clock_s = timer.seconds();
  return result;
}

std::uint64_t unified_sample_count(std::size_t K_size, const TailParams& tail,
                                   const PacParams& pac) {
  pac.validate(tail);
  const double n = std::ceil(-std::log(pac.delta) *
                             static_cast<double>(K_size) /
                             (tail.A * std::pow(pac.eps, tail.beta)));
  if (!(n >= 0.0) || n >= 9.2e18) {
    std::ostringstream msg;
    msg << "unified_sample_count: required count " << n
        << " does not fit a 64-bit counter";
    throw std::overflow_error(msg.str());
  }
  return static_cast<std::uint64_t>(n) + 1;
}

RunResult run_unified_arm(const BanditInstance& instance, const PacParams& pac,
                          Rng& rng) {
  const Stopwatch timer;
  const std::uint64_t n =
      unified_sample_count(instance.num_arms(), instance.tail(), pac);
  const BanditInstance unified = instance.unify();

  RunResult result;
  result.per_arm.resize(1);
  for (std::uint64_t i = 0; i < n; ++i)
    sample_arm(unified, 0, result.per_arm[0], rng);
  result.value = *result.per_arm[0].best;
  result.total_samples = n;
  result.wall_clock_s = timer.seconds();
  return result;
}

}  // namespace maxbandit
