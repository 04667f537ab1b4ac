#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxbandit/distributions.hpp"

namespace maxbandit {

// Per-arm sampling record: number of draws and the largest reward seen.
struct ArmStats {
  std::uint64_t count = 0;
  std::optional<double> best;

  void record(double x) {
    ++count;
    if (!best || x > *best) best = x;
  }
};

struct RunResult {
  double value = 0.0;             // largest reward observed over the whole run
  std::uint64_t total_samples = 0;
  std::vector<ArmStats> per_arm;
  double wall_clock_s = 0.0;
};

// Ordered set of arms with shared tail constants. Arms are verified against
// the tail assumption at construction (geometric grid, 64 points) unless
// `checked` is false.
class BanditInstance {
 public:
  BanditInstance(std::vector<DistPtr> arms, TailParams tail, bool checked = true);

  std::size_t num_arms() const { return arms_.size(); }
  const Distribution& arm(std::size_t k) const { return *arms_[k]; }
  const DistPtr& arm_ptr(std::size_t k) const { return arms_[k]; }
  const TailParams& tail() const { return tail_; }

  double mu_star() const { return mu_star_; }
  double gap(std::size_t k) const { return mu_star_ - arms_[k]->max_reward(); }
  std::vector<double> gaps() const;
  // Lowest index among arms achieving mu_star.
  std::size_t optimal_arm() const { return optimal_arm_; }

  // Single-arm reduction: equal-weight mixture of the arms with tail
  // constants (A / |K|, beta, eps0).
  BanditInstance unify() const;

 private:
  std::vector<DistPtr> arms_;
  TailParams tail_;
  double mu_star_;
  std::size_t optimal_arm_;
};

// Draws one reward from arm k, updating stats. Throws std::out_of_range on a
// bad index.
double sample_arm(const BanditInstance& instance, std::size_t k, ArmStats& stats,
                  Rng& rng);

}  // namespace maxbandit
