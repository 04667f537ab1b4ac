#include "maxbandit/bandit.hpp"

#include <sstream>
#include <stdexcept>

namespace maxbandit {

namespace {
constexpr int kConstructionGrid = 64;
}

BanditInstance::BanditInstance(std::vector<DistPtr> arms, TailParams tail,
                               bool checked)
    : arms_(std::move(arms)), tail_(tail) {
  tail_.validate();
  if (arms_.empty())
    throw std::invalid_argument("BanditInstance: needs at least one arm");
  for (std::size_t k = 0; k < arms_.size(); ++k) {
    if (!arms_[k]) throw std::invalid_argument("BanditInstance: null arm");
    if (checked) {
      const auto rep = check_assumption1(*arms_[k], tail_, kConstructionGrid);
      if (!rep.pass) {
        std::ostringstream msg;
        msg << "BanditInstance: arm " << (k + 1)
            << " violates the tail assumption at eps = " << rep.violating_eps
            << " (required " << rep.required << ", got " << rep.actual << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  mu_star_ = arms_[0]->max_reward();
  optimal_arm_ = 0;
  for (std::size_t k = 1; k < arms_.size(); ++k) {
    if (arms_[k]->max_reward() > mu_star_) {
      mu_star_ = arms_[k]->max_reward();
      optimal_arm_ = k;
    }
  }
}

std::vector<double> BanditInstance::gaps() const {
  std::vector<double> g(arms_.size());
  for (std::size_t k = 0; k < arms_.size(); ++k) g[k] = gap(k);
  return g;
}

BanditInstance BanditInstance::unify() const {
  const double w = 1.0 / static_cast<double>(arms_.size());
  std::vector<double> weights(arms_.size(), w);
  auto mixture =
      std::make_shared<FiniteMixture>(std::move(weights), arms_);
  TailParams unified_tail{tail_.A / static_cast<double>(arms_.size()),
                          tail_.beta, tail_.eps0};
  return BanditInstance({mixture}, unified_tail, /*checked=*/false);
}

double sample_arm(const BanditInstance& instance, std::size_t k, ArmStats& stats,
                  Rng& rng) {
  if (k >= instance.num_arms())
    throw std::out_of_range("sample_arm: arm index out of range");
  const double x = instance.arm(k).sample(rng);
  stats.record(x);
  return x;
}

}  // namespace maxbandit
