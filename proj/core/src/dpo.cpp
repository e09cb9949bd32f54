#include "meshtok/dpo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "meshtok/error.hpp"

namespace meshtok {
namespace {

void check_log_prob(double value, const char* what, std::size_t pair) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(what) + " of pair " + std::to_string(pair) + " is not finite");
  }
  if (value > 0.0) {
    throw DomainError(std::string(what) + " of pair " + std::to_string(pair) +
                      " is a positive log-probability");
  }
}

void check_batch(const DpoBatch& batch) {
  if (batch.pairs.empty()) {
    throw DomainError("DPO batch is empty");
  }
  if (!std::isfinite(batch.beta) || batch.beta < 0.0) {
    throw DomainError("beta must be finite and non-negative");
  }
  for (std::size_t n = 0; n < batch.pairs.size(); ++n) {
    const auto& p = batch.pairs[n];
    check_log_prob(p.policy_chosen, "policy_chosen", n);
    check_log_prob(p.reference_chosen, "reference_chosen", n);
    check_log_prob(p.policy_rejected, "policy_rejected", n);
    check_log_prob(p.reference_rejected, "reference_rejected", n);
  }
}

double margin(const DpoPair& p, double beta) {
  const double chosen = p.policy_chosen - p.reference_chosen;
  const double rejected = p.policy_rejected - p.reference_rejected;
  return beta * (chosen - rejected);
}

}  // namespace

double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double dpo_loss(const DpoBatch& batch) {
  check_batch(batch);
  double sum = 0.0;
  for (const auto& p : batch.pairs) {
    // -log sigmoid(z) == softplus(-z)
    sum += softplus(-margin(p, batch.beta));
  }
  return sum / static_cast<double>(batch.pairs.size());
}

std::vector<DpoGradient> dpo_loss_grad(const DpoBatch& batch) {
  check_batch(batch);
  const double n = static_cast<double>(batch.pairs.size());
  std::vector<DpoGradient> grads;
  grads.reserve(batch.pairs.size());
  for (const auto& p : batch.pairs) {
    const double g = batch.beta * sigmoid(-margin(p, batch.beta)) / n;
    grads.push_back({-g, g, g, -g});
  }
  return grads;
}

}  // namespace meshtok
