#pragma once

#include <vector>

namespace meshtok {

/// Summed sequence log-probabilities for one preference pair.
struct DpoPair {
  double policy_chosen = 0.0;
  double reference_chosen = 0.0;
  double policy_rejected = 0.0;
  double reference_rejected = 0.0;
};

struct DpoBatch {
  std::vector<DpoPair> pairs;
  double beta = 0.1;
};

/// Mean over pairs of -log sigmoid(beta * (d_chosen - d_rejected)), where
/// d = log pi_policy - log pi_reference. Evaluated as a stable softplus.
/// Throws DomainError for an empty batch, beta < 0, non-finite values or
/// positive log-probabilities.
double dpo_loss(const DpoBatch& batch);

/// Derivatives of dpo_loss with respect to each of the four inputs of a pair.
using DpoGradient = DpoPair;

std::vector<DpoGradient> dpo_loss_grad(const DpoBatch& batch);

/// log(1 + exp(x)) without overflow.
double softplus(double x);

/// 1 / (1 + exp(-x)) without overflow.
double sigmoid(double x);

}  // namespace meshtok
