#ifndef FAIRRANK_DIVERGENCE_HPP_
#define FAIRRANK_DIVERGENCE_HPP_

#include <span>

#include "fairrank/errors.hpp"

namespace fairrank {

/// Logarithm base used inside KL/JS divergence terms. Base2 is the project
/// default; it reproduces the published AWRF reference values.
enum class LogBase { Natural, Base2 };

/// Kullback-Leibler divergence sum p_i * log(p_i / q_i) with 0*log(0) := 0.
///
/// Both vectors must have the same length >= 2, components in [0,1] summing
/// to 1 within 1e-9 (NormalizationError otherwise). A component with
/// p_i > 0 and q_i = 0 raises DivergenceDomainError.
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     LogBase base = LogBase::Base2);

/// Jensen-Shannon divergence: mean of the two KL terms against the midpoint
/// distribution. Symmetric and bounded by 1 in Base2 (log 2 in Natural).
double jensen_shannon_divergence(std::span<const double> p, std::span<const double> q,
                                 LogBase base = LogBase::Base2);

}  // namespace fairrank

#endif  // FAIRRANK_DIVERGENCE_HPP_
