#include "fairrank/divergence.hpp"

#include <cmath>
#include <vector>

namespace fairrank {

namespace {

void check_distribution(std::span<const double> v, const char* name) {
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw NormalizationError(std::string(name) + " has a component outside [0,1]");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NormalizationError(std::string(name) + " does not sum to 1");
  }
}

}  // namespace

double kl_divergence(std::span<const double> p, std::span<const double> q, LogBase base) {
  if (p.size() != q.size() || p.size() < 2) {
    throw NormalizationError("KL divergence requires two equal-length vectors of size >= 2");
  }
  check_distribution(p, "p");
  check_distribution(q, "q");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) {
        throw DivergenceDomainError("KL divergence undefined: p_i > 0 with q_i = 0");
      }
      sum += p[i] * std::log(p[i] / q[i]);
    }
  }
  return base == LogBase::Base2 ? sum / std::log(2.0) : sum;
}

double jensen_shannon_divergence(std::span<const double> p, std::span<const double> q,
                                 LogBase base) {
  if (p.size() != q.size() || p.size() < 2) {
    throw NormalizationError("JS divergence requires two equal-length vectors of size >= 2");
  }
  std::vector<double> mid(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mid[i] = 0.5 * (p[i] + q[i]);
  return 0.5 * kl_divergence(p, mid, base) + 0.5 * kl_divergence(q, mid, base);
}

}  // namespace fairrank
