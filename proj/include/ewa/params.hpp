#pragma once

#include <stdexcept>
#include <string>

namespace ewa {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One instance of the discounted EWA dynamics.
///
/// `a` is the population intensity of choice, `b` the equilibrium split
/// (fraction of agents on resource 1 at Nash equilibrium) and `sigma` the
/// discount factor applied to past costs. sigma = 0 is plain multiplicative
/// weights, sigma = 1 is memoryless logit best response.
struct Params {
  double a = 1.0;
  double b = 0.5;
  double sigma = 0.0;

  /// Same game with the two resources swapped (b -> 1 - b).
  [[nodiscard]] Params mirrored() const { return {a, 1.0 - b, sigma}; }
};

/// Throws DomainError unless a > 0, 0 < b < 1 and 0 <= sigma <= 1.
void validate(const Params& p);

/// Human-readable "(a=..., b=..., sigma=...)" used in diagnostics.
std::string describe(const Params& p);

}  // namespace ewa
