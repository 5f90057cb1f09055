#ifndef ROOTSET_EXPANSION_HPP
#define ROOTSET_EXPANSION_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rootset/digit_set.hpp"

namespace rootset {

/// Remainders produced by the greedy recurrence stay within this radius.
inline constexpr double kOrbitRadius = 2.0;
inline constexpr double kOrbitSlack = 1e-9;

/// Raised when an input falls outside 1/2 < |z| < 1 or |target| <= 2.
class ExpansionDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct StepResult {
  std::size_t digit_index;
  double digit_angle;
  std::complex<double> remainder;
};

/// No digit a satisfies |z' - a| <= 2|z|.
struct StepFailure {
  std::size_t step = 0;
  double min_distance = 0.0;  // min over H of |z' - a|
  double bound = 0.0;         // 2|z|
  std::vector<double> digit_angles;  // digits chosen before the failing step
};

/// One greedy step: the digit a nearest to `current` (ties to the smallest
/// angle), accepted when |current - a| <= 2|z|, with remainder (current - a)/z.
std::variant<StepResult, StepFailure> beta_step(std::complex<double> z,
                                                std::complex<double> current,
                                                const DigitSet& h);

/// Digits a_0..a_N witnessing |sum a_n z^n - target| <= 2|z|^{N+1}.
struct ExpansionCertificate {
  DigitSet digit_set;
  std::complex<double> z;
  std::complex<double> target;
  std::vector<double> digit_angles;
  std::vector<std::complex<double>> remainders;  // x_0..x_N
  std::complex<double> remainder;                // x_N
  double tail_bound = 0.0;
  double achieved_residual = 0.0;
  bool passed = false;

  std::size_t steps() const { return digit_angles.empty() ? 0 : digit_angles.size() - 1; }
};

using ExpansionResult = std::variant<ExpansionCertificate, StepFailure>;

/// Runs the greedy recurrence for steps + 1 digits. The certificate's
/// residual comes from an independent compensated evaluation of the partial
/// sum, not from the remainder.
ExpansionResult expand(std::complex<double> z, std::complex<double> target, const DigitSet& h,
                       std::size_t steps);

struct ValidationReport {
  double achieved_residual = 0.0;
  double tail_bound = 0.0;
  double numerical_slack = 0.0;  // eps_num
  double margin = 0.0;           // tail_bound + eps_num - achieved_residual
  double max_partial_sum = 0.0;
  bool passed = false;
};

/// |sum_{n<=N} a_n z^n - target| by compensated summation, n = 0..N.
double certificate_residual(std::complex<double> z, std::complex<double> target,
                            const std::vector<double>& digit_angles, const DigitSet& h,
                            double* max_partial_sum = nullptr);

/// Re-checks a certificate from its digits alone. Throws std::invalid_argument
/// when a digit is not in the certificate's digit set or z is out of range.
ValidationReport validate_certificate(const ExpansionCertificate& cert);

}  // namespace rootset

#endif  // ROOTSET_EXPANSION_HPP
