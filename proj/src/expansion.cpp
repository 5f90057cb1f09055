#include "rootset/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rootset/polynomial.hpp"

namespace rootset {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kStepSlack = 1e-12;

void check_point(std::complex<double> z) {
  const double rho = std::abs(z);
  if (!(rho > 0.5 && rho < 1.0)) throw ExpansionDomainError("expansion needs 1/2 < |z| < 1");
}

void check_target(std::complex<double> target) {
  if (!(std::abs(target) <= kOrbitRadius + kOrbitSlack))
    throw ExpansionDomainError("expansion target must satisfy |target| <= 2");
}

}  // namespace

std::variant<StepResult, StepFailure> beta_step(std::complex<double> z,
                                                std::complex<double> current,
                                                const DigitSet& h) {
  check_point(z);
  check_target(current);
  const auto& digits = h.digits();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : digits) best = std::min(best, std::abs(current - a));
  // Digits are sorted by angle, so the first within tolerance has the smallest angle.
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (std::abs(current - digits[i]) <= best + kTieTolerance) {
      chosen = i;
      break;
    }
  }
  const double bound = 2.0 * std::abs(z);
  if (best > bound + kStepSlack) return StepFailure{0, best, bound, {}};
  return StepResult{chosen, h.angle(chosen), (current - digits[chosen]) / z};
}

ExpansionResult expand(std::complex<double> z, std::complex<double> target, const DigitSet& h,
                       std::size_t steps) {
  check_point(z);
  check_target(target);
  if (steps < 1) throw std::invalid_argument("expand needs at least one step");

  ExpansionCertificate cert{h, z, target, {}, {}, {}, 0.0, 0.0, false};
  cert.digit_angles.reserve(steps + 1);
  cert.remainders.reserve(steps + 1);
  std::complex<double> current = target;
  for (std::size_t n = 0; n <= steps; ++n) {
    auto step = beta_step(z, current, h);
    if (auto* failure = std::get_if<StepFailure>(&step)) {
      failure->step = n;
      failure->digit_angles = std::move(cert.digit_angles);
      return *failure;
    }
    const auto& ok = std::get<StepResult>(step);
    cert.digit_angles.push_back(ok.digit_angle);
    cert.remainders.push_back(ok.remainder);
    current = ok.remainder;
  }
  cert.remainder = current;
  const ValidationReport report = validate_certificate(cert);
  cert.tail_bound = report.tail_bound;
  cert.achieved_residual = report.achieved_residual;
  cert.passed = report.passed;
  return cert;
}

double certificate_residual(std::complex<double> z, std::complex<double> target,
                            const std::vector<double>& digit_angles, const DigitSet& h,
                            double* max_partial_sum) {
  const double rho = std::abs(z);
  const double phase = std::arg(z);
  CompensatedSum<double> sum;
  sum.add(-target);
  double peak = std::abs(target);
  for (std::size_t n = 0; n < digit_angles.size(); ++n) {
    const auto index = h.find(digit_angles[n]);
    if (!index) throw std::invalid_argument("certificate digit is not in the digit set");
    const double nd = static_cast<double>(n);
    const std::complex<double> power = n == 0 ? std::complex<double>(1.0)
                                              : std::polar(std::pow(rho, nd), nd * phase);
    sum.add(h.digit(*index) * power);
    peak = std::max(peak, std::abs(sum.value() + target));
  }
  if (max_partial_sum) *max_partial_sum = peak;
  return std::abs(sum.value());
}

ValidationReport validate_certificate(const ExpansionCertificate& cert) {
  const double rho = std::abs(cert.z);
  if (!(rho > 0.5 && rho < 1.0)) throw std::invalid_argument("certificate needs 1/2 < |z| < 1");
  if (!(std::abs(cert.target) <= kOrbitRadius + kOrbitSlack))
    throw std::invalid_argument("certificate target must satisfy |target| <= 2");
  if (cert.digit_angles.empty()) throw std::invalid_argument("certificate has no digits");

  ValidationReport report;
  const std::size_t n_steps = cert.digit_angles.size() - 1;
  report.achieved_residual =
      certificate_residual(cert.z, cert.target, cert.digit_angles, cert.digit_set, &report.max_partial_sum);
  report.tail_bound = 2.0 * std::pow(rho, static_cast<double>(n_steps + 1));
  report.numerical_slack = 8.0 * static_cast<double>(n_steps) *
                           std::numeric_limits<double>::epsilon() * report.max_partial_sum;
  report.margin = report.tail_bound + report.numerical_slack - report.achieved_residual;
  report.passed = report.margin >= 0.0;
  return report;
}

}  // namespace rootset
