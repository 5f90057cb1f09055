#ifndef ROOTSET_DIGIT_SET_HPP
#define ROOTSET_DIGIT_SET_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rootset {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Absolute tolerance under which two digit angles are considered equal.
inline constexpr double kAngleTolerance = 1e-12;

/// A finite alphabet of unit-modulus digits, stored as strictly increasing
/// angles in [0, 2pi). Immutable after construction.
class DigitSet {
 public:
  /// Reduces mod 2pi, sorts and deduplicates. Throws std::invalid_argument on
  /// an empty or non-finite input.
  static DigitSet from_angles(std::span<const double> raw, std::string label = {});

  /// The k-th roots of unity, angles 2*pi*j/k.
  static DigitSet uniform(std::size_t k);

  /// Parses "uniform:k", "angles:t1,t2,..." (radians) or "littlewood".
  static DigitSet parse(const std::string& spec);

  std::size_t size() const { return angles_.size(); }
  const std::vector<double>& angles() const { return angles_; }
  const std::vector<std::complex<double>>& digits() const { return digits_; }
  double angle(std::size_t i) const { return angles_[i]; }
  std::complex<double> digit(std::size_t i) const { return digits_[i]; }

  /// Canonical textual form; round-trips through parse().
  const std::string& label() const { return label_; }

  /// Index of the digit whose angle is within kAngleTolerance of `theta`.
  std::optional<std::size_t> find(double theta) const;

  /// Largest s such that rotating every digit by 2*pi/s permutes the set.
  std::size_t rotation_order() const;

  /// Index permutation induced by rotation through 2*pi/rotation_order().
  std::vector<std::size_t> rotation_permutation() const;

 private:
  DigitSet(std::vector<double> angles, std::string label);

  std::vector<double> angles_;
  std::vector<std::complex<double>> digits_;
  std::string label_;
};

/// Reduces an angle into [0, 2pi).
double reduce_angle(double theta);

/// e^{i theta}, exact for multiples of pi/2.
std::complex<double> unit_from_angle(double theta);

DigitSet normalize_angles(std::span<const double> raw);

/// Circle metric: min(|d|, 2pi - |d|) with d reduced mod 2pi. Lies in [0, pi].
double angular_distance(double theta, double theta_prime);

/// Largest gap between circularly consecutive digits, wraparound included.
/// A singleton has gap 2pi.
double max_gap(const DigitSet& h);

/// 2 * arccos((5 - 4 r^2) / 4) for r in (1/2, 1). Digit sets whose max_gap does
/// not exceed this value have every point of modulus in [r, 1) as a power
/// series root. Throws std::domain_error outside (1/2, 1).
double density_threshold(double r);

/// Smallest r with density_threshold(r) == max_gap(h), i.e.
/// sqrt(5/4 - cos(max_gap / 2)); nullopt when that would reach 1.
std::optional<double> min_covered_radius(const DigitSet& h);

/// Upper limit of density_threshold, 2 * arccos(1/4).
double max_useful_gap();

}  // namespace rootset

#endif  // ROOTSET_DIGIT_SET_HPP
