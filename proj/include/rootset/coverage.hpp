#ifndef ROOTSET_COVERAGE_HPP
#define ROOTSET_COVERAGE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rootset/digit_set.hpp"
#include "rootset/enumeration.hpp"

namespace rootset {

/// |z|^2 / (1 - |z|), the largest possible |sum_{n>=2} a_n z^n| for unit digits.
double tail_majorant(double rho);

/// Derivative of tail_majorant, (2t - t^2) / (1 - t)^2.
double tail_majorant_slope(double rho);

/// Evaluates min over digit pairs of |a_i + a_j z| - |z|^2/(1-|z|).
///
/// Only the ratios a_i / a_j matter, so the pair minimum reduces to the
/// distance from -z to the nearest ratio direction, found by binary search
/// over the sorted ratio angles.
class ExclusionOracle {
 public:
  explicit ExclusionOracle(const DigitSet& h);

  /// min_{i,j} |a_i + a_j z|.
  double pair_minimum(std::complex<double> z) const;
  /// Throws std::domain_error for |z| >= 1.
  double margin(std::complex<double> z) const;

  const DigitSet& digit_set() const { return digit_set_; }
  const std::vector<double>& ratio_angles() const { return ratio_angles_; }

 private:
  DigitSet digit_set_;
  std::vector<double> ratio_angles_;
};

/// Positive margin proves z is not a root of any power series or polynomial
/// with digits in h. Throws std::domain_error for |z| >= 1.
double exclusion_test(std::complex<double> z, const DigitSet& h);

struct ExclusionCertificate {
  std::complex<double> z;
  double margin = 0.0;
  double delta = 0.0;
  DigitSet digit_set;
};

/// Largest |z|+delta the ball may reach.
inline constexpr double kExclusionModulusCap = 0.99;

/// Ball around z on which the margin stays positive, or nullopt when the
/// margin at z is not positive. delta is the root of
/// pair_minimum(z) - s = tail_majorant(|z| + s), so for |z' - z| < delta the
/// 1-Lipschitz pair term and the increasing majorant keep the inequality strict.
std::optional<ExclusionCertificate> exclusion_ball(std::complex<double> z, const DigitSet& h);
std::optional<ExclusionCertificate> exclusion_ball(std::complex<double> z, const ExclusionOracle& oracle);

/// Coarse sweep of `samples` arguments on the circle |z| = modulus, then 64
/// golden-section steps around the best sample.
std::optional<ExclusionCertificate> hole_search(const DigitSet& h, double modulus, std::size_t samples);

/// Square cells of side cell_size on the integer lattice scaled by cell_size;
/// a cell belongs to the grid iff its centre's modulus lies in [r_inner, r_outer].
class AnnulusGrid {
 public:
  AnnulusGrid(double r_inner, double r_outer, double cell_size);

  double r_inner() const { return r_inner_; }
  double r_outer() const { return r_outer_; }
  double cell_size() const { return cell_size_; }
  std::size_t size() const { return cells_.size(); }

  struct Cell {
    std::int64_t i, j;
    std::complex<double> centre;
  };
  const std::vector<Cell>& cells() const { return cells_; }

  /// Indices of every cell whose closed square contains z.
  std::vector<std::size_t> cells_containing(std::complex<double> z) const;

 private:
  double r_inner_, r_outer_, cell_size_;
  std::int64_t lo_, span_;
  std::vector<Cell> cells_;
  std::vector<std::int64_t> lookup_;  // (i - lo) * span + (j - lo) -> cell index or -1
};

struct CoverageReport {
  double r_inner = 0.0, r_outer = 0.0, cell_size = 0.0;
  std::size_t hit_cells = 0;
  std::size_t total_cells = 0;
  double hit_fraction = 0.0;
  std::vector<bool> hits;  // per cell, in grid order
};

CoverageReport coverage_report(const std::vector<std::complex<double>>& points, const AnnulusGrid& grid);
CoverageReport coverage_report(const RootCloud& cloud, const AnnulusGrid& grid);

struct CrossCheckEntry {
  std::complex<double> sample;
  bool certified = false;  // expansion certificate found and validated
  std::vector<double> nearest_by_degree;  // distance to nearest record of degree <= d, d = 1..max_degree
};

struct DegreeSummary {
  int degree_bound = 0;
  double max_distance = 0.0;
  double median_distance = 0.0;
  std::size_t samples = 0;
};

struct CrossCheckReport {
  std::vector<CrossCheckEntry> entries;
  std::vector<DegreeSummary> summaries;
  bool empty_cloud = false;
};

/// For each sample with a passing expansion certificate (target 0, `steps`
/// steps), the distance to the nearest cloud record per degree bound. Report
/// only: no pass/fail judgement is made. Throws std::domain_error when a
/// sample is outside 1/2 < |z| < 1.
CrossCheckReport density_cross_check(const DigitSet& h, const RootCloud& cloud,
                                     const std::vector<std::complex<double>>& samples,
                                     std::size_t steps = 200);

}  // namespace rootset

#endif  // ROOTSET_COVERAGE_HPP
