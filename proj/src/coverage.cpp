#include "rootset/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rootset/expansion.hpp"

namespace rootset {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr int kGoldenSteps = 64;
constexpr int kBisectionSteps = 200;
constexpr std::int64_t kMaxGridSpan = 20000;

DigitSet ratio_set(const DigitSet& h) {
  std::vector<double> ratios;
  ratios.reserve(h.size() * h.size());
  for (double a : h.angles())
    for (double b : h.angles()) ratios.push_back(a - b);
  return DigitSet::from_angles(ratios);
}

}  // namespace

double tail_majorant(double rho) { return rho * rho / (1.0 - rho); }

double tail_majorant_slope(double rho) { return (2.0 * rho - rho * rho) / ((1.0 - rho) * (1.0 - rho)); }

ExclusionOracle::ExclusionOracle(const DigitSet& h) : digit_set_(h), ratio_angles_(ratio_set(h).angles()) {}

double ExclusionOracle::pair_minimum(std::complex<double> z) const {
  if (z == std::complex<double>(0.0)) return 1.0;
  // |e^{id} + z| is smallest for the ratio direction nearest to that of -z.
  const double toward = reduce_angle(std::arg(z) + std::numbers::pi);
  const auto& r = ratio_angles_;
  const std::size_t n = r.size();
  const std::size_t pos = static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), toward) - r.begin());
  double best = kInfinity;
  for (std::size_t k : {pos % n, (pos + n - 1) % n}) best = std::min(best, std::abs(unit_from_angle(r[k]) + z));
  return best;
}

double ExclusionOracle::margin(std::complex<double> z) const {
  const double rho = std::abs(z);
  if (!(rho < 1.0)) throw std::domain_error("exclusion test needs |z| < 1");
  return pair_minimum(z) - tail_majorant(rho);
}

double exclusion_test(std::complex<double> z, const DigitSet& h) { return ExclusionOracle(h).margin(z); }

std::optional<ExclusionCertificate> exclusion_ball(std::complex<double> z, const ExclusionOracle& oracle) {
  const double m = oracle.margin(z);
  if (!(m > 0.0)) return std::nullopt;
  const double rho = std::abs(z);
  const double pair = oracle.pair_minimum(z);
  const double reach = kExclusionModulusCap - rho;
  if (!(reach > 0.0)) return std::nullopt;
  auto slack = [&](double s) { return pair - s - tail_majorant(rho + s); };

  double delta = reach;
  if (!(slack(reach) > 0.0)) {
    double lo = 0.0, hi = reach;
    for (int it = 0; it < kBisectionSteps; ++it) {
      const double mid = 0.5 * (lo + hi);
      (slack(mid) > 0.0 ? lo : hi) = mid;
    }
    delta = lo;
  }
  delta *= 1.0 - 1e-9;
  if (!(delta > 0.0)) return std::nullopt;
  return ExclusionCertificate{z, m, delta, oracle.digit_set()};
}

std::optional<ExclusionCertificate> exclusion_ball(std::complex<double> z, const DigitSet& h) {
  return exclusion_ball(z, ExclusionOracle(h));
}

std::optional<ExclusionCertificate> hole_search(const DigitSet& h, double modulus, std::size_t samples) {
  if (!(modulus > 0.0 && modulus < 1.0)) throw std::domain_error("hole_search needs 0 < modulus < 1");
  if (samples < 8) throw std::invalid_argument("hole_search needs at least 8 samples");
  const ExclusionOracle oracle(h);
  auto margin_at = [&](double phi) { return oracle.margin(std::polar(modulus, phi)); };

  const double step = kTwoPi / static_cast<double>(samples);
  std::size_t best_j = 0;
  double best = -kInfinity;
  for (std::size_t j = 0; j < samples; ++j) {
    const double m = margin_at(step * static_cast<double>(j));
    if (m > best) {
      best = m;
      best_j = j;
    }
  }
  if (!(best > 0.0)) return std::nullopt;

  double best_phi = step * static_cast<double>(best_j);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_phi - step, b = best_phi + step;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = margin_at(c), fd = margin_at(d);
  for (int it = 0; it < kGoldenSteps; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = margin_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = margin_at(d);
    }
  }
  const double refined = fc >= fd ? c : d;
  if (margin_at(refined) > best) best_phi = refined;
  return exclusion_ball(std::polar(modulus, reduce_angle(best_phi)), oracle);
}

AnnulusGrid::AnnulusGrid(double r_inner, double r_outer, double cell_size)
    : r_inner_(r_inner), r_outer_(r_outer), cell_size_(cell_size) {
  if (!(r_inner > 0.0 && r_inner < r_outer && std::isfinite(r_outer)))
    throw std::invalid_argument("annulus grid needs 0 < r_inner < r_outer");
  if (!(cell_size > 0.0)) throw std::invalid_argument("annulus grid needs cell_size > 0");
  const double extent = std::ceil(r_outer / cell_size) + 1.0;
  if (!(2.0 * extent + 1.0 <= static_cast<double>(kMaxGridSpan)))
    throw std::invalid_argument("annulus grid too fine");
  lo_ = -static_cast<std::int64_t>(extent);
  span_ = 2 * static_cast<std::int64_t>(extent) + 1;
  lookup_.assign(static_cast<std::size_t>(span_ * span_), -1);
  for (std::int64_t i = lo_; i < lo_ + span_; ++i) {
    for (std::int64_t j = lo_; j < lo_ + span_; ++j) {
      const std::complex<double> centre((static_cast<double>(i) + 0.5) * cell_size,
                                        (static_cast<double>(j) + 0.5) * cell_size);
      const double rho = std::abs(centre);
      if (rho >= r_inner && rho <= r_outer) {
        lookup_[static_cast<std::size_t>((i - lo_) * span_ + (j - lo_))] = static_cast<std::int64_t>(cells_.size());
        cells_.push_back({i, j, centre});
      }
    }
  }
}

std::vector<std::size_t> AnnulusGrid::cells_containing(std::complex<double> z) const {
  std::vector<std::size_t> out;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return out;
  auto covering = [&](double x) {
    std::vector<std::int64_t> ks;
    const double base = std::floor(x / cell_size_);
    for (double k = base - 1.0; k <= base + 1.0; k += 1.0) {
      if (k * cell_size_ <= x && x <= (k + 1.0) * cell_size_) ks.push_back(static_cast<std::int64_t>(k));
    }
    return ks;
  };
  for (auto i : covering(z.real())) {
    if (i < lo_ || i >= lo_ + span_) continue;
    for (auto j : covering(z.imag())) {
      if (j < lo_ || j >= lo_ + span_) continue;
      const auto index = lookup_[static_cast<std::size_t>((i - lo_) * span_ + (j - lo_))];
      if (index >= 0) out.push_back(static_cast<std::size_t>(index));
    }
  }
  return out;
}

CoverageReport coverage_report(const std::vector<std::complex<double>>& points, const AnnulusGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("coverage report needs a nonempty grid");
  CoverageReport report{grid.r_inner(), grid.r_outer(), grid.cell_size(), 0, grid.size(), 0.0,
                        std::vector<bool>(grid.size(), false)};
  for (const auto& z : points)
    for (auto k : grid.cells_containing(z)) report.hits[k] = true;
  report.hit_cells = static_cast<std::size_t>(std::count(report.hits.begin(), report.hits.end(), true));
  report.hit_fraction = static_cast<double>(report.hit_cells) / static_cast<double>(report.total_cells);
  return report;
}

CoverageReport coverage_report(const RootCloud& cloud, const AnnulusGrid& grid) {
  std::vector<std::complex<double>> points;
  points.reserve(cloud.records.size());
  for (const auto& r : cloud.records) points.push_back(r.z);
  return coverage_report(points, grid);
}

CrossCheckReport density_cross_check(const DigitSet& h, const RootCloud& cloud,
                                     const std::vector<std::complex<double>>& samples, std::size_t steps) {
  const int max_degree = std::max(cloud.max_degree, 1);
  CrossCheckReport report;
  report.empty_cloud = cloud.records.empty();
  for (const auto& z : samples) {
    const double rho = std::abs(z);
    if (!(rho > 0.5 && rho < 1.0)) throw std::domain_error("cross-check samples must satisfy 1/2 < |z| < 1");
    CrossCheckEntry entry{z, false, std::vector<double>(static_cast<std::size_t>(max_degree), kInfinity)};
    const auto result = expand(z, 0.0, h, steps);
    if (const auto* cert = std::get_if<ExpansionCertificate>(&result)) entry.certified = cert->passed;
    for (const auto& r : cloud.records) {
      if (r.degree < 1 || r.degree > max_degree) continue;
      auto& slot = entry.nearest_by_degree[static_cast<std::size_t>(r.degree - 1)];
      slot = std::min(slot, std::abs(r.z - z));
    }
    for (std::size_t d = 1; d < entry.nearest_by_degree.size(); ++d)
      entry.nearest_by_degree[d] = std::min(entry.nearest_by_degree[d], entry.nearest_by_degree[d - 1]);
    report.entries.push_back(std::move(entry));
  }
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<double> distances;
    for (const auto& e : report.entries)
      if (e.certified) distances.push_back(e.nearest_by_degree[static_cast<std::size_t>(d - 1)]);
    DegreeSummary summary{d, kInfinity, kInfinity, distances.size()};
    if (!distances.empty()) {
      std::sort(distances.begin(), distances.end());
      summary.max_distance = distances.back();
      const std::size_t mid = distances.size() / 2;
      summary.median_distance =
          distances.size() % 2 ? distances[mid] : 0.5 * (distances[mid - 1] + distances[mid]);
    }
    report.summaries.push_back(summary);
  }
  return report;
}

}  // namespace rootset
