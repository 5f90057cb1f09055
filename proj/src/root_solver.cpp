#include "rootset/root_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>

namespace rootset {

namespace {

using Complex = std::complex<double>;
using ConstMap = Eigen::Map<const ComplexVector<double>>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Approximations closer than this (relative) are tested as one multiple root;
// a failed test retries with the radius shrunk tenfold down to kMinClusterRadius.
constexpr double kClusterRadius = 1e-3;
constexpr double kMinClusterRadius = 1e-8;
constexpr double kInitialPhase = 0.4;
constexpr int kPolishIterations = 8;

ConstMap as_vector(std::span<const Complex> coeffs) {
  return ConstMap(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
}

ComplexVector<double> nth_derivative(std::span<const Complex> coeffs, int order) {
  ComplexVector<double> d = as_vector(coeffs);
  for (int j = 0; j < order && d.size() > 0; ++j) d = derivative(d);
  return d;
}

// Simultaneous Aberth-Ehrlich iteration. Returns false when some root has not
// settled within the sweep budget.
bool aberth(const ConstMap& c, std::vector<Complex>& z, const SolverOptions& options) {
  const std::size_t n = z.size();
  const double rounding = 4.0 * static_cast<double>(n + 1) * kEps;
  std::vector<bool> settled(n, false);
  std::size_t remaining = n;
  for (int sweep = 0; sweep < options.max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t k = 0; k < n; ++k) {
      if (settled[k]) continue;
      const auto [p, dp] = horner_with_slope(c, z[k]);
      if (std::abs(p) <= rounding * abs_horner(c, std::abs(z[k]))) {
        settled[k] = true;
        --remaining;
        continue;
      }
      Complex repulsion(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const Complex diff = z[k] - z[j];
        if (diff != Complex(0.0)) repulsion += 1.0 / diff;
      }
      Complex step;
      if (dp == Complex(0.0)) {
        step = Complex(1e-7, 1e-7) * std::max(1.0, std::abs(z[k]));
      } else {
        const Complex ratio = p / dp;
        step = ratio / (1.0 - ratio * repulsion);
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) < options.step_tolerance * std::max(1.0, std::abs(z[k]))) {
        settled[k] = true;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

std::vector<Complex> companion_eigenvalues(const ConstMap& c) {
  const Eigen::Index n = c.size() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c(i) / c(n);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

// Newton on `target`, rejecting steps that grow the scaled value or move
// further than `max_step`.
Complex polish(const ComplexVector<double>& target, Complex z, double max_step) {
  auto scaled = [&](Complex w) { return std::abs(horner(target, w)) / abs_horner(target, std::abs(w)); };
  double best = scaled(z);
  for (int it = 0; it < kPolishIterations && best > 0.0; ++it) {
    const auto [p, dp] = horner_with_slope(target, z);
    if (dp == Complex(0.0)) break;
    const Complex step = p / dp;
    if (!(std::abs(step) <= max_step)) break;
    const Complex next = z - step;
    const double value = scaled(next);
    if (!(value < best)) break;
    best = value;
    z = next;
    if (std::abs(step) <= kEps * std::abs(z)) break;
  }
  return z;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

std::vector<std::vector<std::size_t>> cluster(const std::vector<Complex>& z, double radius, bool relative) {
  std::vector<std::size_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double scale = relative ? std::max(1.0, std::max(std::abs(z[i]), std::abs(z[j]))) : 1.0;
      if (std::abs(z[i] - z[j]) <= radius * scale) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }
  std::vector<std::vector<std::size_t>> groups(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) groups[find_root(parent, i)].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

double nearest_other(const std::vector<Complex>& z, std::size_t k) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < z.size(); ++j)
    if (j != k) best = std::min(best, std::abs(z[k] - z[j]));
  return best;
}

}  // namespace

UnimodularPolynomial::UnimodularPolynomial(const DigitSet& h, std::vector<std::uint32_t> digit_indices)
    : indices_(std::move(digit_indices)) {
  if (indices_.size() < 2) throw std::invalid_argument("polynomial degree must be at least 1");
  coeffs_.resize(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t n = 0; n < indices_.size(); ++n) {
    if (indices_[n] >= h.size()) throw std::invalid_argument("digit index out of range");
    coeffs_(static_cast<Eigen::Index>(n)) = h.digit(indices_[n]);
    lex_index_ = lex_index_ * h.size() + indices_[n];
  }
}

UnimodularPolynomial UnimodularPolynomial::reversed(const DigitSet& h) const {
  return UnimodularPolynomial(h, std::vector<std::uint32_t>(indices_.rbegin(), indices_.rend()));
}

double scaled_residual(std::span<const Complex> coeffs, Complex z) {
  const auto c = as_vector(coeffs);
  return std::abs(horner(c, z)) / abs_horner(c, std::abs(z));
}

double residual(const UnimodularPolynomial& p, Complex z) {
  const auto& c = p.coefficients();
  return scaled_residual({c.data(), static_cast<std::size_t>(c.size())}, z);
}

double scaled_derivative(std::span<const Complex> coeffs, Complex z, int order) {
  const ComplexVector<double> d = nth_derivative(coeffs, order);
  if (d.size() == 0) return 0.0;
  return std::abs(horner(d, z)) / abs_horner(d, std::abs(z));
}

int multiplicity_estimate(std::span<const Complex> coeffs, Complex z, int max_order) {
  if (!(scaled_residual(coeffs, z) <= kRootResidualTolerance))
    throw std::invalid_argument("multiplicity_estimate needs a root to residual tolerance");
  int m = 1;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  while (m < max_order && m < degree && scaled_derivative(coeffs, z, m) <= kDerivativeTolerance) ++m;
  return m;
}

int multiplicity_estimate(const UnimodularPolynomial& p, Complex z, int max_order) {
  const auto& c = p.coefficients();
  return multiplicity_estimate({c.data(), static_cast<std::size_t>(c.size())}, z, max_order);
}

std::vector<RootRecord> solve(std::span<const Complex> coeffs, const SolverOptions& options) {
  if (coeffs.size() < 2) throw std::invalid_argument("cannot solve a constant polynomial");
  if (coeffs.back() == Complex(0.0)) throw std::invalid_argument("leading coefficient must be nonzero");
  const auto c = as_vector(coeffs);
  const std::size_t n = coeffs.size() - 1;
  const int degree = static_cast<int>(n);

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(n) + kInitialPhase);
  if (!aberth(c, z, options)) z = companion_eigenvalues(c);

  const ComplexVector<double> full = c;
  std::vector<RootRecord> records;
  auto add_simple = [&](std::size_t k) {
    const Complex w = polish(full, z[k], 0.5 * nearest_other(z, k));
    records.push_back({w, scaled_residual(coeffs, w), 1, degree, 0, true});
  };
  std::function<void(const std::vector<std::size_t>&, double)> resolve =
      [&](const std::vector<std::size_t>& members, double radius) {
        std::vector<Complex> points(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) points[i] = z[members[i]];
        for (const auto& local : cluster(points, radius, true)) {
          if (local.size() == 1) {
            add_simple(members[local.front()]);
            continue;
          }
          const int m = static_cast<int>(local.size());
          Complex centre(0.0);
          for (auto k : local) centre += points[k];
          centre /= static_cast<double>(m);
          const Complex w =
              polish(nth_derivative(coeffs, m - 1), centre, radius * std::max(1.0, std::abs(centre)));
          const double res = scaled_residual(coeffs, w);
          bool multiple = res <= kRootResidualTolerance;
          for (int j = 1; multiple && j < m; ++j) multiple = scaled_derivative(coeffs, w, j) <= kDerivativeTolerance;
          if (multiple) {
            records.push_back({w, res, m, degree, 0, true});
            continue;
          }
          std::vector<std::size_t> sub(local.size());
          for (std::size_t i = 0; i < local.size(); ++i) sub[i] = members[local[i]];
          if (radius > kMinClusterRadius) {
            resolve(sub, radius / 10.0);
          } else {
            for (auto k : sub) add_simple(k);
          }
        }
      };
  std::vector<std::size_t> everything(n);
  std::iota(everything.begin(), everything.end(), 0);
  resolve(everything, kClusterRadius);

  // Merge anything that still coincides to kMergeTolerance.
  std::vector<Complex> located(records.size());
  std::transform(records.begin(), records.end(), located.begin(), [](const auto& r) { return r.z; });
  std::vector<RootRecord> merged;
  for (const auto& group : cluster(located, kMergeTolerance, false)) {
    RootRecord best = records[group.front()];
    int total = 0;
    for (auto k : group) {
      total += records[k].multiplicity;
      if (records[k].residual < best.residual) best = records[k];
    }
    best.multiplicity = total;
    merged.push_back(best);
  }
  for (auto& r : merged) r.certified = r.residual <= kRootResidualTolerance;
  std::sort(merged.begin(), merged.end(), [](const RootRecord& a, const RootRecord& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  });
  return merged;
}

std::vector<RootRecord> roots(const UnimodularPolynomial& p, const SolverOptions& options) {
  const auto& c = p.coefficients();
  auto records = solve({c.data(), static_cast<std::size_t>(c.size())}, options);
  for (auto& r : records) r.source_index = p.lex_index();
  return records;
}

}  // namespace rootset
