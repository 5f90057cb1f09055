#ifndef ROOTSET_ROOT_SOLVER_HPP
#define ROOTSET_ROOT_SOLVER_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rootset/digit_set.hpp"
#include "rootset/polynomial.hpp"

namespace rootset {

/// Scaled residual a returned root must reach.
inline constexpr double kRootResidualTolerance = 1e-10;
/// Scaled derivative magnitude below which a derivative counts as vanishing.
inline constexpr double kDerivativeTolerance = 1e-8;
/// Roots closer than this are merged into one record.
inline constexpr double kMergeTolerance = 1e-9;

/// Polynomial whose coefficients are digits of a DigitSet, low degree first.
class UnimodularPolynomial {
 public:
  /// Throws std::invalid_argument for degree < 1 or an out-of-range index.
  UnimodularPolynomial(const DigitSet& h, std::vector<std::uint32_t> digit_indices);

  int degree() const { return static_cast<int>(indices_.size()) - 1; }
  const std::vector<std::uint32_t>& digit_indices() const { return indices_; }
  const ComplexVector<double>& coefficients() const { return coeffs_; }

  /// Position of this coefficient vector in lexicographic order over
  /// H^{degree+1}, a_0 most significant.
  std::uint64_t lex_index() const { return lex_index_; }

  /// Coefficients read high-to-low: z^d P(1/z).
  UnimodularPolynomial reversed(const DigitSet& h) const;

 private:
  std::vector<std::uint32_t> indices_;
  ComplexVector<double> coeffs_;
  std::uint64_t lex_index_ = 0;
};

struct RootRecord {
  std::complex<double> z;
  double residual = 0.0;
  int multiplicity = 1;
  int degree = 0;
  std::uint64_t source_index = 0;  // lex_index of the source polynomial
  bool certified = true;           // false when residual exceeds tolerance
};

struct SolverOptions {
  int max_sweeps = 200;
  double step_tolerance = 1e-14;
};

/// All roots of a polynomial with nonzero leading coefficient, counted with
/// multiplicity. Simultaneous (Aberth) iteration from the unit circle with a
/// companion-matrix fallback, then Newton polishing and cluster merging.
/// Records that miss the residual tolerance come back with certified = false.
std::vector<RootRecord> solve(std::span<const std::complex<double>> coeffs,
                              const SolverOptions& options = {});

std::vector<RootRecord> roots(const UnimodularPolynomial& p, const SolverOptions& options = {});

/// |P(z)| / sum_n |z|^n.
double residual(const UnimodularPolynomial& p, std::complex<double> z);
double scaled_residual(std::span<const std::complex<double>> coeffs, std::complex<double> z);

/// |P^(j)(z)| / sum_{n>=j} n!/(n-j)! |z|^{n-j}.
double scaled_derivative(std::span<const std::complex<double>> coeffs, std::complex<double> z, int order);

/// Largest m <= max_order whose derivatives 0..m-1 all vanish at z to
/// kDerivativeTolerance; at least 1. Throws std::invalid_argument when z is
/// not a root to kRootResidualTolerance.
int multiplicity_estimate(const UnimodularPolynomial& p, std::complex<double> z, int max_order);
int multiplicity_estimate(std::span<const std::complex<double>> coeffs, std::complex<double> z,
                          int max_order);

}  // namespace rootset

#endif  // ROOTSET_ROOT_SOLVER_HPP
