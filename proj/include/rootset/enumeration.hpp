#ifndef ROOTSET_ENUMERATION_HPP
#define ROOTSET_ENUMERATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootset/digit_set.hpp"
#include "rootset/root_solver.hpp"

namespace rootset {

enum class SymmetryMode { none, phase_orbit };

SymmetryMode parse_symmetry(const std::string& text);
const char* to_string(SymmetryMode mode);

/// Default cap on sum_d |H|^{d+1} before an enumeration is refused.
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
  SymmetryMode symmetry = SymmetryMode::none;
  std::size_t workers = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
  bool override_cap = false;
};

/// Odometer over coefficient-index vectors of one exact degree, lexicographic
/// with a_0 most significant. Under phase_orbit only vectors whose a_0 is the
/// smallest index of its rotation orbit are produced: exactly one
/// representative per orbit of global multiplication by e^{2 pi i / s}.
class PolynomialStream {
 public:
  PolynomialStream(const DigitSet& h, int degree, SymmetryMode symmetry);

  /// Restricts the stream to vectors starting with `prefix`.
  PolynomialStream(const DigitSet& h, int degree, SymmetryMode symmetry,
                   std::vector<std::uint32_t> prefix);

  /// Advances to the next vector; false once exhausted.
  bool next();

  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::uint64_t lex_index() const;

 private:
  std::size_t base_;
  std::vector<std::uint32_t> indices_;
  std::vector<bool> leading_allowed_;
  std::size_t fixed_ = 0;
  bool started_ = false;
  bool done_ = false;
};

/// Number of coefficient vectors of exactly `degree`, before and after
/// symmetry reduction. Throws ResourceCapExceeded on integer overflow.
std::uint64_t polynomial_count(const DigitSet& h, int degree, SymmetryMode symmetry);

/// sum_{d=1}^{max_degree} |H|^{d+1}, the unreduced work size the cap applies to.
std::uint64_t enumeration_size(const DigitSet& h, int max_degree);

/// Collects the stream into a vector; intended for small cases and tests.
std::vector<UnimodularPolynomial> iterate_polynomials(const DigitSet& h, int degree, SymmetryMode symmetry);

struct RootCloud {
  DigitSet digit_set;
  int max_degree = 0;
  SymmetryMode symmetry = SymmetryMode::none;
  std::vector<RootRecord> records;
  std::size_t uncertified = 0;  // records whose residual missed tolerance

  /// Records of one exact degree.
  std::vector<RootRecord> of_degree(int degree) const;
};

/// Solves every polynomial of each exact degree 1..max_degree. Work is split
/// by fixed coefficient prefixes and merged in prefix order, so the record
/// order does not depend on the worker count.
RootCloud all_roots(const DigitSet& h, int max_degree, const EnumerationOptions& options = {});

/// Records with multiplicity >= order, clustered across polynomials at
/// kMergeTolerance (one record per location, highest multiplicity kept).
std::vector<RootRecord> multiple_root_scan(const DigitSet& h, int max_degree, int order,
                                           const EnumerationOptions& options = {});
std::vector<RootRecord> multiple_root_scan(const RootCloud& cloud, int order);

/// Cluster records at `tolerance`, keeping the first of each cluster.
std::vector<RootRecord> deduplicate(const std::vector<RootRecord>& records, double tolerance = kMergeTolerance);

/// Runs fn(0..count-1) over `workers` threads.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// Worker count from ROOTSET_THREADS, else hardware concurrency.
std::size_t default_workers();

}  // namespace rootset

#endif  // ROOTSET_ENUMERATION_HPP
