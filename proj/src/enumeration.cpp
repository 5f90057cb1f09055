#include "rootset/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace rootset {

namespace {

std::vector<bool> orbit_minima(const DigitSet& h, SymmetryMode symmetry) {
  std::vector<bool> allowed(h.size(), true);
  if (symmetry == SymmetryMode::none) return allowed;
  const auto perm = h.rotation_permutation();
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = perm[i]; j != i; j = perm[j]) {
      if (j < i) {
        allowed[i] = false;
        break;
      }
    }
  }
  return allowed;
}

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(out, base, &out))
      throw ResourceCapExceeded("enumeration size overflows 64 bits");
  }
  return out;
}

// Each returned vector is a fixed prefix; together they partition the stream.
std::vector<std::vector<std::uint32_t>> prefixes(const DigitSet& h, int degree, SymmetryMode symmetry,
                                                 std::size_t workers) {
  const std::size_t base = h.size();
  const std::size_t length = static_cast<std::size_t>(degree) + 1;
  const std::uint64_t wanted = 8 * std::max<std::size_t>(workers, 1);
  std::size_t p = 1;
  while (p < length && checked_pow(base, static_cast<int>(p)) < wanted) ++p;
  const auto allowed = orbit_minima(h, symmetry);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current(p, 0);
  while (true) {
    if (allowed[current[0]]) out.push_back(current);
    std::size_t pos = p;
    while (pos > 0) {
      --pos;
      if (++current[pos] < base) break;
      current[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

}  // namespace

SymmetryMode parse_symmetry(const std::string& text) {
  if (text == "none") return SymmetryMode::none;
  if (text == "phase-orbit") return SymmetryMode::phase_orbit;
  throw std::invalid_argument("unknown symmetry mode '" + text + "'");
}

const char* to_string(SymmetryMode mode) {
  return mode == SymmetryMode::none ? "none" : "phase-orbit";
}

PolynomialStream::PolynomialStream(const DigitSet& h, int degree, SymmetryMode symmetry)
    : PolynomialStream(h, degree, symmetry, {}) {}

PolynomialStream::PolynomialStream(const DigitSet& h, int degree, SymmetryMode symmetry,
                                   std::vector<std::uint32_t> prefix)
    : base_(h.size()), leading_allowed_(orbit_minima(h, symmetry)), fixed_(prefix.size()) {
  if (degree < 1) throw std::invalid_argument("enumeration degree must be at least 1");
  const std::size_t length = static_cast<std::size_t>(degree) + 1;
  if (prefix.size() > length) throw std::invalid_argument("prefix longer than coefficient vector");
  for (auto i : prefix)
    if (i >= base_) throw std::invalid_argument("prefix digit index out of range");
  indices_ = std::move(prefix);
  indices_.resize(length, 0);
}

bool PolynomialStream::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (fixed_ == 0) {
      auto first = std::find(leading_allowed_.begin(), leading_allowed_.end(), true);
      indices_[0] = static_cast<std::uint32_t>(first - leading_allowed_.begin());
    }
    done_ = indices_[0] >= base_ || !leading_allowed_[indices_[0]];
    return !done_;
  }
  for (std::size_t pos = indices_.size(); pos > fixed_;) {
    --pos;
    if (pos == 0) {
      do {
        ++indices_[0];
      } while (indices_[0] < base_ && !leading_allowed_[indices_[0]]);
      if (indices_[0] < base_) return true;
      break;
    }
    if (++indices_[pos] < base_) return true;
    indices_[pos] = 0;
  }
  done_ = true;
  return false;
}

std::uint64_t PolynomialStream::lex_index() const {
  std::uint64_t index = 0;
  for (auto i : indices_) index = index * base_ + i;
  return index;
}

std::uint64_t polynomial_count(const DigitSet& h, int degree, SymmetryMode symmetry) {
  const std::uint64_t all = checked_pow(h.size(), degree + 1);
  return symmetry == SymmetryMode::none ? all : all / h.rotation_order();
}

std::uint64_t enumeration_size(const DigitSet& h, int max_degree) {
  std::uint64_t total = 0;
  for (int d = 1; d <= max_degree; ++d) {
    if (__builtin_add_overflow(total, checked_pow(h.size(), d + 1), &total))
      throw ResourceCapExceeded("enumeration size overflows 64 bits");
  }
  return total;
}

std::vector<UnimodularPolynomial> iterate_polynomials(const DigitSet& h, int degree, SymmetryMode symmetry) {
  std::vector<UnimodularPolynomial> out;
  PolynomialStream stream(h, degree, symmetry);
  while (stream.next()) out.emplace_back(h, stream.indices());
  return out;
}

std::vector<RootRecord> RootCloud::of_degree(int degree) const {
  std::vector<RootRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [degree](const RootRecord& r) { return r.degree == degree; });
  return out;
}

RootCloud all_roots(const DigitSet& h, int max_degree, const EnumerationOptions& options) {
  if (max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");
  const std::uint64_t size = enumeration_size(h, max_degree);
  if (size > options.cap && !options.override_cap)
    throw ResourceCapExceeded("enumeration of " + std::to_string(size) + " polynomials exceeds cap of " +
                              std::to_string(options.cap));

  RootCloud cloud{h, max_degree, options.symmetry, {}, 0};
  const auto& digits = h.digits();
  for (int degree = 1; degree <= max_degree; ++degree) {
    const auto parts = prefixes(h, degree, options.symmetry, options.workers);
    std::vector<std::vector<RootRecord>> partial(parts.size());
    parallel_for(parts.size(), options.workers, [&](std::size_t k) {
      PolynomialStream stream(h, degree, options.symmetry, parts[k]);
      std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(degree) + 1);
      auto& out = partial[k];
      while (stream.next()) {
        const auto& idx = stream.indices();
        for (std::size_t n = 0; n < idx.size(); ++n) coeffs[n] = digits[idx[n]];
        const std::uint64_t source = stream.lex_index();
        for (auto& r : solve(coeffs)) {
          r.source_index = source;
          out.push_back(r);
        }
      }
    });
    for (auto& part : partial) cloud.records.insert(cloud.records.end(), part.begin(), part.end());
  }
  cloud.uncertified = static_cast<std::size_t>(
      std::count_if(cloud.records.begin(), cloud.records.end(), [](const auto& r) { return !r.certified; }));
  return cloud;
}

std::vector<RootRecord> deduplicate(const std::vector<RootRecord>& records, double tolerance) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& za = records[a].z;
    const auto& zb = records[b].z;
    if (za.real() != zb.real()) return za.real() < zb.real();
    if (za.imag() != zb.imag()) return za.imag() < zb.imag();
    return a < b;
  });
  std::vector<std::size_t> parent(records.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& za = records[order[a]].z;
      const auto& zb = records[order[b]].z;
      if (zb.real() - za.real() > tolerance) break;
      if (std::abs(za - zb) <= tolerance) {
        const std::size_t ra = find(order[a]), rb = find(order[b]);
        parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<RootRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (find(i) == i) out.push_back(records[i]);
  return out;
}

std::vector<RootRecord> multiple_root_scan(const RootCloud& cloud, int order) {
  if (order < 2) throw std::invalid_argument("multiple_root_scan needs order >= 2");
  std::vector<RootRecord> hits;
  std::copy_if(cloud.records.begin(), cloud.records.end(), std::back_inserter(hits),
               [order](const RootRecord& r) { return r.multiplicity >= order; });
  std::stable_sort(hits.begin(), hits.end(),
                   [](const RootRecord& a, const RootRecord& b) { return a.multiplicity > b.multiplicity; });
  return deduplicate(hits);
}

std::vector<RootRecord> multiple_root_scan(const DigitSet& h, int max_degree, int order,
                                           const EnumerationOptions& options) {
  if (order < 2) throw std::invalid_argument("multiple_root_scan needs order >= 2");
  return multiple_root_scan(all_roots(h, max_degree, options), order);
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t default_workers() {
  if (const char* env = std::getenv("ROOTSET_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace rootset
