#include "rootset/enumeration.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"

namespace rootset {
namespace {

using Complex = std::complex<double>;

std::vector<Complex> points(const std::vector<RootRecord>& records) {
  std::vector<Complex> out;
  for (const auto& r : records)
    for (int m = 0; m < r.multiplicity; ++m) out.push_back(r.z);
  return out;
}

// Every index vector of length degree+1 in lexicographic order, by plain counting.
std::vector<std::vector<std::uint32_t>> brute_vectors(std::size_t base, int degree) {
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t total = 1;
  for (int k = 0; k <= degree; ++k) total *= base;
  for (std::uint64_t n = 0; n < total; ++n) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(degree) + 1);
    std::uint64_t rest = n;
    for (std::size_t k = v.size(); k-- > 0;) {
      v[k] = static_cast<std::uint32_t>(rest % base);
      rest /= base;
    }
    out.push_back(v);
  }
  return out;
}

TEST(PolynomialCountTest, Examples) {
  const auto two = DigitSet::uniform(2);
  EXPECT_EQ(polynomial_count(two, 2, SymmetryMode::none), 8u);
  EXPECT_EQ(polynomial_count(two, 2, SymmetryMode::phase_orbit), 4u);
  EXPECT_EQ(polynomial_count(DigitSet::uniform(4), 1, SymmetryMode::phase_orbit), 4u);
  EXPECT_EQ(polynomial_count(DigitSet::uniform(12), 3, SymmetryMode::phase_orbit), 12u * 12u * 12u);
  const auto irregular = DigitSet::parse("angles:0,1,2");
  EXPECT_EQ(polynomial_count(irregular, 3, SymmetryMode::phase_orbit), 81u);
  EXPECT_EQ(enumeration_size(two, 12), 16380u);
  EXPECT_THROW(polynomial_count(DigitSet::uniform(1000), 20, SymmetryMode::none), ResourceCapExceeded);
}

TEST(PolynomialStreamTest, LexicographicAndComplete) {
  for (std::size_t k : {1u, 2u, 3u, 4u}) {
    const auto h = DigitSet::uniform(k);
    for (int degree = 1; degree <= 4; ++degree) {
      const auto expected = brute_vectors(k, degree);
      std::vector<std::vector<std::uint32_t>> got;
      PolynomialStream stream(h, degree, SymmetryMode::none);
      std::uint64_t lex = 0;
      while (stream.next()) {
        got.push_back(stream.indices());
        EXPECT_EQ(stream.lex_index(), lex++);
      }
      EXPECT_EQ(got, expected) << k << " " << degree;
      EXPECT_FALSE(stream.next());
    }
  }
}

TEST(PolynomialStreamTest, PhaseOrbitKeepsOneRepresentativePerOrbit) {
  for (std::size_t k : {2u, 3u, 4u, 6u}) {
    const auto h = DigitSet::uniform(k);
    const auto perm = h.rotation_permutation();
    for (int degree = 1; degree <= 3; ++degree) {
      std::set<std::vector<std::uint32_t>> reps;
      for (const auto& p : iterate_polynomials(h, degree, SymmetryMode::phase_orbit)) reps.insert(p.digit_indices());
      EXPECT_EQ(reps.size(), polynomial_count(h, degree, SymmetryMode::phase_orbit));
      // Every vector's orbit meets the representatives exactly once.
      for (const auto& v : brute_vectors(k, degree)) {
        int found = 0;
        auto w = v;
        for (std::size_t r = 0; r < k; ++r) {
          found += static_cast<int>(reps.count(w));
          for (auto& i : w) i = static_cast<std::uint32_t>(perm[i]);
        }
        EXPECT_EQ(found, 1);
      }
    }
  }
}

TEST(PolynomialStreamTest, PrefixRestriction) {
  const auto h = DigitSet::uniform(3);
  PolynomialStream stream(h, 3, SymmetryMode::none, {2, 1});
  int n = 0;
  while (stream.next()) {
    EXPECT_EQ(stream.indices()[0], 2u);
    EXPECT_EQ(stream.indices()[1], 1u);
    ++n;
  }
  EXPECT_EQ(n, 9);
}

TEST(SymmetryTest, ParseAndPrint) {
  EXPECT_EQ(parse_symmetry("none"), SymmetryMode::none);
  EXPECT_EQ(parse_symmetry("phase-orbit"), SymmetryMode::phase_orbit);
  EXPECT_STREQ(to_string(SymmetryMode::phase_orbit), "phase-orbit");
  EXPECT_THROW(parse_symmetry("orbit"), std::invalid_argument);
}

TEST(AllRootsTest, LittlewoodDegreeTwo) {
  const auto cloud = all_roots(DigitSet::uniform(2), 2);
  int rows1 = 0, total1 = 0, total2 = 0;
  for (const auto& r : cloud.records) {
    if (r.degree == 1) {
      ++rows1;
      total1 += r.multiplicity;
    } else {
      total2 += r.multiplicity;
    }
  }
  EXPECT_EQ(rows1, 4);
  EXPECT_EQ(total1, 4);
  EXPECT_EQ(total2, 16);
  EXPECT_EQ(cloud.uncertified, 0u);
  const auto quadratic = points(cloud.of_degree(2));
  const auto want = oracle::quadratic_roots(-1.0L, 1.0L, 1.0L);
  const auto& positive = want[0].real() > 0 ? want[0] : want[1];
  const Complex golden(static_cast<double>(positive.real()), static_cast<double>(positive.imag()));
  EXPECT_NEAR(std::abs(golden), (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
  EXPECT_LE(oracle::nearest(quadratic, golden), 1e-12);
}

TEST(AllRootsTest, DegreeCountsAndAnnulus) {
  const auto h = DigitSet::uniform(4);
  const auto cloud = all_roots(h, 5);
  for (int d = 1; d <= 5; ++d) {
    int total = 0;
    for (const auto& r : cloud.of_degree(d)) total += r.multiplicity;
    EXPECT_EQ(static_cast<std::uint64_t>(total), static_cast<std::uint64_t>(d) * polynomial_count(h, d, SymmetryMode::none));
  }
  for (const auto& r : cloud.records) {
    EXPECT_GT(std::abs(r.z), 0.5 + 1e-12);
    EXPECT_LT(std::abs(r.z), 2.0 - 1e-12);
    EXPECT_LE(r.residual, kRootResidualTolerance);
  }
}

TEST(AllRootsTest, PhaseOrbitGivesTheSameRootSet) {
  for (std::size_t k : {2u, 3u, 4u}) {
    const auto h = DigitSet::uniform(k);
    EnumerationOptions reduced;
    reduced.symmetry = SymmetryMode::phase_orbit;
    const auto full = all_roots(h, 4);
    const auto small = all_roots(h, 4, reduced);
    for (int d = 1; d <= 4; ++d) {
      const auto a = deduplicate(full.of_degree(d));
      const auto b = deduplicate(small.of_degree(d));
      ASSERT_EQ(a.size(), b.size()) << k << " " << d;
      EXPECT_LE(oracle::match_distance(points(a), points(b)), 1e-9);
    }
  }
}

TEST(AllRootsTest, ReciprocalClosure) {
  const auto cloud = all_roots(DigitSet::uniform(2), 9);
  for (int d = 1; d <= 9; ++d) {
    const auto z = points(cloud.of_degree(d));
    for (const auto& w : z) ASSERT_LE(oracle::nearest(z, 1.0 / w), 1e-9) << d;
  }
}

TEST(AllRootsTest, CloudGrowsWithMaxDegree) {
  const auto h = DigitSet::uniform(3);
  std::vector<Complex> previous;
  for (int d = 1; d <= 5; ++d) {
    const auto current = points(all_roots(h, d).records);
    for (const auto& z : previous) ASSERT_LE(oracle::nearest(current, z), kMergeTolerance) << d;
    EXPECT_GT(current.size(), previous.size());
    previous = current;
  }
}

TEST(AllRootsTest, DeterministicAcrossWorkerCounts) {
  const auto h = DigitSet::uniform(3);
  EnumerationOptions one;
  one.workers = 1;
  const auto base = all_roots(h, 6, one);
  for (std::size_t workers : {2u, 3u, 8u}) {
    EnumerationOptions many;
    many.workers = workers;
    const auto other = all_roots(h, 6, many);
    ASSERT_EQ(other.records.size(), base.records.size());
    for (std::size_t i = 0; i < base.records.size(); ++i) {
      EXPECT_EQ(other.records[i].z, base.records[i].z);
      EXPECT_EQ(other.records[i].source_index, base.records[i].source_index);
      EXPECT_EQ(other.records[i].multiplicity, base.records[i].multiplicity);
    }
  }
}

TEST(AllRootsTest, ResourceCap) {
  EnumerationOptions tight;
  tight.cap = 100;
  EXPECT_THROW(all_roots(DigitSet::uniform(2), 6, tight), ResourceCapExceeded);
  tight.override_cap = true;
  EXPECT_NO_THROW(all_roots(DigitSet::uniform(2), 6, tight));
  EXPECT_THROW(all_roots(DigitSet::uniform(2), 0), std::invalid_argument);
}

TEST(MultipleRootScanTest, LittlewoodCubic) {
  const auto found = multiple_root_scan(DigitSet::uniform(2), 3, 2);
  ASSERT_FALSE(found.empty());
  const auto minus = std::find_if(found.begin(), found.end(), [](const auto& r) { return std::abs(r.z + 1.0) < 1e-9; });
  ASSERT_NE(minus, found.end());
  EXPECT_EQ(minus->multiplicity, 2);
  for (const auto& r : found) EXPECT_GE(r.multiplicity, 2);
  EXPECT_TRUE(multiple_root_scan(DigitSet::uniform(2), 2, 3).empty());
  EXPECT_THROW(multiple_root_scan(DigitSet::uniform(2), 3, 1), std::invalid_argument);
}

TEST(MultipleRootScanTest, EveryReportedRootIsConfirmedByDerivatives) {
  const auto h = DigitSet::uniform(4);
  const auto cloud = all_roots(h, 5);
  for (const auto& r : multiple_root_scan(cloud, 2)) {
    const UnimodularPolynomial p(h, [&] {
      PolynomialStream s(h, r.degree, SymmetryMode::none);
      while (s.next())
        if (s.lex_index() == r.source_index) return s.indices();
      return std::vector<std::uint32_t>{};
    }());
    EXPECT_GE(multiplicity_estimate(p, r.z, r.multiplicity), r.multiplicity);
  }
}

TEST(DeduplicateTest, KeepsFirstOfEachCluster) {
  std::vector<RootRecord> records{{1.0, 0.0, 1, 1, 7, true}, {1.0 + 1e-12, 0.0, 1, 1, 3, true}, {2.0, 0.0, 1, 1, 1, true}};
  const auto out = deduplicate(records);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].source_index, 7u);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<int> seen(1000, 0);
  parallel_for(seen.size(), 7, [&](std::size_t i) { seen[i] += 1; });
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
}

}  // namespace
}  // namespace rootset
