#ifndef ROOTSET_IO_HPP
#define ROOTSET_IO_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootset/coverage.hpp"
#include "rootset/enumeration.hpp"
#include "rootset/expansion.hpp"

namespace rootset::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& text);

// Root cloud CSV. Header re,im,modulus,multiplicity,degree,source_index; rows
// sorted by (degree, re, im, source_index, multiplicity).

inline constexpr const char* kCloudHeader = "re,im,modulus,multiplicity,degree,source_index";

struct CloudRow {
  std::complex<double> z;
  double modulus = 0.0;
  int multiplicity = 1;
  int degree = 0;
  std::uint64_t source_index = 0;
};

std::vector<CloudRow> cloud_rows(const std::vector<RootRecord>& records);
void sort_rows(std::vector<CloudRow>& rows);
void write_cloud_csv(std::ostream& out, std::vector<CloudRow> rows);
std::vector<CloudRow> read_cloud_csv(std::istream& in);

/// Flat "key: value" document, one record per file, keys in insertion order.
class Record {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value) { set(key, format_double(value)); }
  void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
  void set_int(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }
  void set(const std::string& key, const std::vector<double>& values);

  const std::string& get(const std::string& key) const;
  bool has(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void write(std::ostream& out) const;
  static Record read(std::istream& in);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

Record certificate_record(const ExpansionCertificate& cert);
Record failure_record(const DigitSet& h, std::complex<double> z, std::complex<double> target, std::size_t steps,
                      const StepFailure& failure);
/// Rebuilds a certificate; remainders other than the last are not stored.
ExpansionCertificate certificate_from_record(const Record& record);

Record coverage_record(const CoverageReport& report, const DigitSet& h, int max_degree, SymmetryMode symmetry);
Record exclusion_record(const std::optional<ExclusionCertificate>& cert, const DigitSet& h, double modulus,
                        std::size_t samples);

/// Binary PGM ("P5", maxval 255) of root counts over [-2.2, 2.2]^2, top row at
/// maximal imaginary part; pixel = round-half-up(255 log(1+c) / log(1+c_max)).
/// Each row contributes its multiplicity to c.
std::string render_pgm(const std::vector<CloudRow>& rows, int width, int height);

inline constexpr double kRenderExtent = 2.2;

}  // namespace rootset::io

#endif  // ROOTSET_IO_HPP
