#include "rootset/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cctype>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace rootset::io {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& text) {
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text == "nan") return NAN;
  // strtod rather than stod: subnormal results set ERANGE but are valid.
  if (text.empty() || std::isspace(static_cast<unsigned char>(text.front())))
    throw FormatError("not a number: '" + text + "'");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str()) throw FormatError("not a number: '" + text + "'");
  if (end != text.c_str() + text.size()) throw FormatError("trailing characters in number: '" + text + "'");
  if (errno == ERANGE && std::isinf(value)) throw FormatError("number out of range: '" + text + "'");
  return value;
}

std::vector<CloudRow> cloud_rows(const std::vector<RootRecord>& records) {
  std::vector<CloudRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back({r.z, std::abs(r.z), r.multiplicity, r.degree, r.source_index});
  sort_rows(rows);
  return rows;
}

void sort_rows(std::vector<CloudRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const CloudRow& a, const CloudRow& b) {
    return std::make_tuple(a.degree, a.z.real(), a.z.imag(), a.source_index, a.multiplicity) <
           std::make_tuple(b.degree, b.z.real(), b.z.imag(), b.source_index, b.multiplicity);
  });
}

void write_cloud_csv(std::ostream& out, std::vector<CloudRow> rows) {
  sort_rows(rows);
  out << kCloudHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.z.real()) << ',' << format_double(r.z.imag()) << ',' << format_double(r.modulus) << ','
        << r.multiplicity << ',' << r.degree << ',' << r.source_index << '\n';
  }
}

std::vector<CloudRow> read_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kCloudHeader) throw FormatError("missing root cloud CSV header");
  std::vector<CloudRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 6) throw FormatError("line " + std::to_string(line_no) + ": expected 6 fields");
    try {
      CloudRow row;
      row.z = {parse_double(fields[0]), parse_double(fields[1])};
      row.modulus = parse_double(fields[2]);
      row.multiplicity = std::stoi(fields[3]);
      row.degree = std::stoi(fields[4]);
      row.source_index = std::stoull(fields[5]);
      rows.push_back(row);
    } catch (const std::logic_error&) {
      throw FormatError("line " + std::to_string(line_no) + ": malformed field");
    }
  }
  return rows;
}

void Record::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void Record::set(const std::string& key, const std::vector<double>& values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) joined += ',';
    joined += format_double(values[i]);
  }
  set(key, joined);
}

bool Record::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& Record::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw FormatError("missing key '" + key + "'");
}

double Record::get_double(const std::string& key) const { return parse_double(get(key)); }

std::int64_t Record::get_int(const std::string& key) const {
  const auto& v = get(key);
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty())
    throw FormatError("key '" + key + "' is not an integer");
  return value;
}

bool Record::get_bool(const std::string& key) const {
  const auto& v = get(key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw FormatError("key '" + key + "' is not a boolean");
}

std::vector<double> Record::get_doubles(const std::string& key) const {
  const auto& v = get(key);
  std::vector<double> out;
  if (v.empty()) return out;
  for (const auto& part : split(v, ',')) out.push_back(parse_double(part));
  return out;
}

void Record::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << ": " << v << '\n';
}

Record Record::read(std::istream& in) {
  Record record;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::size_t colon = line.find(": ");
    if (colon == std::string::npos) {
      if (!line.empty() && line.back() == ':') {
        record.set(line.substr(0, line.size() - 1), std::string());
        continue;
      }
      throw FormatError("expected 'key: value', got '" + line + "'");
    }
    record.set(line.substr(0, colon), line.substr(colon + 2));
  }
  return record;
}

Record certificate_record(const ExpansionCertificate& cert) {
  Record r;
  r.set("record", std::string("expansion_certificate"));
  r.set("digit_set", cert.digit_set.label());
  r.set("z_re", cert.z.real());
  r.set("z_im", cert.z.imag());
  r.set("target_re", cert.target.real());
  r.set("target_im", cert.target.imag());
  r.set_int("steps", static_cast<std::int64_t>(cert.steps()));
  r.set("digit_angles", cert.digit_angles);
  r.set("remainder_re", cert.remainder.real());
  r.set("remainder_im", cert.remainder.imag());
  r.set("tail_bound", cert.tail_bound);
  r.set("achieved_residual", cert.achieved_residual);
  r.set("passed", cert.passed);
  return r;
}

Record failure_record(const DigitSet& h, std::complex<double> z, std::complex<double> target, std::size_t steps,
                      const StepFailure& failure) {
  Record r;
  r.set("record", std::string("expansion_failure"));
  r.set("digit_set", h.label());
  r.set("z_re", z.real());
  r.set("z_im", z.imag());
  r.set("target_re", target.real());
  r.set("target_im", target.imag());
  r.set_int("steps", static_cast<std::int64_t>(steps));
  r.set_int("failed_step", static_cast<std::int64_t>(failure.step));
  r.set("min_distance", failure.min_distance);
  r.set("bound", failure.bound);
  r.set("digit_angles", failure.digit_angles);
  r.set("passed", false);
  return r;
}

ExpansionCertificate certificate_from_record(const Record& record) {
  if (record.get("record") != "expansion_certificate") throw FormatError("not an expansion certificate");
  ExpansionCertificate cert{DigitSet::parse(record.get("digit_set")),
                            {record.get_double("z_re"), record.get_double("z_im")},
                            {record.get_double("target_re"), record.get_double("target_im")},
                            record.get_doubles("digit_angles"),
                            {},
                            {record.get_double("remainder_re"), record.get_double("remainder_im")},
                            record.get_double("tail_bound"),
                            record.get_double("achieved_residual"),
                            record.get_bool("passed")};
  cert.remainders.push_back(cert.remainder);
  return cert;
}

Record coverage_record(const CoverageReport& report, const DigitSet& h, int max_degree, SymmetryMode symmetry) {
  Record r;
  r.set("record", std::string("coverage_report"));
  r.set("digit_set", h.label());
  r.set_int("max_degree", max_degree);
  r.set("symmetry", std::string(to_string(symmetry)));
  r.set("r_inner", report.r_inner);
  r.set("r_outer", report.r_outer);
  r.set("cell_size", report.cell_size);
  r.set_int("total_cells", static_cast<std::int64_t>(report.total_cells));
  r.set_int("hit_cells", static_cast<std::int64_t>(report.hit_cells));
  r.set("hit_fraction", report.hit_fraction);
  std::string flags(report.hits.size(), '0');
  for (std::size_t i = 0; i < report.hits.size(); ++i)
    if (report.hits[i]) flags[i] = '1';
  r.set("hit_flags", flags);
  return r;
}

Record exclusion_record(const std::optional<ExclusionCertificate>& cert, const DigitSet& h, double modulus,
                        std::size_t samples) {
  Record r;
  r.set("record", std::string("exclusion_certificate"));
  r.set("digit_set", h.label());
  r.set("modulus", modulus);
  r.set_int("samples", static_cast<std::int64_t>(samples));
  r.set("found", cert.has_value());
  if (cert) {
    r.set("z_re", cert->z.real());
    r.set("z_im", cert->z.imag());
    r.set("margin", cert->margin);
    r.set("delta", cert->delta);
  }
  return r;
}

std::string render_pgm(const std::vector<CloudRow>& rows, int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("raster dimensions must be positive");
  const auto w = static_cast<std::size_t>(width), h = static_cast<std::size_t>(height);
  std::vector<std::uint64_t> counts(w * h, 0);
  const double span = 2.0 * kRenderExtent;
  for (const auto& r : rows) {
    const double col = std::floor((r.z.real() + kRenderExtent) / span * width);
    const double row = std::floor((kRenderExtent - r.z.imag()) / span * height);
    if (!(col >= 0 && col < width && row >= 0 && row < height)) continue;
    counts[static_cast<std::size_t>(row) * w + static_cast<std::size_t>(col)] +=
        static_cast<std::uint64_t>(std::max(r.multiplicity, 0));
  }
  const std::uint64_t peak = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + w * h, '\0');
  if (peak > 0) {
    const double denom = std::log1p(static_cast<double>(peak));
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const double value = 255.0 * std::log1p(static_cast<double>(counts[k])) / denom;
      out[header + k] = static_cast<char>(static_cast<unsigned char>(std::min(255.0, std::floor(value + 0.5))));
    }
  }
  return out;
}

}  // namespace rootset::io
