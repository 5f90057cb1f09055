#include "rootset/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rootset/coverage.hpp"
#include "rootset/digit_set.hpp"
#include "rootset/enumeration.hpp"
#include "rootset/expansion.hpp"
#include "rootset/io.hpp"

namespace rootset::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw UsageError("expected RE,IM but got '" + text + "'");
  try {
    return {io::parse_double(text.substr(0, comma)), io::parse_double(text.substr(comma + 1))};
  } catch (const io::FormatError& e) {
    throw UsageError(e.what());
  }
}

// Writes `content` to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw UsageError("failed writing '" + path + "'");
}

std::string to_text(const io::Record& record) {
  std::ostringstream s;
  record.write(s);
  return s.str();
}

struct Common {
  std::string set_spec;
  std::size_t threads = 0;
  std::uint64_t cap = kDefaultEnumerationCap;
  bool force = false;
  std::string symmetry = "none";

  EnumerationOptions enumeration() const {
    EnumerationOptions options;
    options.symmetry = parse_symmetry(symmetry);
    options.workers = threads > 0 ? threads : default_workers();
    options.cap = cap;
    options.override_cap = force;
    return options;
  }
};

void add_enumeration_flags(CLI::App* sub, Common& common) {
  sub->add_option("--symmetry", common.symmetry, "none or phase-orbit")
      ->check(CLI::IsMember({"none", "phase-orbit"}));
  sub->add_option("--threads", common.threads, "worker threads (default: $ROOTSET_THREADS or all cores)");
  sub->add_option("--cap", common.cap, "refuse enumerations larger than this many polynomials");
  sub->add_flag("--force", common.force, "run even when the cap is exceeded");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Root sets of polynomials and power series with unimodular digits", "rootset"};
  app.require_subcommand(1);
  Common common;
  const std::string set_help = "digit set: uniform:K, angles:T1,T2,... (radians) or littlewood";

  auto* threshold = app.add_subcommand("threshold", "density threshold for r, or the covered radius of a set");
  std::optional<double> r_value;
  threshold->add_option("--r", r_value, "modulus in (1/2, 1)");
  threshold->add_option("--set", common.set_spec, set_help);

  auto* expand_cmd = app.add_subcommand("expand", "greedy expansion certificate for sum a_n z^n = target");
  std::string z_text, target_text = "0,0", out_path;
  std::size_t steps = 64;
  expand_cmd->add_option("--set", common.set_spec, set_help)->required();
  expand_cmd->add_option("--z", z_text, "evaluation point RE,IM")->required();
  expand_cmd->add_option("--target", target_text, "target RE,IM (default 0,0)");
  expand_cmd->add_option("--steps", steps, "number of steps N (N+1 digits)")->check(CLI::PositiveNumber);
  expand_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "roots of every polynomial up to a degree");
  int max_degree = 0;
  enumerate_cmd->add_option("--set", common.set_spec, set_help)->required();
  enumerate_cmd->add_option("--max-degree", max_degree, "largest degree")->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--out", out_path, "CSV output (default stdout)");
  add_enumeration_flags(enumerate_cmd, common);

  auto* coverage_cmd = app.add_subcommand("coverage", "fraction of annulus cells hit by the root cloud");
  double r_in = 0.0, r_out = 0.0, eps = 0.0;
  std::string raster_path;
  int width = 512, height = 512;
  coverage_cmd->add_option("--set", common.set_spec, set_help)->required();
  coverage_cmd->add_option("--max-degree", max_degree, "largest degree")->required()->check(CLI::PositiveNumber);
  coverage_cmd->add_option("--rin", r_in, "inner radius")->required();
  coverage_cmd->add_option("--rout", r_out, "outer radius")->required();
  coverage_cmd->add_option("--eps", eps, "cell side length")->required();
  coverage_cmd->add_option("--out", out_path, "report output (default stdout)");
  coverage_cmd->add_option("--raster", raster_path, "optional PGM of the cloud");
  coverage_cmd->add_option("--width", width, "raster width")->check(CLI::PositiveNumber);
  coverage_cmd->add_option("--height", height, "raster height")->check(CLI::PositiveNumber);
  add_enumeration_flags(coverage_cmd, common);

  auto* exclude_cmd = app.add_subcommand("exclude", "search a circle for a certified hole");
  double modulus = 0.5;
  std::size_t samples = 360;
  exclude_cmd->add_option("--set", common.set_spec, set_help)->required();
  exclude_cmd->add_option("--modulus", modulus, "circle modulus in (0, 1)")->required();
  exclude_cmd->add_option("--samples", samples, "coarse sweep size (>= 8)");
  exclude_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* render_cmd = app.add_subcommand("render", "rasterize a root cloud CSV to PGM");
  std::string in_path;
  render_cmd->add_option("--in", in_path, "root cloud CSV")->required();
  render_cmd->add_option("--out", out_path, "PGM output")->required();
  render_cmd->add_option("--width", width, "raster width")->check(CLI::PositiveNumber);
  render_cmd->add_option("--height", height, "raster height")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidArguments;
  }

  try {
    if (threshold->parsed()) {
      if (r_value.has_value() == !common.set_spec.empty())
        throw UsageError("threshold needs exactly one of --r or --set");
      if (r_value) {
        out << io::format_double(density_threshold(*r_value)) << '\n';
      } else {
        const DigitSet h = DigitSet::parse(common.set_spec);
        const auto radius = min_covered_radius(h);
        out << "max_gap: " << io::format_double(max_gap(h)) << '\n'
            << "min_covered_radius: " << (radius ? io::format_double(*radius) : std::string("none")) << '\n';
      }
      return kSuccess;
    }

    if (expand_cmd->parsed()) {
      const DigitSet h = DigitSet::parse(common.set_spec);
      const auto z = parse_complex(z_text);
      const auto target = parse_complex(target_text);
      const auto result = expand(z, target, h, steps);
      if (const auto* failure = std::get_if<StepFailure>(&result)) {
        emit(out_path, to_text(io::failure_record(h, z, target, steps, *failure)), out);
        err << "expansion failed at step " << failure->step << '\n';
        return kCertifiedFailure;
      }
      const auto& cert = std::get<ExpansionCertificate>(result);
      emit(out_path, to_text(io::certificate_record(cert)), out);
      return cert.passed ? kSuccess : kCertifiedFailure;
    }

    if (enumerate_cmd->parsed()) {
      const DigitSet h = DigitSet::parse(common.set_spec);
      const RootCloud cloud = all_roots(h, max_degree, common.enumeration());
      std::ostringstream csv;
      io::write_cloud_csv(csv, io::cloud_rows(cloud.records));
      emit(out_path, csv.str(), out);
      if (cloud.uncertified > 0) err << cloud.uncertified << " roots missed the residual tolerance\n";
      return kSuccess;
    }

    if (coverage_cmd->parsed()) {
      const DigitSet h = DigitSet::parse(common.set_spec);
      const AnnulusGrid grid(r_in, r_out, eps);
      const auto options = common.enumeration();
      const RootCloud cloud = all_roots(h, max_degree, options);
      const auto report = coverage_report(cloud, grid);
      emit(out_path, to_text(io::coverage_record(report, h, max_degree, options.symmetry)), out);
      if (!raster_path.empty()) emit(raster_path, io::render_pgm(io::cloud_rows(cloud.records), width, height), out);
      return kSuccess;
    }

    if (exclude_cmd->parsed()) {
      const DigitSet h = DigitSet::parse(common.set_spec);
      const auto cert = hole_search(h, modulus, samples);
      emit(out_path, to_text(io::exclusion_record(cert, h, modulus, samples)), out);
      return kSuccess;
    }

    if (render_cmd->parsed()) {
      std::ifstream file(in_path, std::ios::binary);
      if (!file) throw UsageError("cannot open '" + in_path + "'");
      const auto rows = io::read_cloud_csv(file);
      emit(out_path, io::render_pgm(rows, width, height), out);
      return kSuccess;
    }
  } catch (const ResourceCapExceeded& e) {
    err << "refused: " << e.what() << " (pass --force to run anyway)\n";
    return kResourceCapRefused;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInvalidArguments;
}

}  // namespace rootset::cli
