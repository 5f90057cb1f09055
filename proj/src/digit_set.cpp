#include "rootset/digit_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rootset {

namespace {

std::string format_angles_label(const std::vector<double>& angles) {
  std::string out = "angles:";
  char buf[32];
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", angles[i]);
    out += buf;
  }
  return out;
}

double parse_double(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (pos != text.size() || !std::isfinite(value))
    throw std::invalid_argument("not a finite number: '" + text + "'");
  return value;
}

}  // namespace

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::complex<double> unit_from_angle(double theta) {
  const double quarters = reduce_angle(theta) / (std::numbers::pi / 2.0);
  const double nearest = std::round(quarters);
  if (std::abs(quarters - nearest) * (std::numbers::pi / 2.0) < kAngleTolerance) {
    switch (static_cast<int>(nearest) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, theta);
}

DigitSet::DigitSet(std::vector<double> angles, std::string label)
    : angles_(std::move(angles)), label_(std::move(label)) {
  digits_.reserve(angles_.size());
  for (double a : angles_) digits_.push_back(unit_from_angle(a));
  if (label_.empty()) label_ = format_angles_label(angles_);
}

DigitSet DigitSet::from_angles(std::span<const double> raw, std::string label) {
  if (raw.empty()) throw std::invalid_argument("digit set must be nonempty");
  std::vector<double> reduced;
  reduced.reserve(raw.size());
  for (double t : raw) {
    if (!std::isfinite(t)) throw std::invalid_argument("digit angle must be finite");
    reduced.push_back(reduce_angle(t));
  }
  std::sort(reduced.begin(), reduced.end());
  std::vector<double> unique;
  for (double t : reduced) {
    if (unique.empty() || t - unique.back() > kAngleTolerance) unique.push_back(t);
  }
  // An angle just below 2pi coincides with one at 0.
  while (unique.size() > 1 && kTwoPi - unique.back() + unique.front() <= kAngleTolerance)
    unique.pop_back();
  return DigitSet(std::move(unique), std::move(label));
}

DigitSet DigitSet::uniform(std::size_t k) {
  if (k == 0) throw std::invalid_argument("uniform digit set needs k >= 1");
  std::vector<double> angles(k);
  for (std::size_t j = 0; j < k; ++j) angles[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
  return DigitSet(std::move(angles), "uniform:" + std::to_string(k));
}

DigitSet DigitSet::parse(const std::string& spec) {
  if (spec == "littlewood") return uniform(2);
  if (spec.rfind("uniform:", 0) == 0) {
    const std::string body = spec.substr(8);
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
    if (ec != std::errc{} || ptr != body.data() + body.size() || body.empty() || k == 0)
      throw std::invalid_argument("bad uniform digit count in '" + spec + "'");
    return uniform(k);
  }
  if (spec.rfind("angles:", 0) == 0) {
    std::vector<double> raw;
    std::string body = spec.substr(7);
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      raw.push_back(parse_double(body.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return from_angles(raw);
  }
  throw std::invalid_argument("unknown digit set '" + spec + "'");
}

std::optional<std::size_t> DigitSet::find(double theta) const {
  const double t = reduce_angle(theta);
  auto it = std::lower_bound(angles_.begin(), angles_.end(), t);
  std::optional<std::size_t> best;
  double best_dist = kAngleTolerance;
  auto consider = [&](std::size_t i) {
    const double d = angular_distance(angles_[i], t);
    if (d <= best_dist) {
      best_dist = d;
      best = i;
    }
  };
  const std::size_t n = angles_.size();
  const std::size_t pos = static_cast<std::size_t>(it - angles_.begin());
  consider(pos % n);
  consider((pos + n - 1) % n);
  return best;
}

std::size_t DigitSet::rotation_order() const {
  const std::size_t n = size();
  for (std::size_t s = n; s > 1; --s) {
    if (n % s != 0) continue;
    const double step = kTwoPi / static_cast<double>(s);
    bool closed = true;
    for (double a : angles_) {
      if (!find(a + step)) {
        closed = false;
        break;
      }
    }
    if (closed) return s;
  }
  return 1;
}

std::vector<std::size_t> DigitSet::rotation_permutation() const {
  const double step = kTwoPi / static_cast<double>(rotation_order());
  std::vector<std::size_t> perm(size());
  for (std::size_t i = 0; i < size(); ++i) perm[i] = *find(angles_[i] + step);
  return perm;
}

DigitSet normalize_angles(std::span<const double> raw) { return DigitSet::from_angles(raw); }

double angular_distance(double theta, double theta_prime) {
  const double d = reduce_angle(theta - theta_prime);
  return std::min(d, kTwoPi - d);
}

double max_gap(const DigitSet& h) {
  const auto& a = h.angles();
  if (a.size() == 1) return kTwoPi;
  double gap = kTwoPi - a.back() + a.front();
  for (std::size_t i = 1; i < a.size(); ++i) gap = std::max(gap, a[i] - a[i - 1]);
  return gap;
}

double density_threshold(double r) {
  if (!(r > 0.5 && r < 1.0)) throw std::domain_error("density_threshold needs r in (1/2, 1)");
  return 2.0 * std::acos((5.0 - 4.0 * r * r) / 4.0);
}

double max_useful_gap() { return 2.0 * std::acos(0.25); }

std::optional<double> min_covered_radius(const DigitSet& h) {
  const double gap = max_gap(h);
  const double r2 = 1.25 - std::cos(gap / 2.0);
  if (!(r2 < 1.0)) return std::nullopt;
  return std::sqrt(r2);
}

}  // namespace rootset
