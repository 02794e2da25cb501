#include <loglin/sim/disturbance.hpp>

#include <cmath>
#include <numbers>

namespace loglin::sim {

DisturbanceFamily parse_family(const std::string& name) {
  if (name == "sinusoid") return DisturbanceFamily::Sinusoid;
  if (name == "square") return DisturbanceFamily::Square;
  if (name == "mixed") return DisturbanceFamily::Mixed;
  throw DomainError("unknown disturbance family '" + name + "' (sinusoid, square, mixed)");
}

std::string to_string(DisturbanceFamily family) {
  switch (family) {
    case DisturbanceFamily::Sinusoid: return "sinusoid";
    case DisturbanceFamily::Square: return "square";
    case DisturbanceFamily::Mixed: return "mixed";
  }
  return "mixed";
}

void DisturbanceSpec::validate() const {
  if (!accel_bound.allFinite() || !alpha_bound.allFinite() || accel_bound.minCoeff() < 0.0 ||
      alpha_bound.minCoeff() < 0.0)
    throw DomainError("disturbance bounds must be finite and non-negative");
  if (!(freq_min > 0.0) || !(freq_max >= freq_min) || !std::isfinite(freq_max))
    throw DomainError("disturbance frequency range must satisfy 0 < min <= max");
}

double Waveform::operator()(double t) const {
  const double s = std::sin(2.0 * std::numbers::pi * frequency * t + phase);
  if (square) return s >= 0.0 ? amplitude : -amplitude;
  return amplitude * s;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Disturbance Disturbance::sample(const DisturbanceSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  Disturbance d;
  const double log_lo = std::log(spec.freq_min);
  const double log_hi = std::log(spec.freq_max);
  for (std::size_t i = 0; i < 6; ++i) {
    const double bound =
        i < 3 ? spec.accel_bound(static_cast<Eigen::Index>(i))
              : spec.alpha_bound(static_cast<Eigen::Index>(i - 3));
    Waveform& w = d.channels_[i];
    // Draws happen unconditionally so channel streams do not depend on bounds.
    const double ua = uniform01(rng);
    const double uf = uniform01(rng);
    const double up = uniform01(rng);
    const double uk = uniform01(rng);
    w.amplitude = bound * (1.0 - ua);
    w.frequency = std::exp(log_lo + (log_hi - log_lo) * uf);
    w.phase = 2.0 * std::numbers::pi * up;
    switch (spec.family) {
      case DisturbanceFamily::Sinusoid: w.square = false; break;
      case DisturbanceFamily::Square: w.square = true; break;
      case DisturbanceFamily::Mixed: w.square = uk >= 0.5; break;
    }
  }
  return d;
}

Vec3 Disturbance::accel(double t) const {
  return {channels_[0](t), channels_[1](t), channels_[2](t)};
}

Vec3 Disturbance::alpha(double t) const {
  return {channels_[3](t), channels_[4](t), channels_[5](t)};
}

}  // namespace loglin::sim
