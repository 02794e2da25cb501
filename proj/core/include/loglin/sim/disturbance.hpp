#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include <loglin/types.hpp>

namespace loglin::sim {

enum class DisturbanceFamily { Sinusoid, Square, Mixed };

/// Parses "sinusoid", "square" or "mixed"; throws DomainError otherwise.
DisturbanceFamily parse_family(const std::string& name);
std::string to_string(DisturbanceFamily family);

struct DisturbanceSpec {
  Vec3 accel_bound = Vec3::Zero();  // body frame, m/s^2
  Vec3 alpha_bound = Vec3::Zero();  // reference frame, rad/s^2
  DisturbanceFamily family = DisturbanceFamily::Mixed;
  double freq_min = 0.1;  // Hz
  double freq_max = 10.0;

  void validate() const;
};

/// A single bounded scalar waveform A·s(2πft + φ).
struct Waveform {
  double amplitude = 0.0;
  double frequency = 1.0;
  double phase = 0.0;
  bool square = false;

  double operator()(double t) const;
};

/// SplitMix64 mix of a base seed and a run index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of the generator.
double uniform01(std::mt19937_64& rng);

/// Six independent channels: specific force (x, y, z) then angular
/// acceleration (x, y, z). Each channel stays within its bound for all t.
class Disturbance {
 public:
  Disturbance() = default;
  static Disturbance sample(const DisturbanceSpec& spec, std::uint64_t seed);

  Vec3 accel(double t) const;
  Vec3 alpha(double t) const;
  const std::array<Waveform, 6>& channels() const { return channels_; }

 private:
  std::array<Waveform, 6> channels_{};
};

}  // namespace loglin::sim
