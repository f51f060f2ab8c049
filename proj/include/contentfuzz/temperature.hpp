#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "contentfuzz/random.hpp"

namespace cfuzz {

// Grid {0.0, 0.1, ..., 2.0}, addressed by deci-unit index 0..20.
inline constexpr std::size_t kTemperatureGridSize = 21;

constexpr double grid_temperature(std::size_t index) { return static_cast<double>(index) / 10.0; }

// Index of t on the grid, or nullopt when t is not within 1e-9 of a grid value.
std::optional<std::size_t> grid_index(double t);

struct TemperatureMode {
  bool fixed = false;
  double value = 1.0;  // fixed only

  static TemperatureMode scheduled() { return {}; }
  static TemperatureMode constant(double v);

  // "scheduled" or "fixed:<v>" with v in [0, 2].
  static TemperatureMode parse(std::string_view raw);
  std::string to_string() const;
};

// Energy-proportional sampling: P(t) = E_t / sum(E), every E_t starting at 1.
class TemperatureState {
 public:
  explicit TemperatureState(TemperatureMode mode = TemperatureMode::scheduled());

  double sample(Rng& rng) const;

  // E_t += successes / total. Throws for off-grid t or successes > total.
  void update_energy(double t, std::size_t successes, std::size_t total);

  double probability(double t) const;
  const std::array<double, kTemperatureGridSize>& energies() const noexcept { return energies_; }
  const TemperatureMode& mode() const noexcept { return mode_; }

 private:
  TemperatureMode mode_;
  std::array<double, kTemperatureGridSize> energies_;
};

}  // namespace cfuzz
