#include "contentfuzz/temperature.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "contentfuzz/core.hpp"

namespace cfuzz {

std::optional<std::size_t> grid_index(double t) {
  if (!std::isfinite(t)) return std::nullopt;
  const double deci = std::round(t * 10.0);
  if (deci < 0.0 || deci >= static_cast<double>(kTemperatureGridSize)) return std::nullopt;
  if (std::abs(t * 10.0 - deci) > 1e-9) return std::nullopt;
  return static_cast<std::size_t>(deci);
}

TemperatureMode TemperatureMode::constant(double v) {
  if (!(v >= 0.0 && v <= 2.0)) throw std::invalid_argument("fixed temperature must lie in [0, 2]");
  return {true, v};
}

TemperatureMode TemperatureMode::parse(std::string_view raw) {
  if (raw == "scheduled") return scheduled();
  constexpr std::string_view prefix = "fixed:";
  if (raw.substr(0, prefix.size()) == prefix) {
    const std::string number(raw.substr(prefix.size()));
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(number, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed == 0 || consumed != number.size()) {
      throw ParseError("bad fixed temperature '" + std::string(raw) + "'");
    }
    try {
      return constant(v);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("temperature must be 'scheduled' or 'fixed:<v>', got '" + std::string(raw) +
                   "'");
}

std::string TemperatureMode::to_string() const {
  if (!fixed) return "scheduled";
  char buf[32];
  std::snprintf(buf, sizeof buf, "fixed:%g", value);
  return buf;
}

TemperatureState::TemperatureState(TemperatureMode mode) : mode_(mode) { energies_.fill(1.0); }

double TemperatureState::sample(Rng& rng) const {
  if (mode_.fixed) return mode_.value;
  return grid_temperature(rng.weighted_index(energies_));
}

void TemperatureState::update_energy(double t, std::size_t successes, std::size_t total) {
  const auto index = grid_index(t);
  if (!index) throw std::invalid_argument("temperature " + std::to_string(t) + " is off the grid");
  if (total == 0) throw std::invalid_argument("energy update needs at least one candidate");
  if (successes > total) throw std::invalid_argument("successes exceed candidates");
  energies_[*index] += static_cast<double>(successes) / static_cast<double>(total);
}

double TemperatureState::probability(double t) const {
  const auto index = grid_index(t);
  if (!index) return 0.0;
  const double total = std::accumulate(energies_.begin(), energies_.end(), 0.0);
  return energies_[*index] / total;
}

}  // namespace cfuzz
