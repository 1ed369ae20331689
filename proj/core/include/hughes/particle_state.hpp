#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace hughes {

enum class Direction { left, right };

/// Particle system of the two-sided follow-the-leader scheme.
///
/// Particles 0..split_index move toward the left exit, the rest toward the
/// right exit. split_index is -1 when every particle moves right and
/// positions.size() - 1 when every particle moves left. The gap between the
/// two groups carries zero density; every other gap carries `mass`.
struct ParticleState {
  double time = 0.0;
  std::vector<double> positions;
  int split_index = -1;
  double mass = 0.0;
  double xi = 0.0;

  std::size_t num_particles() const { return positions.size(); }
  std::size_t num_gaps() const { return positions.empty() ? 0 : positions.size() - 1; }

  Direction direction(std::size_t i) const {
    return static_cast<int>(i) <= split_index ? Direction::left : Direction::right;
  }

  /// Index of the zero-density gap, if both groups are non-empty.
  std::optional<std::size_t> zero_gap() const {
    if (split_index < 0 || split_index + 1 >= static_cast<int>(positions.size())) return std::nullopt;
    return static_cast<std::size_t>(split_index);
  }
};

}  // namespace hughes
