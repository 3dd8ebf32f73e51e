#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "wbm/bodies.hpp"

namespace wbm {

enum class GenKind {
  polygon,            ///< hull of 4..10 uniform points in [-1, 1]^2
  symmetric_polygon,  ///< same, point set symmetrized about the origin
  origin_polygon,     ///< polygon containing the origin in its interior
  zonotope,           ///< random center, 2..5 random generators
  origin_zonotope,    ///< zonotope whose center is chosen so that it contains 0
  centered_zonotope,  ///< zonotope centered at the origin
  ball,
  segment,
  interval,            ///< random interval in [-1, 1]
  symmetric_interval,  ///< [-a, a]
};

std::string_view to_string(GenKind k);
GenKind gen_kind_from_string(std::string_view s);

struct GenConfig {
  GenKind kind = GenKind::polygon;
  /// Bodies are multiplied by a factor drawn log-uniformly from [scale_lo, scale_hi].
  double scale_lo = 1.0;
  double scale_hi = 1.0;
};

/// Independent stream for instance `index` of a run seeded with `seed`.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

Body random_body(std::mt19937_64& rng, const GenConfig& cfg);

}  // namespace wbm
