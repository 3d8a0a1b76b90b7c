#pragma once

#include <cstdint>

#include "mcboost/model.hpp"

namespace mcboost {

enum class SynthKind { Gauss4, Ring6 };

/// Generation is a pure function of (kind, seed, split): same spec, same
/// bytes, on any platform.
struct SynthSpec {
  SynthKind kind = SynthKind::Gauss4;
  std::uint64_t seed = 0;
  double split = 0.5;  // train fraction; test sizes scale as (1-split)/split
};

struct SynthPair {
  Dataset train;
  Dataset test;
};

/// Gauss4: four planar Gaussian clusters, 50 training points each, means at
/// (+-1.5, +-1.5), standard deviations 0.4/0.6/0.8/1.0 by class.
/// Ring6: six annuli; class c (1-based) has 50c training points with angle
/// uniform on [0, 2pi) and radius uniform on [c-1, c).
SynthPair generate(const SynthSpec& spec);

}  // namespace mcboost
