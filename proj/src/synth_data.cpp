#include "mcboost/synth_data.hpp"

#include <cmath>

namespace mcboost {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// splitmix64: tiny, well-mixed, and identical on every platform, which is all
// the generators need. Every (kind, split-role, class) triple gets its own
// stream so adding a class or resizing a split never shifts other draws.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1), from the top 53 bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Stream i is seeded with the (i+1)-th output of a generator seeded by the
// user seed; i encodes (kind, role, class).
SplitMix64 stream(std::uint64_t seed, int kind, int role, int cls) {
  SplitMix64 root(seed);
  const int index = kind * 16 + role * 8 + cls;
  std::uint64_t derived = 0;
  for (int skip = 0; skip <= index; ++skip) derived = root.next();
  return SplitMix64(derived);
}

// One standard-normal pair per point (Box-Muller; u1 shifted into (0, 1]).
void gaussian_pair(SplitMix64& gen, double& a, double& b) {
  const double u1 = 1.0 - gen.uniform();
  const double u2 = gen.uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  a = radius * std::cos(angle);
  b = radius * std::sin(angle);
}

Eigen::Index scaled_count(Eigen::Index train_count, double split) {
  return static_cast<Eigen::Index>(
      std::llround(static_cast<double>(train_count) * (1.0 - split) / split));
}

Dataset make_gauss4(std::uint64_t seed, int role, double split) {
  constexpr double kMeans[4][2] = {{1.5, 1.5}, {-1.5, 1.5}, {-1.5, -1.5}, {1.5, -1.5}};
  constexpr double kDeviations[4] = {0.4, 0.6, 0.8, 1.0};
  constexpr Eigen::Index kTrainPerClass = 50;

  std::vector<Eigen::Index> counts(4);
  Eigen::Index total = 0;
  for (int c = 0; c < 4; ++c) {
    counts[static_cast<size_t>(c)] =
        role == 0 ? kTrainPerClass : scaled_count(kTrainPerClass, split);
    total += counts[static_cast<size_t>(c)];
  }

  Dataset data;
  data.num_classes = 4;
  data.x.resize(total, 2);
  data.labels.resize(static_cast<size_t>(total));
  Eigen::Index row = 0;
  for (int c = 0; c < 4; ++c) {
    SplitMix64 gen = stream(seed, 0, role, c);
    for (Eigen::Index p = 0; p < counts[static_cast<size_t>(c)]; ++p) {
      double a, b;
      gaussian_pair(gen, a, b);
      data.x(row, 0) = kMeans[c][0] + kDeviations[c] * a;
      data.x(row, 1) = kMeans[c][1] + kDeviations[c] * b;
      data.labels[static_cast<size_t>(row)] = c;
      ++row;
    }
  }
  return data;
}

Dataset make_ring6(std::uint64_t seed, int role, double split) {
  std::vector<Eigen::Index> counts(6);
  Eigen::Index total = 0;
  for (int c = 0; c < 6; ++c) {
    const Eigen::Index train_count = 50 * (c + 1);
    counts[static_cast<size_t>(c)] = role == 0 ? train_count : scaled_count(train_count, split);
    total += counts[static_cast<size_t>(c)];
  }

  Dataset data;
  data.num_classes = 6;
  data.x.resize(total, 2);
  data.labels.resize(static_cast<size_t>(total));
  Eigen::Index row = 0;
  for (int c = 0; c < 6; ++c) {
    SplitMix64 gen = stream(seed, 1, role, c);
    for (Eigen::Index p = 0; p < counts[static_cast<size_t>(c)]; ++p) {
      const double angle = kTwoPi * gen.uniform();
      const double radius = static_cast<double>(c) + gen.uniform();
      data.x(row, 0) = radius * std::cos(angle);
      data.x(row, 1) = radius * std::sin(angle);
      data.labels[static_cast<size_t>(row)] = c;
      ++row;
    }
  }
  return data;
}

}  // namespace

SynthPair generate(const SynthSpec& spec) {
  if (!(spec.split > 0.0) || spec.split > 1.0) throw InputError("split must be in (0, 1]");
  SynthPair pair;
  if (spec.kind == SynthKind::Gauss4) {
    pair.train = make_gauss4(spec.seed, 0, spec.split);
    pair.test = make_gauss4(spec.seed, 1, spec.split);
  } else {
    pair.train = make_ring6(spec.seed, 0, spec.split);
    pair.test = make_ring6(spec.seed, 1, spec.split);
  }
  return pair;
}

}  // namespace mcboost
