#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kpotts/instance_io.hpp"

namespace kpotts {

enum class Topology { Grid, Sparse };

struct RandomSpec {
  Topology topology = Topology::Grid;
  int width = 8;   // grid only
  int height = 8;  // grid only
  NodeId nodes = 16;     // sparse only
  double density = 0.2;  // sparse only: probability of each node pair
  Label labels = 4;
  Cost cost_lo = 0;
  Cost cost_hi = 100;
  Cost lambda_lo = 0;
  Cost lambda_hi = 20;
};

/// Uniform random unaries and edge weights. Deterministic in (seed, spec).
/// Throws std::invalid_argument for empty or reversed ranges.
InstanceFile generate_random(std::uint64_t seed, const RandomSpec& spec);

struct StereoSpec {
  int width = 64;
  int height = 64;
  Label labels = 16;
  /// Standard deviation of the Gaussian noise added to both images, in
  /// intensity units (textures use one intensity step per value).
  double noise = 4.0;
  /// Side of the square box filter applied to the matching costs; 1 = none.
  int window = 1;
  Cost lambda = 1000;
  /// Rectangles of constant disparity painted over the background.
  int regions = 6;
};

struct StereoInstance {
  InstanceFile file;
  std::vector<Label> truth;
};

/// Synthetic rectified stereo pair with a piecewise-constant disparity map.
/// Each image row is a random permutation texture; the matching cost of
/// disparity d at a pixel is the squared intensity difference, summed over a
/// window x window box (borders replicate). 4-connected grid, uniform lambda.
StereoInstance generate_stereo(std::uint64_t seed, const StereoSpec& spec);

/// Merges the k labels into `target` contiguous intervals; the unary cost of
/// an interval is the minimum over the labels it contains.
PottsInstance subsample_labels(const PottsInstance& inst, Label target);
InstanceFile subsample_labels(const InstanceFile& file, Label target);

/// Interval index of every ground-truth label after subsample_labels.
std::vector<Label> subsample_truth(std::span<const Label> truth, Label from, Label target);

/// Fraction of labeled nodes whose label differs from the ground truth by more
/// than one; unlabeled nodes are skipped. 0 when nothing is labeled.
double error_rate(std::span<const Label> x, std::span<const Label> truth);

}  // namespace kpotts
