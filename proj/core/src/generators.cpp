#include "kpotts/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace kpotts {

namespace {

Cost draw(std::mt19937_64& rng, Cost lo, Cost hi) {
  return std::uniform_int_distribution<Cost>(lo, hi)(rng);
}

}  // namespace

InstanceFile generate_random(std::uint64_t seed, const RandomSpec& spec) {
  if (spec.labels <= 0) throw std::invalid_argument("need at least one label");
  if (spec.cost_lo > spec.cost_hi || spec.lambda_lo > spec.lambda_hi || spec.lambda_lo < 0) {
    throw std::invalid_argument("empty or negative cost range");
  }
  std::mt19937_64 rng(seed);
  if (spec.topology == Topology::Grid) {
    if (spec.width <= 0 || spec.height <= 0) throw std::invalid_argument("empty grid");
    const GridShape grid{spec.width, spec.height};
    std::vector<Cost> unary(static_cast<std::size_t>(spec.width) * spec.height * spec.labels);
    for (auto& v : unary) v = draw(rng, spec.cost_lo, spec.cost_hi);
    auto edges = grid_edges(grid, 0);
    for (auto& e : edges) e.weight = draw(rng, spec.lambda_lo, spec.lambda_hi);
    InstanceFile f;
    f.instance = PottsInstance(grid.width * grid.height, spec.labels, std::move(unary),
                               std::move(edges));
    f.grid = grid;
    return f;
  }
  if (spec.nodes < 0 || spec.density < 0 || spec.density > 1) {
    throw std::invalid_argument("bad sparse graph parameters");
  }
  std::vector<Cost> unary(static_cast<std::size_t>(spec.nodes) * spec.labels);
  for (auto& v : unary) v = draw(rng, spec.cost_lo, spec.cost_hi);
  std::vector<Edge> edges;
  std::bernoulli_distribution keep(spec.density);
  for (NodeId i = 0; i < spec.nodes; ++i) {
    for (NodeId j = i + 1; j < spec.nodes; ++j) {
      if (keep(rng)) edges.push_back({i, j, draw(rng, spec.lambda_lo, spec.lambda_hi)});
    }
  }
  InstanceFile f;
  f.instance = PottsInstance(spec.nodes, spec.labels, std::move(unary), std::move(edges));
  return f;
}

StereoInstance generate_stereo(std::uint64_t seed, const StereoSpec& spec) {
  if (spec.labels < 2) throw std::invalid_argument("stereo needs at least two disparities");
  if (spec.window < 1 || spec.window % 2 == 0) throw std::invalid_argument("window must be odd");
  if (spec.width <= 0 || spec.height <= 0) throw std::invalid_argument("empty image");
  if (spec.noise < 0) throw std::invalid_argument("negative noise");
  std::mt19937_64 rng(seed);
  const int w = spec.width;
  const int h = spec.height;
  const int k = spec.labels;

  // Ground truth: background plus axis-aligned rectangles.
  std::vector<Label> truth(static_cast<std::size_t>(w) * h,
                           static_cast<Label>(draw(rng, 0, k - 1)));
  for (int r = 0; r < spec.regions; ++r) {
    const int x0 = static_cast<int>(draw(rng, 0, w - 1));
    const int y0 = static_cast<int>(draw(rng, 0, h - 1));
    const int x1 = std::min(w, x0 + 1 + static_cast<int>(draw(rng, w / 8, w / 2)));
    const int y1 = std::min(h, y0 + 1 + static_cast<int>(draw(rng, h / 8, h / 2)));
    const auto d = static_cast<Label>(draw(rng, 0, k - 1));
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) truth[static_cast<std::size_t>(y) * w + x] = d;
    }
  }

  // Right image R(x, y) = T(y, x + k) for x in [-k, w); left L(x, y) = R(x - d, y).
  // Rows of T are permutations, so a noiseless pixel matches only its truth.
  const int span = w + k;
  std::vector<double> texture(static_cast<std::size_t>(span) * h);
  std::vector<int> perm(span);
  for (int y = 0; y < h; ++y) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int t = 0; t < span; ++t) texture[static_cast<std::size_t>(y) * span + t] = perm[t];
  }
  std::normal_distribution<double> gauss(0.0, spec.noise);
  auto noisy = [&](double v) { return spec.noise > 0 ? v + gauss(rng) : v; };
  std::vector<double> right(texture.size());
  for (std::size_t t = 0; t < texture.size(); ++t) right[t] = noisy(texture[t]);
  std::vector<double> left(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y) * w + x;
      left[i] = noisy(texture[static_cast<std::size_t>(y) * span + x - truth[i] + k]);
    }
  }

  std::vector<Cost> raw(static_cast<std::size_t>(w) * h * k);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y) * w + x;
      for (int d = 0; d < k; ++d) {
        const double diff = left[i] - right[static_cast<std::size_t>(y) * span + x - d + k];
        raw[i * k + d] = std::llround(diff * diff);
      }
    }
  }

  std::vector<Cost> unary = raw;
  if (spec.window > 1) {
    const int r = spec.window / 2;
    auto clampi = [](int v, int lo, int hi) { return std::max(lo, std::min(hi, v)); };
    // Separable box sum with replicated borders.
    std::vector<Cost> rows(raw.size(), 0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int dx = -r; dx <= r; ++dx) {
          const auto src = (static_cast<std::size_t>(y) * w + clampi(x + dx, 0, w - 1)) * k;
          const auto dst = (static_cast<std::size_t>(y) * w + x) * k;
          for (int d = 0; d < k; ++d) rows[dst + d] += raw[src + d];
        }
      }
    }
    std::fill(unary.begin(), unary.end(), 0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int dy = -r; dy <= r; ++dy) {
          const auto src = (static_cast<std::size_t>(clampi(y + dy, 0, h - 1)) * w + x) * k;
          const auto dst = (static_cast<std::size_t>(y) * w + x) * k;
          for (int d = 0; d < k; ++d) unary[dst + d] += rows[src + d];
        }
      }
    }
  }

  StereoInstance out;
  out.file = make_grid_file({w, h}, k, std::move(unary), spec.lambda);
  out.truth = std::move(truth);
  return out;
}

namespace {

// Interval j covers labels [j k / target, (j + 1) k / target).
Label interval_of(Label a, Label from, Label target) {
  Label j = static_cast<Label>((static_cast<std::int64_t>(a) * target) / from);
  while (static_cast<std::int64_t>(j + 1) * from / target <= a) ++j;
  while (static_cast<std::int64_t>(j) * from / target > a) --j;
  return j;
}

}  // namespace

PottsInstance subsample_labels(const PottsInstance& inst, Label target) {
  const Label k = inst.label_count();
  if (target <= 0 || target > k) throw std::invalid_argument("bad target label count");
  std::vector<Cost> unary(static_cast<std::size_t>(inst.node_count()) * target);
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    for (Label j = 0; j < target; ++j) {
      const Label lo = static_cast<Label>(static_cast<std::int64_t>(j) * k / target);
      const Label hi = static_cast<Label>(static_cast<std::int64_t>(j + 1) * k / target);
      Cost best = inst.unary(i, lo);
      for (Label a = lo + 1; a < hi; ++a) best = std::min(best, inst.unary(i, a));
      unary[static_cast<std::size_t>(i) * target + j] = best;
    }
  }
  const auto edges = inst.edges();
  return PottsInstance(inst.node_count(), target, std::move(unary), {edges.begin(), edges.end()});
}

InstanceFile subsample_labels(const InstanceFile& file, Label target) {
  InstanceFile out = file;
  out.instance = subsample_labels(file.instance, target);
  return out;
}

std::vector<Label> subsample_truth(std::span<const Label> truth, Label from, Label target) {
  std::vector<Label> out(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) out[i] = interval_of(truth[i], from, target);
  return out;
}

double error_rate(std::span<const Label> x, std::span<const Label> truth) {
  if (x.size() != truth.size()) throw InvalidLabeling("labeling and ground truth differ in size");
  std::size_t labeled = 0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_labeled(x[i])) continue;
    ++labeled;
    if (std::abs(x[i] - truth[i]) > 1) ++wrong;
  }
  return labeled ? static_cast<double>(wrong) / static_cast<double>(labeled) : 0.0;
}

}  // namespace kpotts
