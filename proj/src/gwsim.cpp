#include "gwplasma/gwsim.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <thread>

#include "gwplasma/error.hpp"

namespace gwplasma {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kRootSalt = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kDrawSalt = 0x8CB92BA72F3D8DD7ULL;
constexpr std::uint64_t kPathSalt = 0xA0761D6478BD642FULL;

std::uint64_t child_key(std::uint64_t parent, std::uint32_t index) noexcept {
  return mix64(parent + (static_cast<std::uint64_t>(index) + 1) * kGolden);
}

// Inverse CDF on 64-bit draws: value q_i is chosen when the draw is below
// floor(2^64 * (p_1 + ... + p_i)), computed exactly.
class ChildCountSampler {
 public:
  explicit ChildCountSampler(const BranchingLaw& law) {
    BigRational cumulative = 0;
    const BigInteger two64 = BigInteger(1) << 64;
    for (const auto& e : law.entries()) {
      cumulative += e.p;
      const BigInteger scaled = BigInteger(cumulative * two64);
      std::uint64_t bound = std::numeric_limits<std::uint64_t>::max();
      if (scaled < two64) bound = std::stoull(scaled.get_str());
      values_.push_back(e.q);
      bounds_.push_back(bound);
    }
    bounds_.back() = std::numeric_limits<std::uint64_t>::max();
  }

  std::uint32_t operator()(std::uint64_t key) const noexcept {
    const std::uint64_t draw = mix64(key ^ kDrawSalt);
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
      if (draw < bounds_[i]) return values_[i];
    }
    return values_.back();
  }

 private:
  std::vector<std::uint32_t> values_;
  std::vector<std::uint64_t> bounds_;
};

void check_depth(std::uint32_t depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "truncation depth must be >= 1");
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed + (index + 1) * kGolden);
}

std::optional<SampledTree> sample_tree_within(const BranchingLaw& law, std::uint32_t depth, std::uint64_t seed,
                                              std::size_t max_nodes) {
  check_depth(depth);
  const ChildCountSampler draw(law);
  SampledTree tree;
  tree.depth_ = depth;
  tree.seed_ = seed;
  tree.law_ = law;
  const std::uint64_t root = mix64(seed ^ kRootSalt);
  tree.nodes_.push_back({draw(root), SampledTree::kNoChildren, 0, root});
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    if (tree.nodes_[i].depth == depth) continue;
    const std::uint32_t count = tree.nodes_[i].child_count;
    if (tree.nodes_.size() + count > max_nodes) return std::nullopt;
    tree.nodes_[i].first_child = static_cast<std::uint32_t>(tree.nodes_.size());
    const std::uint64_t key = tree.nodes_[i].key;
    const std::uint32_t d = tree.nodes_[i].depth + 1;
    for (std::uint32_t c = 0; c < count; ++c) {
      const std::uint64_t k = child_key(key, c);
      tree.nodes_.push_back({draw(k), SampledTree::kNoChildren, d, k});
    }
  }
  return tree;
}

SampledTree sample_tree(const BranchingLaw& law, std::uint32_t depth, std::uint64_t seed) {
  auto tree = sample_tree_within(law, depth, seed, std::numeric_limits<std::uint32_t>::max() - 1);
  if (!tree) throw Error(ErrorKind::InvalidArgument, "sampled tree exceeds 2^32 nodes; lower the depth");
  return std::move(*tree);
}

SampledTree SampledTree::from_shape(const ShapeFn& shape, std::uint32_t depth) {
  check_depth(depth);
  SampledTree tree;
  tree.depth_ = depth;
  std::vector<Path> paths{Path{}};
  auto count_at = [&](const Path& p) {
    const std::uint32_t q = shape(p);
    if (q < 1) throw Error(ErrorKind::ZeroChildrenForbidden, "every node needs at least one child");
    return q;
  };
  tree.nodes_.push_back({count_at(paths[0]), kNoChildren, 0, 0});
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    if (tree.nodes_[i].depth == depth) continue;
    tree.nodes_[i].first_child = static_cast<std::uint32_t>(tree.nodes_.size());
    for (std::uint32_t c = 0; c < tree.nodes_[i].child_count; ++c) {
      Path p = paths[i];
      p.push_back(c);
      tree.nodes_.push_back({count_at(p), kNoChildren, tree.nodes_[i].depth + 1, 0});
      paths.push_back(std::move(p));
    }
  }
  return tree;
}

std::size_t SampledTree::frontier_size() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.first_child == kNoChildren; }));
}

std::uint32_t SampledTree::locate(const Path& path) const {
  if (path.size() > depth_) throw Error(ErrorKind::InvalidPath, "path is longer than the truncation depth");
  std::uint32_t at = 0;
  for (std::size_t level = 0; level < path.size(); ++level) {
    const Node& n = nodes_[at];
    if (path[level] >= n.child_count) {
      throw Error(ErrorKind::InvalidPath, "child index " + std::to_string(path[level]) + " at level " +
                                              std::to_string(level) + " but the node has " +
                                              std::to_string(n.child_count) + " children");
    }
    at = n.first_child + path[level];
  }
  return at;
}

double SampledTree::subtree_measure(const Path& path) const {
  locate(path);
  double m = 1.0;
  std::uint32_t at = 0;
  for (auto c : path) {
    m /= nodes_[at].child_count;
    at = nodes_[at].first_child + c;
  }
  return m;
}

std::vector<Enclosure> tree_partition_all(const SampledTree& tree, std::uint32_t n, double beta) {
  if (beta < 0) {
    throw Error(ErrorKind::NegativeBetaUnsupported, "enclosures need beta >= 0 (delta^beta <= 1 fails otherwise)");
  }
  if (!std::isfinite(beta)) throw Error(ErrorKind::InvalidArgument, "beta must be finite");
  const std::size_t width = n + 1;
  std::vector<double> frontier_hi(width, 1.0);
  for (std::uint32_t k = 2; k <= n; ++k) frontier_hi[k] = frontier_hi[k - 1] / k;
  // Every stored product below is rounded once more than the exact value;
  // rounding is absorbed by a relative outward widening per node.
  const auto& nodes = tree.nodes();
  std::vector<double> lo(nodes.size() * width);
  std::vector<double> hi(nodes.size() * width);
  std::vector<double> weight;
  std::vector<double> acc_lo(width), acc_hi(width), next_lo(width), next_hi(width);
  for (std::size_t idx = nodes.size(); idx-- > 0;) {
    const auto& node = nodes[idx];
    double* node_lo = &lo[idx * width];
    double* node_hi = &hi[idx * width];
    if (node.first_child == SampledTree::kNoChildren) {
      for (std::uint32_t k = 0; k <= n; ++k) {
        node_hi[k] = frontier_hi[k];
        node_lo[k] = (k <= 1 || beta == 0.0) ? frontier_hi[k] : 0.0;
      }
      continue;
    }
    const std::uint32_t q = node.child_count;
    const double lq = std::log(static_cast<double>(q));
    weight.assign(width, 0.0);
    for (std::uint32_t k = 0; k <= n; ++k) {
      weight[k] = std::exp(-(static_cast<double>(k) + beta * static_cast<double>(binom2(k))) * lq);
    }
    std::fill(acc_lo.begin(), acc_lo.end(), 0.0);
    std::fill(acc_hi.begin(), acc_hi.end(), 0.0);
    acc_lo[0] = acc_hi[0] = 1.0;
    for (std::uint32_t c = 0; c < q; ++c) {
      const double* ch_lo = &lo[(node.first_child + c) * width];
      const double* ch_hi = &hi[(node.first_child + c) * width];
      std::fill(next_lo.begin(), next_lo.end(), 0.0);
      std::fill(next_hi.begin(), next_hi.end(), 0.0);
      for (std::uint32_t i = 0; i <= n; ++i) {
        if (acc_hi[i] == 0.0) continue;
        for (std::uint32_t j = 0; i + j <= n; ++j) {
          next_lo[i + j] += acc_lo[i] * weight[j] * ch_lo[j];
          next_hi[i + j] += acc_hi[i] * weight[j] * ch_hi[j];
        }
      }
      std::swap(acc_lo, next_lo);
      std::swap(acc_hi, next_hi);
    }
    const double kappa = (2.0 * q * (n + 1) + 8.0) * DBL_EPSILON;
    for (std::uint32_t k = 0; k <= n; ++k) {
      node_lo[k] = acc_lo[k] * (1.0 - kappa);
      node_hi[k] = acc_hi[k] * (1.0 + kappa);
    }
    node_lo[0] = node_hi[0] = 1.0;
    if (n >= 1) node_lo[1] = node_hi[1] = 1.0;
  }
  std::vector<Enclosure> out(width);
  for (std::uint32_t k = 0; k <= n; ++k) out[k] = {lo[k], hi[k]};
  return out;
}

Enclosure tree_partition(const SampledTree& tree, std::uint32_t n, double beta) {
  return tree_partition_all(tree, n, beta).back();
}

namespace {

struct SampleResult {
  double mid = 0.0;
  double width = 0.0;
  std::uint32_t depth = 0;
};

template <typename Fn>
std::vector<SampleResult> run_samples(std::uint64_t n_samples, unsigned threads, const Fn& one) {
  std::vector<SampleResult> results(n_samples);
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, n_samples)));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < n_samples; ++i) results[i] = one(i);
    return results;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t i = w; i < n_samples; i += workers) results[i] = one(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

// Welford over the results in sample order, so the outcome does not depend on
// the thread count.
McEstimate reduce_samples(const std::vector<SampleResult>& results, std::uint64_t seed) {
  McEstimate est;
  est.seed = seed;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t k = 0;
  for (const auto& r : results) {
    ++k;
    const double delta = r.mid - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (r.mid - mean);
    est.enclosure_width_max = std::max(est.enclosure_width_max, r.width);
    est.depth = std::max(est.depth, r.depth);
  }
  est.mean = mean;
  est.samples = k;
  const double variance = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
  est.std_error = std::sqrt(std::max(0.0, variance) / static_cast<double>(k));
  return est;
}

void check_mc_args(std::uint64_t n_samples, double beta) {
  if (n_samples < 2) throw Error(ErrorKind::InvalidArgument, "Monte Carlo needs at least 2 samples");
  if (beta < 0) throw Error(ErrorKind::NegativeBetaUnsupported, "Monte Carlo enclosures need beta >= 0");
}

}  // namespace

McEstimate mc_mean_z(const BranchingLaw& law, std::uint32_t n, double beta, std::uint64_t n_samples,
                     std::uint32_t depth, std::uint64_t seed, unsigned threads) {
  check_mc_args(n_samples, beta);
  check_depth(depth);
  auto results = run_samples(n_samples, threads, [&](std::uint64_t i) {
    const SampledTree tree = sample_tree(law, depth, sample_seed(seed, i));
    const Enclosure e = tree_partition(tree, n, beta);
    return SampleResult{e.mid(), e.width(), depth};
  });
  return reduce_samples(results, seed);
}

McEstimate mc_mean_z_adaptive(const BranchingLaw& law, std::uint32_t n, double beta, std::uint64_t n_samples,
                              std::uint64_t seed, const AdaptiveDepth& adaptive, unsigned threads) {
  check_mc_args(n_samples, beta);
  check_depth(adaptive.initial_depth);
  if (!(adaptive.tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "adaptive tolerance must be > 0");
  auto results = run_samples(n_samples, threads, [&](std::uint64_t i) {
    const std::uint64_t s = sample_seed(seed, i);
    std::uint32_t depth = adaptive.initial_depth;
    auto tree = sample_tree_within(law, depth, s, adaptive.node_budget);
    if (!tree) throw Error(ErrorKind::InvalidArgument, "initial depth already exceeds the node budget");
    Enclosure e = tree_partition(*tree, n, beta);
    while (e.width() > adaptive.tolerance) {
      auto deeper = sample_tree_within(law, depth * 2, s, adaptive.node_budget);
      if (!deeper) break;
      depth *= 2;
      tree = std::move(deeper);
      e = tree_partition(*tree, n, beta);
    }
    return SampleResult{e.mid(), e.width(), depth};
  });
  return reduce_samples(results, seed);
}

namespace {

// Length of the common prefix, after validating both paths as full length.
std::size_t common_prefix(const SampledTree& tree, const SampledTree::Path& a, const SampledTree::Path& b) {
  if (a.size() != tree.depth() || b.size() != tree.depth()) {
    throw Error(ErrorKind::InvalidPath, "paths must run from the root to the frontier (length " +
                                            std::to_string(tree.depth()) + ")");
  }
  tree.locate(a);
  tree.locate(b);
  std::size_t k = 0;
  while (k < a.size() && a[k] == b[k]) ++k;
  return k;
}

}  // namespace

double tree_distance(const SampledTree& tree, const SampledTree::Path& a, const SampledTree::Path& b) {
  const std::size_t k = common_prefix(tree, a, b);
  return tree.subtree_measure(SampledTree::Path(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k)));
}

BigRational tree_distance_exact(const SampledTree& tree, const SampledTree::Path& a, const SampledTree::Path& b) {
  const std::size_t k = common_prefix(tree, a, b);
  BigInteger den = 1;
  std::uint32_t at = 0;
  for (std::size_t level = 0; level < k; ++level) {
    den *= tree.node(at).child_count;
    at = tree.node(at).first_child + a[level];
  }
  return BigRational(BigInteger(1), den);
}

SampledTree::Path random_leaf_path(const SampledTree& tree, std::uint64_t seed, std::uint64_t index) {
  SampledTree::Path path;
  std::uint64_t state = mix64(seed ^ kPathSalt) + index * kGolden;
  std::uint32_t at = 0;
  while (!tree.is_frontier(at)) {
    state = mix64(state);
    const auto& node = tree.node(at);
    // Multiply-shift maps the draw to [0, child_count) with negligible bias.
    const auto c = static_cast<std::uint32_t>((static_cast<unsigned __int128>(state) * node.child_count) >> 64);
    path.push_back(c);
    at = node.first_child + c;
  }
  return path;
}

std::vector<SampledTree::Path> all_leaf_paths(const SampledTree& tree) {
  std::vector<SampledTree::Path> out;
  SampledTree::Path path;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t at) {
    if (tree.is_frontier(at)) {
      out.push_back(path);
      return;
    }
    for (std::uint32_t c = 0; c < tree.node(at).child_count; ++c) {
      path.push_back(c);
      walk(tree.node(at).first_child + c);
      path.pop_back();
    }
  };
  walk(0);
  return out;
}

Report verify_ultrametric(const SampledTree& tree, std::uint64_t n_triples, std::uint64_t seed) {
  Report report;
  report.name = "ultrametric";
  std::uint64_t triangle = 0, symmetry = 0, self = 0;
  for (std::uint64_t i = 0; i < n_triples; ++i) {
    const auto x = random_leaf_path(tree, seed, 3 * i);
    const auto y = random_leaf_path(tree, seed, 3 * i + 1);
    const auto z = random_leaf_path(tree, seed, 3 * i + 2);
    const double xy = tree_distance(tree, x, y);
    const double yz = tree_distance(tree, y, z);
    const double xz = tree_distance(tree, x, z);
    if (xz > std::max(xy, yz) || xy > std::max(xz, yz) || yz > std::max(xy, xz)) ++triangle;
    if (xy != tree_distance(tree, y, x) || yz != tree_distance(tree, z, y) || xz != tree_distance(tree, z, x)) {
      ++symmetry;
    }
    if (tree_distance(tree, x, x) > xy || tree_distance(tree, y, y) > yz || tree_distance(tree, z, z) > xz) ++self;
  }
  report.pass = triangle == 0 && symmetry == 0 && self == 0;
  report.details = {{"triples", n_triples},
                    {"triangle_violations", triangle},
                    {"symmetry_violations", symmetry},
                    {"self_distance_violations", self},
                    {"depth", tree.depth()},
                    {"nodes", tree.size()}};
  return report;
}

SampledTree figure_tree() {
  return SampledTree::from_shape(
      [](const SampledTree::Path& p) -> std::uint32_t {
        if (p.empty()) return 3;
        if (p.size() == 1 && p[0] == 2) return 3;
        return 2;
      },
      4);
}

}  // namespace gwplasma
