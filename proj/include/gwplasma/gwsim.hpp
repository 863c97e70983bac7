#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gwplasma/law.hpp"
#include "gwplasma/report.hpp"

namespace gwplasma {

// splitmix64 finalizer; the only randomness primitive of the simulator.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of the i-th tree of a Monte Carlo run.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// Galton-Watson tree truncated at depth D, nodes stored breadth first with the
// root at index 0. A node's child count comes from a hash of (seed, path from
// the root), so a deeper sample with the same seed extends a shallower one.
// Nodes at depth D are the frontier: their child_count is drawn but their
// children are not materialized.
class SampledTree {
 public:
  struct Node {
    std::uint32_t child_count;
    std::uint32_t first_child;  // kNoChildren on the frontier
    std::uint32_t depth;
    std::uint64_t key;
  };
  static constexpr std::uint32_t kNoChildren = 0xffffffffU;

  using Path = std::vector<std::uint32_t>;
  // Child count of the node reached by `path` (indices from the root).
  using ShapeFn = std::function<std::uint32_t(const Path&)>;

  // Deterministic tree from a shape function, e.g. a hand-drawn example.
  static SampledTree from_shape(const ShapeFn& shape, std::uint32_t depth);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::uint32_t i) const { return nodes_.at(i); }
  std::uint32_t depth() const noexcept { return depth_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::optional<BranchingLaw>& law() const noexcept { return law_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool is_frontier(std::uint32_t i) const { return node(i).first_child == kNoChildren; }
  std::size_t frontier_size() const;

  // Index of the node at the end of `path`; throws InvalidPath.
  std::uint32_t locate(const Path& path) const;
  // mu(T(v)): product of 1/Q over the strict ancestors of the node at `path`.
  double subtree_measure(const Path& path) const;

 private:
  friend SampledTree sample_tree(const BranchingLaw&, std::uint32_t, std::uint64_t);
  friend std::optional<SampledTree> sample_tree_within(const BranchingLaw&, std::uint32_t, std::uint64_t,
                                                       std::size_t);
  std::vector<Node> nodes_;
  std::uint32_t depth_ = 0;
  std::uint64_t seed_ = 0;
  std::optional<BranchingLaw> law_;
};

// D >= 1.
SampledTree sample_tree(const BranchingLaw& law, std::uint32_t depth, std::uint64_t seed);
// As sample_tree, or nullopt when the tree would exceed max_nodes nodes.
std::optional<SampledTree> sample_tree_within(const BranchingLaw& law, std::uint32_t depth, std::uint64_t seed,
                                              std::size_t max_nodes);

struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const noexcept { return 0.5 * (lo + hi); }
  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

// Enclosures of Z_T(n, beta), n = 0..N, for every infinite tree whose first D
// levels match `tree`. Frontier subtrees contribute [0, 1/n!] for n >= 2
// (exactly 1/n! when beta = 0), and every node widens outward by a relative
// rounding allowance. Throws NegativeBetaUnsupported for beta < 0.
std::vector<Enclosure> tree_partition_all(const SampledTree& tree, std::uint32_t n, double beta);
Enclosure tree_partition(const SampledTree& tree, std::uint32_t n, double beta);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  double enclosure_width_max = 0.0;
  std::uint32_t depth = 0;  // largest truncation depth used
  std::uint64_t seed = 0;
};

// Average of enclosure midpoints over n_samples trees with seeds
// sample_seed(seed, i). n_samples >= 2, beta >= 0.
McEstimate mc_mean_z(const BranchingLaw& law, std::uint32_t n, double beta, std::uint64_t n_samples,
                     std::uint32_t depth, std::uint64_t seed, unsigned threads = 1);

struct AdaptiveDepth {
  std::uint32_t initial_depth = 4;
  double tolerance = 1e-6;
  std::size_t node_budget = 10'000'000;
};

// Per tree, the depth doubles from initial_depth until the enclosure width is
// at most `tolerance` or the next tree would exceed the node budget.
McEstimate mc_mean_z_adaptive(const BranchingLaw& law, std::uint32_t n, double beta, std::uint64_t n_samples,
                              std::uint64_t seed, const AdaptiveDepth& adaptive = {}, unsigned threads = 1);

// delta between the frontier points reached by two full-length paths:
// mu(T(v*)) for their least common ancestor v*. Throws InvalidPath.
double tree_distance(const SampledTree& tree, const SampledTree::Path& a, const SampledTree::Path& b);
BigRational tree_distance_exact(const SampledTree& tree, const SampledTree::Path& a, const SampledTree::Path& b);

// Uniformly random full-length path (each step picks a child uniformly).
SampledTree::Path random_leaf_path(const SampledTree& tree, std::uint64_t seed, std::uint64_t index);
// All full-length paths; meant for small trees.
std::vector<SampledTree::Path> all_leaf_paths(const SampledTree& tree);

// Checks the strong triangle inequality on n_triples random triples, plus
// symmetry and delta(x, x) <= delta(x, y) on their pairs.
Report verify_ultrametric(const SampledTree& tree, std::uint64_t n_triples, std::uint64_t seed);

// The hand-drawn tree: Q(v0) = 3, Q(a1) = Q(a2) = 2 along child 0, child 2
// of v0 has 3 children, every other node 2; depth 4.
SampledTree figure_tree();

}  // namespace gwplasma
