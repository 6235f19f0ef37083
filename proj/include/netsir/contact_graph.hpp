#ifndef NETSIR_CONTACT_GRAPH_HPP
#define NETSIR_CONTACT_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "netsir/rng.hpp"

namespace netsir {

enum class Topology { Homogeneous, BlockLocalised };

struct TopologyConfig {
  std::uint32_t n = 1000;
  std::uint32_t n_groups = 2;
  Topology topology = Topology::Homogeneous;
  double orderliness = 0.1;
  std::uint32_t n_connect = 50;
  double skew = 0.5;

  void validate() const;
};

/// Symmetric connection-probability matrix (pre-threshold adjacency).
/// Only the strict upper triangle is stored; the diagonal is zero.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::uint32_t n) : n_(n), w_(std::size_t(n) * (n - 1) / 2, 0.0) {}

  std::uint32_t size() const { return n_; }

  double at(std::uint32_t i, std::uint32_t j) const {
    if (i == j) return 0.0;
    return w_[pack(i, j)];
  }
  void set(std::uint32_t i, std::uint32_t j, double v) { w_[pack(i, j)] = v; }

  const std::vector<double>& packed() const { return w_; }
  std::vector<double>& packed() { return w_; }

  /// Offset of (i,j), i<j, in row-major upper-triangle order.
  std::size_t pack(std::uint32_t i, std::uint32_t j) const {
    if (i > j) std::swap(i, j);
    return std::size_t(i) * n_ - std::size_t(i) * (i + 1) / 2 + (j - i - 1);
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<double> w_;
};

/// Binary symmetric contact graph in CSR form with group labels.
struct ContactGraph {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> offsets;    // size n+1
  std::vector<std::uint32_t> neighbors;  // size 2*edges
  std::vector<std::uint32_t> labels;     // size n
  std::vector<std::uint32_t> degrees;    // size n, row sums

  std::size_t edge_count() const { return neighbors.size() / 2; }
  double mean_degree() const;
  bool has_edge(std::uint32_t i, std::uint32_t j) const;
};

struct GraphStats {
  double mean_degree = 0.0;
  std::uint32_t max_degree = 0;
  std::vector<std::uint64_t> degree_histogram;   // index = degree
  std::vector<double> per_group_mean_degree;     // index = group id
};

/// Randomised connection-probability matrix with tunable clustering
/// (skew mixes the diagonally sorted and the within-segment shuffled
/// variants) and heavy-tailed degrees after thresholding.
WeightMatrix generate_weights(const TopologyConfig& cfg, Rng& rng);

/// Node group labels: repeating pattern (Homogeneous) or contiguous
/// blocks (BlockLocalised), partially shuffled by sorting noisy keys
/// key[k] = k + orderliness * z_k, z ~ N(0,1). Group sizes stay equal.
std::vector<std::uint32_t> assign_labels(const TopologyConfig& cfg, Rng& rng);

/// Edge (i,j) kept iff w[i][j] >= (n - n_connect)/n.
ContactGraph binarize(const WeightMatrix& w, std::uint32_t n_connect,
                      std::vector<std::uint32_t> labels = {});

/// Confinement-masked adjacency. group_params[g] is the effective
/// connection parameter of group g (the confinement threshold if the
/// group confines, n_connect otherwise); inter-group pairs use the
/// arithmetic mean of the two groups' parameters.
ContactGraph confine(const WeightMatrix& w, const std::vector<std::uint32_t>& labels,
                     const std::vector<double>& group_params);

GraphStats graph_stats(const ContactGraph& g);

/// Edge-list, label and degree-histogram CSVs under `dir`.
void export_graph_csv(const ContactGraph& g, const std::string& dir);

}  // namespace netsir

#endif
