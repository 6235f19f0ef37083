#include "netsir/contact_graph.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace netsir {

void TopologyConfig::validate() const {
  if (n < 2) throw std::invalid_argument("topology: n must be at least 2");
  if (n_groups < 1) throw std::invalid_argument("topology: n_groups must be at least 1");
  if (n % n_groups != 0)
    throw std::invalid_argument("topology: n must be divisible by n_groups");
  if (skew < 0.0 || skew > 1.0)
    throw std::invalid_argument("topology: skew must lie in [0,1]");
  if (orderliness < 0.0)
    throw std::invalid_argument("topology: orderliness must be non-negative");
  if (n_connect > n)
    throw std::invalid_argument("topology: n_connect must not exceed n");
}

double ContactGraph::mean_degree() const {
  if (n == 0) return 0.0;
  const auto total = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  return static_cast<double>(total) / n;
}

bool ContactGraph::has_edge(std::uint32_t i, std::uint32_t j) const {
  const auto b = neighbors.begin() + offsets[i];
  const auto e = neighbors.begin() + offsets[i + 1];
  return std::binary_search(b, e, j);
}

namespace {

constexpr double kBetaA = 1.1;
constexpr double kBetaB = 0.9;

}  // namespace

WeightMatrix generate_weights(const TopologyConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::uint32_t n = cfg.n;

  // One Beta(1.1, 0.9) draw matrix feeds both the row- and column-sorted
  // variants.
  std::vector<double> draws(std::size_t(n) * n);
  for (auto& v : draws) v = rng.beta(kBetaA, kBetaB);

  // Row-sorted: row i descending, so its largest values sit next to the
  // diagonal and decay outwards. Column-sorted: the same per column.
  std::vector<double> rows_desc(draws);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto* b = rows_desc.data() + std::size_t(i) * n;
    std::sort(b, b + n, std::greater<>());
  }
  std::vector<double> cols_desc(std::size_t(n) * n);
  for (std::uint32_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::uint32_t i = 0; i < n; ++i) col[i] = draws[std::size_t(i) * n + j];
    std::sort(col.begin(), col.end(), std::greater<>());
    for (std::uint32_t i = 0; i < n; ++i) cols_desc[std::size_t(i) * n + j] = col[i];
  }
  draws.clear();
  draws.shrink_to_fit();

  // Entry (i, i+k) of the sorted variants: k-th largest of row i (H) or of
  // column i (V). The Bernoulli mask picks H or V per upper-triangle entry
  // and is reused for the shuffled variants below.
  WeightMatrix w(n);
  const std::size_t m = w.packed().size();
  std::vector<std::uint8_t> pick_h(m);
  for (auto& p : pick_h) p = rng.bernoulli(0.5) ? 1 : 0;

  std::vector<double> sorted_mix(m);
  {
    std::size_t idx = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j, ++idx) {
        const std::uint32_t k = j - i - 1;
        const double h = rows_desc[std::size_t(i) * n + k];
        const double v = cols_desc[std::size_t(k) * n + i];
        sorted_mix[idx] = pick_h[idx] ? h : v;
      }
    }
  }

  // Shuffled variants permute values within each row (H) / column (V)
  // segment; the triangular layout itself is preserved.
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    rng.shuffle(rows_desc.data() + std::size_t(i) * n, n - 1 - i);
  for (std::uint32_t j = 0; j + 1 < n; ++j) {
    std::vector<double> seg(n - 1 - j);
    for (std::uint32_t k = 0; k < seg.size(); ++k)
      seg[k] = cols_desc[std::size_t(k) * n + j];
    rng.shuffle(seg.data(), seg.size());
    for (std::uint32_t k = 0; k < seg.size(); ++k)
      cols_desc[std::size_t(k) * n + j] = seg[k];
  }

  {
    std::size_t idx = 0;
    const double skew = cfg.skew;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j, ++idx) {
        const std::uint32_t k = j - i - 1;
        const double h = rows_desc[std::size_t(i) * n + k];
        const double v = cols_desc[std::size_t(k) * n + i];
        const double shuffled = pick_h[idx] ? h : v;
        w.packed()[idx] = (1.0 - skew) * sorted_mix[idx] + skew * shuffled;
      }
    }
  }
  return w;
}

std::vector<std::uint32_t> assign_labels(const TopologyConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::uint32_t n = cfg.n;
  const std::uint32_t g = cfg.n_groups;

  std::vector<std::uint32_t> base(n);
  for (std::uint32_t k = 0; k < n; ++k)
    base[k] = (cfg.topology == Topology::Homogeneous)
                  ? k % g
                  : static_cast<std::uint32_t>(std::uint64_t(k) * g / n);

  std::vector<double> key(n);
  for (std::uint32_t k = 0; k < n; ++k)
    key[k] = static_cast<double>(k) + cfg.orderliness * rng.normal();

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return key[a] < key[b]; });

  // Nodes in key order receive the original label sequence.
  std::vector<std::uint32_t> labels(n);
  for (std::uint32_t r = 0; r < n; ++r) labels[order[r]] = base[r];
  return labels;
}

namespace {

ContactGraph build_graph(const WeightMatrix& w, std::vector<std::uint32_t> labels,
                         const std::function<double(std::uint32_t, std::uint32_t)>& threshold) {
  const std::uint32_t n = w.size();
  if (labels.empty()) labels.assign(n, 0);
  if (labels.size() != n)
    throw std::invalid_argument("graph: label vector length does not match n");

  ContactGraph g;
  g.n = n;
  g.labels = std::move(labels);
  g.degrees.assign(n, 0);

  std::vector<std::vector<std::uint32_t>> adj(n);
  std::size_t idx = 0;
  const auto& packed = w.packed();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j, ++idx) {
      if (packed[idx] >= threshold(i, j)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  g.offsets.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    g.degrees[i] = static_cast<std::uint32_t>(adj[i].size());
    g.offsets[i + 1] = g.offsets[i] + g.degrees[i];
  }
  g.neighbors.reserve(g.offsets[n]);
  for (std::uint32_t i = 0; i < n; ++i)
    g.neighbors.insert(g.neighbors.end(), adj[i].begin(), adj[i].end());
  return g;
}

}  // namespace

ContactGraph binarize(const WeightMatrix& w, std::uint32_t n_connect,
                      std::vector<std::uint32_t> labels) {
  const std::uint32_t n = w.size();
  if (n_connect > n)
    throw std::invalid_argument("binarize: n_connect must lie in [0, n]");
  const double thr = static_cast<double>(n - n_connect) / n;
  return build_graph(w, std::move(labels), [thr](std::uint32_t, std::uint32_t) { return thr; });
}

ContactGraph confine(const WeightMatrix& w, const std::vector<std::uint32_t>& labels,
                     const std::vector<double>& group_params) {
  const std::uint32_t n = w.size();
  if (labels.size() != n)
    throw std::invalid_argument("confine: label vector length does not match n");
  for (double p : group_params)
    if (p < 0.0 || p > n)
      throw std::invalid_argument("confine: group parameter out of [0, n]");
  for (auto l : labels)
    if (l >= group_params.size())
      throw std::invalid_argument("confine: label refers to a group without a parameter");

  return build_graph(w, labels, [&, n](std::uint32_t i, std::uint32_t j) {
    // Intra-group pairs use the group's parameter; inter-group pairs the
    // negotiated arithmetic mean.
    const double pi = group_params[labels[i]];
    const double pj = group_params[labels[j]];
    const double p = (labels[i] == labels[j]) ? pi : 0.5 * (pi + pj);
    return (n - p) / n;
  });
}

GraphStats graph_stats(const ContactGraph& g) {
  GraphStats s;
  s.mean_degree = g.mean_degree();
  const std::uint32_t n_groups =
      g.labels.empty() ? 1 : *std::max_element(g.labels.begin(), g.labels.end()) + 1;
  std::vector<std::uint64_t> group_total(n_groups, 0), group_count(n_groups, 0);
  for (std::uint32_t i = 0; i < g.n; ++i) {
    const auto d = g.degrees[i];
    s.max_degree = std::max(s.max_degree, d);
    if (d >= s.degree_histogram.size()) s.degree_histogram.resize(d + 1, 0);
    ++s.degree_histogram[d];
    group_total[g.labels[i]] += d;
    ++group_count[g.labels[i]];
  }
  s.per_group_mean_degree.resize(n_groups, 0.0);
  for (std::uint32_t gi = 0; gi < n_groups; ++gi)
    if (group_count[gi] > 0)
      s.per_group_mean_degree[gi] =
          static_cast<double>(group_total[gi]) / static_cast<double>(group_count[gi]);
  return s;
}

void export_graph_csv(const ContactGraph& g, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream f(fs::path(dir) / "edges.csv");
    f << "src,dst\n";
    for (std::uint32_t i = 0; i < g.n; ++i)
      for (std::uint32_t k = g.offsets[i]; k < g.offsets[i + 1]; ++k)
        if (i < g.neighbors[k]) f << i << ',' << g.neighbors[k] << '\n';
  }
  {
    std::ofstream f(fs::path(dir) / "labels.csv");
    f << "node,group\n";
    for (std::uint32_t i = 0; i < g.n; ++i) f << i << ',' << g.labels[i] << '\n';
  }
  {
    const auto s = graph_stats(g);
    std::ofstream f(fs::path(dir) / "degree_histogram.csv");
    f << "degree,count\n";
    for (std::size_t d = 0; d < s.degree_histogram.size(); ++d)
      if (s.degree_histogram[d] > 0) f << d << ',' << s.degree_histogram[d] << '\n';
  }
}

}  // namespace netsir
