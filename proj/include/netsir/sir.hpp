#ifndef NETSIR_SIR_HPP
#define NETSIR_SIR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "netsir/contact_graph.hpp"
#include "netsir/rng.hpp"

namespace netsir {

struct EpidemicParams {
  double beta_avg = 0.08;
  double beta_sd = 0.05;
  double delta_avg = 0.2;
  double delta_sd = 0.05;
  std::uint32_t init_infected = 50;
  double dt = 0.02;
  std::uint32_t steps = 1000;

  void validate() const;
};

struct Rates {
  std::vector<double> beta;
  std::vector<double> delta;
};

/// Per-node probability triple (p_S, p_I, p_R).
struct SirState {
  std::vector<double> s;
  std::vector<double> i;
  std::vector<double> r;

  std::uint32_t size() const { return static_cast<std::uint32_t>(s.size()); }
};

struct VaccinationPlan {
  std::uint32_t start_step = 100;
  std::uint32_t lag = 6;
  std::uint32_t batch = 10;
  std::uint32_t total = 1000;
  double efficiency = 0.9;
  std::vector<std::uint32_t> target_groups;

  void validate() const;
};

struct VaccinationEvent {
  std::uint32_t step = 0;
  std::vector<std::uint32_t> nodes;
};

struct AdjacencyEpochRecord {
  std::uint32_t from_step = 0;
  std::uint32_t to_step = 0;  // exclusive
  std::vector<double> group_params;
  double mean_degree = 0.0;
};

/// Run output: per-node running extrema (always), group mean time series,
/// event log and the adjacency epochs that were active.
struct Trajectory {
  std::uint32_t n = 0;
  std::uint32_t steps = 0;
  std::vector<double> max_i;    // per-node max over time of p_I (incl. t=0)
  std::vector<double> min_sr;   // per-node min over time of p_S + p_R
  double conservation_error = 0.0;
  std::vector<VaccinationEvent> events;
  std::vector<AdjacencyEpochRecord> epochs;
  std::vector<std::uint32_t> labels;

  // Time series of masked means, index [step][group]; whole population is
  // appended as the last "group".
  std::vector<std::vector<double>> mean_s;
  std::vector<std::vector<double>> mean_i;
  std::vector<std::vector<double>> mean_r;
  std::vector<std::vector<double>> var_i;

  // Full per-node history, kept only on request.
  std::vector<SirState> states;
};

/// Per-node lognormal rates, moment matched to the requested mean and SD.
Rates sample_rates(std::uint32_t n, double beta_avg, double beta_sd,
                   double delta_avg, double delta_sd, Rng& rng);

/// init_infected uniformly chosen nodes start at (0,1,0), the rest at (1,0,0).
SirState init_state(std::uint32_t n, std::uint32_t init_infected, Rng& rng);

/// One forward-Euler step. The infection flux into node k is
///   f[k] = p_S[k] * (1/degrees[k]) * sum_j adj[k][j] * beta[j] * p_I[j],
/// zero where degrees[k] == 0. `degrees` is the normalization vector for the
/// current epoch (run_epidemic keeps it pinned to the unconfined graph).
/// Components are clamped to [0,1]; the sum is conserved exactly otherwise.
SirState euler_step(const SirState& state, const ContactGraph& graph,
                    const std::vector<std::uint32_t>& degrees,
                    const std::vector<double>& beta, const std::vector<double>& delta,
                    double dt);

/// Convex reset toward (1-e, 0, e) with efficiency e; conserves each node's
/// probability sum exactly. Nodes must not be vaccinated twice.
void vaccinate(SirState& state, const std::vector<std::uint32_t>& node_ids, double e);

/// Resolved control timeline for one run; see scenario.hpp for construction.
struct RunSchedule {
  struct Epoch {
    std::uint32_t from_step;
    std::uint32_t to_step;  // exclusive
    std::vector<double> group_params;
  };
  std::vector<Epoch> epochs;  // partition of [0, steps)
  std::optional<VaccinationPlan> vaccination;
};

struct RunOptions {
  bool keep_history = false;
  bool record_series = true;
};

/// Integrate the epidemic over `params.steps` steps, swapping the adjacency
/// at epoch boundaries and applying batched vaccination after the step at
/// event steps. The infection rates are rescaled by 1/lambda with
/// lambda = sum(adjacency)/n^2 of the unconfined graph, so that beta_avg is
/// the bulk-population rate, and the degree normalization stays pinned to
/// the unconfined degrees.
Trajectory run_epidemic(const WeightMatrix& weights, const std::vector<std::uint32_t>& labels,
                        const EpidemicParams& params, const RunSchedule& schedule, Rng& rng,
                        const RunOptions& options = {});

struct BulkTrajectory {
  std::vector<double> s, i, r;  // length steps + 1
};

/// Forward-Euler bulk SIR in population fractions: s' = -beta*i*s,
/// i' = beta*i*s - delta*i, r' = delta*i.
BulkTrajectory bulk_sir(double s0, double i0, double r0, double beta, double delta,
                        double dt, std::uint32_t steps);

/// Graph-to-bulk rate map: beta_bulk = (sum of adjacency entries / n^2) * beta_graph.
double rescale_beta(const ContactGraph& graph, double beta_graph);

}  // namespace netsir

#endif
