#include "netsir/sir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace netsir {

void EpidemicParams::validate() const {
  if (beta_avg <= 0.0 || beta_sd <= 0.0 || delta_avg <= 0.0 || delta_sd <= 0.0)
    throw std::invalid_argument("epidemic: rate moments must be positive");
  if (dt <= 0.0) throw std::invalid_argument("epidemic: dt must be positive");
  if (steps == 0) throw std::invalid_argument("epidemic: steps must be positive");
}

void VaccinationPlan::validate() const {
  if (batch < 1) throw std::invalid_argument("vaccination: batch must be at least 1");
  if (lag < 1) throw std::invalid_argument("vaccination: lag must be at least 1");
  if (efficiency < 0.0 || efficiency > 1.0)
    throw std::invalid_argument("vaccination: efficiency must lie in [0,1]");
}

Rates sample_rates(std::uint32_t n, double beta_avg, double beta_sd,
                   double delta_avg, double delta_sd, Rng& rng) {
  if (beta_avg <= 0.0 || beta_sd <= 0.0 || delta_avg <= 0.0 || delta_sd <= 0.0)
    throw std::invalid_argument("sample_rates: moments must be positive");
  Rates out;
  out.beta.resize(n);
  out.delta.resize(n);
  for (auto& b : out.beta) b = rng.lognormal_mean_sd(beta_avg, beta_sd);
  for (auto& d : out.delta) d = rng.lognormal_mean_sd(delta_avg, delta_sd);
  return out;
}

SirState init_state(std::uint32_t n, std::uint32_t init_infected, Rng& rng) {
  if (init_infected > n)
    throw std::invalid_argument("init_state: init_infected exceeds n");
  SirState st;
  st.s.assign(n, 1.0);
  st.i.assign(n, 0.0);
  st.r.assign(n, 0.0);
  for (auto k : rng.sample_indices(n, init_infected)) {
    st.s[k] = 0.0;
    st.i[k] = 1.0;
  }
  return st;
}

namespace {

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

void infection_flux(const SirState& state, const ContactGraph& graph,
                    const std::vector<std::uint32_t>& degrees,
                    const std::vector<double>& beta, std::vector<double>& flux) {
  const std::uint32_t n = state.size();
  flux.assign(n, 0.0);
  for (std::uint32_t k = 0; k < n; ++k) {
    if (degrees[k] == 0 || state.s[k] == 0.0) continue;
    double acc = 0.0;
    for (std::uint32_t e = graph.offsets[k]; e < graph.offsets[k + 1]; ++e) {
      const std::uint32_t j = graph.neighbors[e];
      acc += beta[j] * state.i[j];
    }
    flux[k] = state.s[k] * acc / degrees[k];
  }
}

}  // namespace

SirState euler_step(const SirState& state, const ContactGraph& graph,
                    const std::vector<std::uint32_t>& degrees,
                    const std::vector<double>& beta, const std::vector<double>& delta,
                    double dt) {
  const std::uint32_t n = state.size();
  if (graph.n != n || degrees.size() != n || beta.size() != n || delta.size() != n)
    throw std::invalid_argument("euler_step: dimension mismatch");

  std::vector<double> flux;
  infection_flux(state, graph, degrees, beta, flux);

  SirState next;
  next.s.resize(n);
  next.i.resize(n);
  next.r.resize(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    next.s[k] = clamp01(state.s[k] - dt * flux[k]);
    next.i[k] = clamp01((1.0 - dt * delta[k]) * state.i[k] + dt * flux[k]);
    next.r[k] = clamp01(state.r[k] + dt * delta[k] * state.i[k]);
  }
  return next;
}

void vaccinate(SirState& state, const std::vector<std::uint32_t>& node_ids, double e) {
  if (e < 0.0 || e > 1.0) throw std::invalid_argument("vaccinate: e must lie in [0,1]");
  for (auto k : node_ids) {
    if (k >= state.size()) throw std::invalid_argument("vaccinate: node id out of range");
    state.s[k] = e * (1.0 - e) + (1.0 - e) * state.s[k];
    state.i[k] = (1.0 - e) * state.i[k];
    state.r[k] = e * e + (1.0 - e) * state.r[k];
  }
}

namespace {

struct SeriesAccumulator {
  std::uint32_t n_groups;
  const std::vector<std::uint32_t>* labels;
  std::vector<std::uint32_t> group_sizes;

  void init(const std::vector<std::uint32_t>& lab) {
    labels = &lab;
    n_groups = lab.empty() ? 1 : *std::max_element(lab.begin(), lab.end()) + 1;
    group_sizes.assign(n_groups, 0);
    for (auto g : lab) ++group_sizes[g];
  }

  void append(const SirState& st, Trajectory& traj) const {
    const std::uint32_t cols = n_groups + 1;  // per group + whole population
    std::vector<double> ms(cols, 0.0), mi(cols, 0.0), mr(cols, 0.0), vi(cols, 0.0);
    const std::uint32_t n = st.size();
    for (std::uint32_t k = 0; k < n; ++k) {
      const auto g = (*labels)[k];
      ms[g] += st.s[k];
      mi[g] += st.i[k];
      mr[g] += st.r[k];
    }
    for (std::uint32_t g = 0; g < n_groups; ++g) {
      ms[n_groups] += ms[g];
      mi[n_groups] += mi[g];
      mr[n_groups] += mr[g];
      const double sz = group_sizes[g];
      ms[g] /= sz;
      mi[g] /= sz;
      mr[g] /= sz;
    }
    ms[n_groups] /= n;
    mi[n_groups] /= n;
    mr[n_groups] /= n;
    for (std::uint32_t k = 0; k < n; ++k) {
      const auto g = (*labels)[k];
      const double d = st.i[k] - mi[g];
      vi[g] += d * d;
      const double dw = st.i[k] - mi[n_groups];
      vi[n_groups] += dw * dw;
    }
    for (std::uint32_t g = 0; g < n_groups; ++g) vi[g] /= group_sizes[g];
    vi[n_groups] /= n;
    traj.mean_s.push_back(std::move(ms));
    traj.mean_i.push_back(std::move(mi));
    traj.mean_r.push_back(std::move(mr));
    traj.var_i.push_back(std::move(vi));
  }
};

}  // namespace

Trajectory run_epidemic(const WeightMatrix& weights, const std::vector<std::uint32_t>& labels,
                        const EpidemicParams& params, const RunSchedule& schedule, Rng& rng,
                        const RunOptions& options) {
  params.validate();
  const std::uint32_t n = weights.size();
  if (labels.size() != n) throw std::invalid_argument("run_epidemic: label length mismatch");
  if (schedule.epochs.empty())
    throw std::invalid_argument("run_epidemic: schedule has no adjacency epochs");

  // Materialize the distinct adjacencies referenced by the schedule.
  std::vector<ContactGraph> graphs;
  std::vector<std::size_t> epoch_graph(schedule.epochs.size());
  for (std::size_t e = 0; e < schedule.epochs.size(); ++e) {
    const auto& params_e = schedule.epochs[e].group_params;
    std::size_t found = graphs.size();
    for (std::size_t prev = 0; prev < e; ++prev)
      if (schedule.epochs[prev].group_params == params_e) {
        found = epoch_graph[prev];
        break;
      }
    if (found == graphs.size()) graphs.push_back(confine(weights, labels, params_e));
    epoch_graph[e] = found;
  }

  // The first epoch is the unconfined graph: its degrees pin the contact
  // normalization for the whole run, and its edge density sets the
  // bulk-to-graph rate conversion (beta_avg is the bulk rate).
  const ContactGraph& free_graph = graphs[epoch_graph[0]];
  const std::vector<std::uint32_t>& norm_degrees = free_graph.degrees;
  const double lambda =
      static_cast<double>(2 * free_graph.edge_count()) / (static_cast<double>(n) * n);
  if (lambda <= 0.0)
    throw std::invalid_argument("run_epidemic: unconfined graph has no edges");

  Rates rates = sample_rates(n, params.beta_avg, params.beta_sd, params.delta_avg,
                             params.delta_sd, rng);
  for (auto& b : rates.beta) b /= lambda;

  SirState state = init_state(n, params.init_infected, rng);

  // Vaccination bookkeeping: nodes are vaccinated at most once, drawn
  // uniformly from the unvaccinated pool of the targeted groups.
  std::vector<std::uint32_t> pool;
  std::uint32_t supply = 0;
  const VaccinationPlan* plan = schedule.vaccination ? &*schedule.vaccination : nullptr;
  if (plan) {
    plan->validate();
    supply = plan->total;
    for (std::uint32_t k = 0; k < n; ++k) {
      const bool targeted =
          plan->target_groups.empty() ||
          std::find(plan->target_groups.begin(), plan->target_groups.end(), labels[k]) !=
              plan->target_groups.end();
      if (targeted) pool.push_back(k);
    }
  }

  Trajectory traj;
  traj.n = n;
  traj.steps = params.steps;
  traj.labels = labels;
  traj.max_i = state.i;
  traj.min_sr.resize(n);
  for (std::uint32_t k = 0; k < n; ++k) traj.min_sr[k] = state.s[k] + state.r[k];
  for (std::size_t e = 0; e < schedule.epochs.size(); ++e) {
    const auto& ep = schedule.epochs[e];
    traj.epochs.push_back({ep.from_step, ep.to_step, ep.group_params,
                           graphs[epoch_graph[e]].mean_degree()});
  }

  SeriesAccumulator series;
  if (options.record_series) {
    series.init(labels);
    series.append(state, traj);
  }
  if (options.keep_history) traj.states.push_back(state);

  std::size_t epoch_idx = 0;
  double conservation = 0.0;
  for (std::uint32_t t = 0; t < params.steps; ++t) {
    while (epoch_idx + 1 < schedule.epochs.size() && t >= schedule.epochs[epoch_idx].to_step)
      ++epoch_idx;
    const ContactGraph& graph = graphs[epoch_graph[epoch_idx]];

    state = euler_step(state, graph, norm_degrees, rates.beta, rates.delta, params.dt);

    if (plan && supply > 0 && !pool.empty() && t >= plan->start_step &&
        (t - plan->start_step) % plan->lag == 0) {
      const std::uint32_t want = std::min<std::uint32_t>(
          plan->batch, std::min<std::uint32_t>(supply, static_cast<std::uint32_t>(pool.size())));
      VaccinationEvent ev;
      ev.step = t;
      ev.nodes.reserve(want);
      for (std::uint32_t picked = 0; picked < want; ++picked) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_below(pool.size()));
        ev.nodes.push_back(pool[j]);
        pool[j] = pool.back();
        pool.pop_back();
      }
      vaccinate(state, ev.nodes, plan->efficiency);
      supply -= want;
      traj.events.push_back(std::move(ev));
    }

    for (std::uint32_t k = 0; k < n; ++k) {
      traj.max_i[k] = std::max(traj.max_i[k], state.i[k]);
      traj.min_sr[k] = std::min(traj.min_sr[k], state.s[k] + state.r[k]);
      conservation =
          std::max(conservation, std::abs(state.s[k] + state.i[k] + state.r[k] - 1.0));
    }
    if (options.record_series) series.append(state, traj);
    if (options.keep_history) traj.states.push_back(state);
  }
  traj.conservation_error = conservation;
  return traj;
}

BulkTrajectory bulk_sir(double s0, double i0, double r0, double beta, double delta,
                        double dt, std::uint32_t steps) {
  if (std::abs(s0 + i0 + r0 - 1.0) > 1e-9)
    throw std::invalid_argument("bulk_sir: s0+i0+r0 must equal 1");
  BulkTrajectory out;
  out.s.reserve(steps + 1);
  out.i.reserve(steps + 1);
  out.r.reserve(steps + 1);
  double s = s0, i = i0, r = r0;
  out.s.push_back(s);
  out.i.push_back(i);
  out.r.push_back(r);
  for (std::uint32_t t = 0; t < steps; ++t) {
    const double flow = beta * i * s;
    const double ns = s - dt * flow;
    const double ni = i + dt * (flow - delta * i);
    const double nr = r + dt * delta * i;
    s = ns;
    i = ni;
    r = nr;
    out.s.push_back(s);
    out.i.push_back(i);
    out.r.push_back(r);
  }
  return out;
}

double rescale_beta(const ContactGraph& graph, double beta_graph) {
  if (graph.n == 0) return 0.0;
  const double lambda = static_cast<double>(2 * graph.edge_count()) /
                        (static_cast<double>(graph.n) * graph.n);
  return lambda * beta_graph;
}

}  // namespace netsir
