#include "netsir/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netsir {

GroupMask GroupMask::whole(std::uint32_t n) {
  GroupMask m;
  m.ids_.resize(n);
  for (std::uint32_t k = 0; k < n; ++k) m.ids_[k] = k;
  return m;
}

GroupMask GroupMask::group(const std::vector<std::uint32_t>& labels, std::uint32_t g) {
  GroupMask m;
  for (std::uint32_t k = 0; k < labels.size(); ++k)
    if (labels[k] == g) m.ids_.push_back(k);
  return m;
}

GroupMask GroupMask::from_ids(std::vector<std::uint32_t> ids) {
  GroupMask m;
  m.ids_ = std::move(ids);
  return m;
}

namespace {

void require_mask(const Trajectory& traj, const GroupMask& mask) {
  if (mask.empty()) throw std::invalid_argument("metrics: mask selects no nodes");
  for (auto k : mask.ids())
    if (k >= traj.n) throw std::invalid_argument("metrics: mask id out of range");
}

}  // namespace

double infection_load(const Trajectory& traj, const GroupMask& mask) {
  require_mask(traj, mask);
  double acc = 0.0;
  for (auto k : mask.ids()) acc += traj.max_i[k];
  return acc / static_cast<double>(mask.ids().size());
}

double activation_margin(const Trajectory& traj, const GroupMask& mask) {
  require_mask(traj, mask);
  double acc = 0.0;
  for (auto k : mask.ids()) acc += traj.min_sr[k];
  return acc / static_cast<double>(mask.ids().size());
}

PeakInfection peak_mean_infection(const Trajectory& traj, const GroupMask& mask) {
  require_mask(traj, mask);
  PeakInfection out;

  if (!traj.states.empty()) {
    for (std::uint32_t t = 0; t < traj.states.size(); ++t) {
      double acc = 0.0;
      for (auto k : mask.ids()) acc += traj.states[t].i[k];
      const double mean = acc / static_cast<double>(mask.ids().size());
      if (mean > out.value) {
        out.value = mean;
        out.step = t;
      }
    }
    return out;
  }

  // Without full history, the recorded group-mean series covers whole-group
  // and whole-population masks.
  if (traj.mean_i.empty())
    throw std::invalid_argument("peak_mean_infection: trajectory has no history or series");
  const std::uint32_t n_groups = static_cast<std::uint32_t>(traj.mean_i.front().size()) - 1;
  std::int64_t column = -1;
  if (mask.ids().size() == traj.n) {
    column = n_groups;  // whole population
  } else {
    for (std::uint32_t g = 0; g < n_groups; ++g) {
      const auto gm = GroupMask::group(traj.labels, g);
      if (gm.ids() == mask.ids()) {
        column = g;
        break;
      }
    }
  }
  if (column < 0)
    throw std::invalid_argument(
        "peak_mean_infection: arbitrary masks need keep_history trajectories");
  for (std::uint32_t t = 0; t < traj.mean_i.size(); ++t) {
    const double mean = traj.mean_i[t][static_cast<std::size_t>(column)];
    if (mean > out.value) {
      out.value = mean;
      out.step = t;
    }
  }
  return out;
}

double conservation_error(const Trajectory& traj) { return traj.conservation_error; }

}  // namespace netsir
