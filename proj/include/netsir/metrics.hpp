#ifndef NETSIR_METRICS_HPP
#define NETSIR_METRICS_HPP

#include <cstdint>
#include <vector>

#include "netsir/sir.hpp"

namespace netsir {

/// Node subset selecting a subpopulation.
class GroupMask {
 public:
  static GroupMask whole(std::uint32_t n);
  static GroupMask group(const std::vector<std::uint32_t>& labels, std::uint32_t g);
  static GroupMask from_ids(std::vector<std::uint32_t> ids);

  const std::vector<std::uint32_t>& ids() const { return ids_; }
  bool empty() const { return ids_.empty(); }

 private:
  std::vector<std::uint32_t> ids_;
};

/// Mean over masked nodes of each node's maximum p_I over the whole run.
double infection_load(const Trajectory& traj, const GroupMask& mask);

/// Mean over masked nodes of each node's minimum of p_S + p_R.
double activation_margin(const Trajectory& traj, const GroupMask& mask);

struct PeakInfection {
  double value = 0.0;
  std::uint32_t step = 0;
};

/// Maximum over time of the masked mean of p_I, with the argmax step.
/// Requires the trajectory's full state history.
PeakInfection peak_mean_infection(const Trajectory& traj, const GroupMask& mask);

/// Max over nodes and steps of |p_S + p_I + p_R - 1| as recorded during the run.
double conservation_error(const Trajectory& traj);

}  // namespace netsir

#endif
