#ifndef SCN_ENGINE_HPP
#define SCN_ENGINE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "scn/calibration.hpp"
#include "scn/network.hpp"
#include "scn/sampler.hpp"

namespace scn {

struct EngineConfig {
  ModelParams params;
  std::uint64_t seed = 0;
  int max_resample = 20;  // duplicate/self-loop retry budget per stub
  int steps = 0;
  int burn_in = 500;
  int snapshot_interval = 200;
  int snapshot_count = 10;
  bool record_events = false;  // keep per-event logs for re-calibration
};

struct StepReport {
  int step = 0;
  std::int64_t n_firms = 0;  // after the step
  std::int64_t n_edges = 0;
  std::int64_t firms_added = 0;
  std::int64_t firms_removed = 0;          // uniform + isolated
  std::int64_t isolated_removed = 0;
  std::int64_t links_added = 0;
  std::int64_t links_removed = 0;          // spontaneous + firm-exit losses
  std::int64_t links_removed_spontaneous = 0;
  std::int64_t links_removed_firm_exit = 0;
  std::int64_t edges_before_link_removal = 0;
  std::int64_t stubs_discarded = 0;
};

/// Optional per-event logs, enough to run the calibration estimators against
/// a finished simulation (closing the estimate -> simulate -> re-estimate loop).
struct EventLog {
  // (degree at step start, in-stubs drawn) for surviving pre-existing firms.
  std::vector<std::pair<int, double>> stub_events;
  // (supplier degree at attachment, supplier sector) for kernel-based draws.
  std::vector<std::pair<int, int>> attachment_events;
  // Census captured right before each step's connection phase, merged.
  DegreeCensus census;
  // Entry quotas drawn in step 1.
  std::vector<std::pair<int, int>> entry_degree_events;
};

/// Executes the monthly five-step rewiring schedule: firm entry with sector
/// and entry-degree draws, spontaneous link removal, uniform firm removal plus
/// isolated-firm cleanup, stub creation, and kernel-based wiring with
/// new-firm priority. Deterministic given (initial network, config).
class Engine {
 public:
  Engine(Network initial, const EngineConfig& cfg);

  StepReport step();
  /// Runs burn_in steps, then snapshot_count snapshots every snapshot_interval
  /// steps. Returns the frozen snapshots.
  std::vector<Network> run();

  const Network& network() const { return net_; }
  const std::vector<StepReport>& reports() const { return reports_; }
  const EventLog& events() const { return events_; }
  const EngineConfig& config() const { return cfg_; }

  /// For invariant checks: stored sampler weight of every live firm.
  double attachment_weight(FirmId f) const;

 private:
  double kernel_weight(int degree) const;
  void track_add_firm_weight(FirmId f);
  void track_weight_update(FirmId f);
  bool add_edge_tracked(FirmId supplier, FirmId buyer);
  void remove_edge_tracked(FirmId supplier, FirmId buyer);
  void remove_firm_tracked(FirmId f);
  SectorId draw_entry_sector();
  std::pair<int, int> draw_entry_degrees();

  struct NewFirm {
    FirmId id;
    int in_quota;
    int out_quota;
  };

  void step1_add_firms(StepReport& rep, std::vector<NewFirm>& entrants);
  void step2_remove_links(StepReport& rep);
  void step3_remove_firms(StepReport& rep, const std::vector<NewFirm>& entrants);
  std::vector<FirmId> step4_create_stubs(StepReport& rep,
                                         const std::vector<NewFirm>& entrants);
  void step5_connect(StepReport& rep, std::vector<FirmId>& stubs,
                     std::vector<NewFirm>& entrants);

  Network net_;
  EngineConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<WeightedSampler> sector_index_;  // one sampler per sector
  std::vector<std::discrete_distribution<int>> pi_column_;
  std::vector<StepReport> reports_;
  EventLog events_;
  int step_count_ = 0;
};

}  // namespace scn

#endif
