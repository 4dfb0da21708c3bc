#include "scn/engine.hpp"

#include <algorithm>
#include <cmath>

namespace scn {

Engine::Engine(Network initial, const EngineConfig& cfg)
    : net_(std::move(initial)), cfg_(cfg), rng_(cfg.seed) {
  cfg_.params.validate();
  const int ns = net_.sector_count();
  sector_index_.resize(static_cast<std::size_t>(ns));
  for (FirmId f : net_.live_firms()) {
    sector_index_[static_cast<std::size_t>(net_.sector(f))].insert(
        f, kernel_weight(net_.degree(f)));
  }
  // One supplier-sector distribution per customer sector. Missing or all-zero
  // columns fall back to a uniform sector choice.
  pi_column_.reserve(static_cast<std::size_t>(ns));
  const auto& pi = cfg_.params.sector_matrix;
  for (int s2 = 0; s2 < ns; ++s2) {
    std::vector<double> col(static_cast<std::size_t>(ns), 1.0);
    if (pi.sector_count == ns) {
      double sum = 0.0;
      for (int s1 = 0; s1 < ns; ++s1) sum += pi.at(s1, s2);
      if (sum > 0.0) col = pi.column(s2);
    }
    pi_column_.emplace_back(col.begin(), col.end());
  }
}

double Engine::kernel_weight(int degree) const {
  if (degree <= 0) return 0.0;
  return std::pow(static_cast<double>(degree), cfg_.params.beta);
}

double Engine::attachment_weight(FirmId f) const {
  const auto& idx = sector_index_[static_cast<std::size_t>(net_.sector(f))];
  return idx.contains(f) ? idx.weight(f) : 0.0;
}

void Engine::track_weight_update(FirmId f) {
  sector_index_[static_cast<std::size_t>(net_.sector(f))].update(
      f, kernel_weight(net_.degree(f)));
}

bool Engine::add_edge_tracked(FirmId supplier, FirmId buyer) {
  if (!net_.add_edge(supplier, buyer)) return false;
  track_weight_update(supplier);
  track_weight_update(buyer);
  return true;
}

void Engine::remove_edge_tracked(FirmId supplier, FirmId buyer) {
  if (!net_.remove_edge(supplier, buyer)) return;
  track_weight_update(supplier);
  track_weight_update(buyer);
}

void Engine::remove_firm_tracked(FirmId f) {
  std::vector<FirmId> neighbors = net_.suppliers_of(f);
  const auto& out = net_.customers_of(f);
  neighbors.insert(neighbors.end(), out.begin(), out.end());
  sector_index_[static_cast<std::size_t>(net_.sector(f))].remove(f);
  net_.remove_firm(f);
  for (FirmId n : neighbors) {
    if (net_.live(n)) track_weight_update(n);
  }
}

SectorId Engine::draw_entry_sector() {
  const int ns = net_.sector_count();
  if (cfg_.params.frozen_sector_dist || net_.num_firms() == 0) {
    const auto& p = cfg_.params.sector_dist;
    if (p.empty()) return 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = u(rng_), acc = 0.0;
    for (int s = 0; s < ns && s < static_cast<int>(p.size()); ++s) {
      acc += p[static_cast<std::size_t>(s)];
      if (r < acc) return s;
    }
    return ns - 1;
  }
  std::uniform_int_distribution<std::int64_t> u(1, net_.num_firms());
  std::int64_t r = u(rng_), acc = 0;
  for (int s = 0; s < ns; ++s) {
    acc += net_.firms_in_sector(s);
    if (r <= acc) return s;
  }
  return ns - 1;
}

std::pair<int, int> Engine::draw_entry_degrees() {
  const auto& d = cfg_.params.entry_degrees;
  if (d.p.empty()) return {0, 0};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = u(rng_), acc = 0.0;
  for (int i = 0; i <= d.k_cap; ++i) {
    for (int o = 0; o <= d.k_cap; ++o) {
      acc += d.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)];
      if (r < acc) return {i, o};
    }
  }
  return {d.k_cap, d.k_cap};
}

void Engine::step1_add_firms(StepReport& rep, std::vector<NewFirm>& entrants) {
  int n_new = 0;
  if (cfg_.params.n_entry_mean > 0.0) {
    std::poisson_distribution<int> pois(cfg_.params.n_entry_mean);
    n_new = pois(rng_);
  }
  entrants.reserve(static_cast<std::size_t>(n_new));
  for (int i = 0; i < n_new; ++i) {
    SectorId s = draw_entry_sector();
    auto [kin0, kout0] = draw_entry_degrees();
    FirmId id = net_.add_firm(s);
    sector_index_[static_cast<std::size_t>(s)].insert(id, 0.0);
    entrants.push_back({id, kin0, kout0});
    if (cfg_.record_events) events_.entry_degree_events.emplace_back(kin0, kout0);
  }
  rep.firms_added = n_new;
}

void Engine::step2_remove_links(StepReport& rep) {
  rep.edges_before_link_removal = net_.num_edges();
  const double p = cfg_.params.p_remove_link;
  if (p <= 0.0) return;
  std::bernoulli_distribution kill(p);
  std::vector<std::pair<FirmId, FirmId>> doomed;
  for (FirmId f : net_.live_firms()) {
    for (FirmId buyer : net_.customers_of(f)) {
      if (kill(rng_)) doomed.emplace_back(f, buyer);
    }
  }
  for (const auto& [s, b] : doomed) remove_edge_tracked(s, b);
  rep.links_removed_spontaneous = static_cast<std::int64_t>(doomed.size());
}

void Engine::step3_remove_firms(StepReport& rep,
                                const std::vector<NewFirm>& entrants) {
  const FirmId first_new =
      entrants.empty() ? net_.id_bound() : entrants.front().id;
  const double p = cfg_.params.p_node_exit;
  std::int64_t edges_before = net_.num_edges();
  if (p > 0.0) {
    std::bernoulli_distribution kill(p);
    std::vector<FirmId> doomed;
    for (FirmId f : net_.live_firms()) {
      if (f >= first_new) continue;  // this step's entrants are exempt
      if (kill(rng_)) doomed.push_back(f);
    }
    for (FirmId f : doomed) {
      remove_firm_tracked(f);
      ++rep.firms_removed;
    }
  }
  rep.links_removed_firm_exit = edges_before - net_.num_edges();
  for (FirmId f : net_.isolated_firms()) {
    if (f >= first_new) continue;  // wired only in step 5
    remove_firm_tracked(f);
    ++rep.firms_removed;
    ++rep.isolated_removed;
  }
}

std::vector<FirmId> Engine::step4_create_stubs(
    StepReport& rep, const std::vector<NewFirm>& entrants) {
  (void)rep;
  const FirmId first_new =
      entrants.empty() ? net_.id_bound() : entrants.front().id;
  std::vector<FirmId> stubs;
  for (FirmId f : net_.live_firms()) {
    if (f >= first_new) continue;  // entrant in-stubs come from their quota
    const int k = net_.degree(f);
    if (k < 1) continue;
    int n_stubs = 0;
    if (cfg_.params.poisson_stubs) {
      double mean = cfg_.params.alpha0 * std::pow(k, cfg_.params.alpha);
      if (mean > 0.0) {
        std::poisson_distribution<int> pois(mean);
        n_stubs = pois(rng_);
      }
    } else {
      double p = cfg_.params.alpha0 * std::pow(k, cfg_.params.alpha - 1.0);
      p = std::clamp(p, 0.0, 1.0);
      if (p > 0.0) {
        std::binomial_distribution<int> bin(k, p);
        n_stubs = bin(rng_);
      }
    }
    for (int i = 0; i < n_stubs; ++i) stubs.push_back(f);
    if (cfg_.record_events)
      events_.stub_events.emplace_back(k, static_cast<double>(n_stubs));
  }
  for (const auto& nf : entrants) {
    for (int i = 0; i < nf.in_quota; ++i) stubs.push_back(nf.id);
  }
  return stubs;
}

void Engine::step5_connect(StepReport& rep, std::vector<FirmId>& stubs,
                           std::vector<NewFirm>& entrants) {
  std::shuffle(stubs.begin(), stubs.end(), rng_);

  const FirmId first_new =
      entrants.empty() ? net_.id_bound() : entrants.front().id;
  auto entrant_of = [&](FirmId id) -> NewFirm* {
    if (id < first_new) return nullptr;
    return &entrants[static_cast<std::size_t>(id - first_new)];
  };

  // Degree snapshot aligned with the logged census; attachment events are
  // recorded against it the same way the empirical estimator sees them.
  std::vector<int> degree_at_census;
  if (cfg_.record_events) {
    DegreeCensus census;
    degree_at_census.assign(static_cast<std::size_t>(net_.id_bound()), 0);
    for (FirmId f : net_.live_firms()) {
      int k = net_.degree(f);
      degree_at_census[static_cast<std::size_t>(f)] = k;
      ++census.counts[{k, net_.sector(f)}];
    }
    for (const auto& [ks, n] : census.counts) events_.census.counts[ks] += n;
  }

  std::vector<std::size_t> open_out;  // entrant indices with unfilled out-quota
  for (std::size_t i = 0; i < entrants.size(); ++i) {
    if (entrants[i].out_quota > 0) open_out.push_back(i);
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto connect_via_new_firm = [&](FirmId customer) -> bool {
    for (int attempt = 0; attempt < cfg_.max_resample && !open_out.empty();
         ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, open_out.size() - 1);
      std::size_t slot = pick(rng_);
      NewFirm& nf = entrants[open_out[slot]];
      if (nf.id == customer || net_.has_edge(nf.id, customer)) continue;
      if (!add_edge_tracked(nf.id, customer)) continue;
      ++rep.links_added;
      if (--nf.out_quota == 0) {
        open_out[slot] = open_out.back();
        open_out.pop_back();
      }
      if (NewFirm* cn = entrant_of(customer)) --cn->in_quota;
      return true;
    }
    return false;
  };

  auto connect_via_kernel = [&](FirmId customer) -> bool {
    const SectorId s_cust = net_.sector(customer);
    for (int attempt = 0; attempt < cfg_.max_resample; ++attempt) {
      int s1 = pi_column_[static_cast<std::size_t>(s_cust)](rng_);
      auto& idx = sector_index_[static_cast<std::size_t>(s1)];
      if (idx.total() <= 0.0) continue;  // chosen sector has no weighted firms
      FirmId j = idx.sample(rng_);
      if (j == customer || net_.has_edge(j, customer)) continue;
      int k_event = cfg_.record_events && j < static_cast<FirmId>(degree_at_census.size())
                        ? degree_at_census[static_cast<std::size_t>(j)]
                        : 0;
      if (!add_edge_tracked(j, customer)) continue;
      ++rep.links_added;
      if (cfg_.record_events && k_event >= 1)
        events_.attachment_events.emplace_back(k_event, net_.sector(j));
      if (NewFirm* cn = entrant_of(customer)) --cn->in_quota;
      return true;
    }
    return false;
  };

  for (FirmId customer : stubs) {
    if (!net_.live(customer)) continue;
    bool done = false;
    if (!open_out.empty()) done = connect_via_new_firm(customer);
    if (!done) done = connect_via_kernel(customer);
    if (!done) ++rep.stubs_discarded;
  }

  // Entrants whose own stubs were discarded still owe their entry in-degree:
  // generate replacement draws targeting them.
  for (auto& nf : entrants) {
    while (nf.in_quota > 0) {
      int before = nf.in_quota;
      bool done = false;
      if (!open_out.empty()) done = connect_via_new_firm(nf.id);
      if (!done) done = connect_via_kernel(nf.id);
      if (!done || nf.in_quota == before) {
        ++rep.stubs_discarded;
        --nf.in_quota;  // give up on this unit
      }
    }
  }
}

StepReport Engine::step() {
  StepReport rep;
  rep.step = ++step_count_;

  std::vector<NewFirm> entrants;
  step1_add_firms(rep, entrants);
  step2_remove_links(rep);
  step3_remove_firms(rep, entrants);
  std::vector<FirmId> stubs = step4_create_stubs(rep, entrants);
  step5_connect(rep, stubs, entrants);

  rep.links_removed = rep.links_removed_spontaneous + rep.links_removed_firm_exit;
  rep.n_firms = net_.num_firms();
  rep.n_edges = net_.num_edges();
  net_.set_month(net_.month() + 1);
  reports_.push_back(rep);
  return rep;
}

std::vector<Network> Engine::run() {
  for (int s = 0; s < cfg_.burn_in; ++s) step();
  std::vector<Network> snapshots;
  if (cfg_.snapshot_count <= 0) {
    snapshots.push_back(net_);
    return snapshots;
  }
  for (int i = 0; i < cfg_.snapshot_count; ++i) {
    for (int s = 0; s < cfg_.snapshot_interval; ++s) step();
    snapshots.push_back(net_);
  }
  return snapshots;
}

}  // namespace scn
