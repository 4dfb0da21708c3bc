#include "scn/esri.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace scn {

EssentialnessTable EssentialnessTable::uniform(int sector_count, InputClass c) {
  EssentialnessTable t;
  t.sector_count = sector_count;
  t.e.assign(static_cast<std::size_t>(sector_count),
             std::vector<InputClass>(static_cast<std::size_t>(sector_count), c));
  return t;
}

EssentialnessTable EssentialnessTable::survey_default(int sector_count) {
  EssentialnessTable t = uniform(sector_count, InputClass::NonEssential);
  const int goods = std::min(sector_count, 5);
  for (int si = 0; si < goods; ++si)
    for (int sf = 0; sf < sector_count; ++sf)
      t.e[static_cast<std::size_t>(si)][static_cast<std::size_t>(sf)] =
          InputClass::Essential;
  return t;
}

namespace {

// Precomputed per-firm cascade structure over a frozen snapshot.
struct CascadeGraph {
  struct FirmInputs {
    // In-neighbors grouped by supplier sector: (sector, first, count) into ids.
    struct Group {
      int sector;
      std::size_t first;
      std::size_t count;
      InputClass cls;
    };
    std::vector<Group> groups;
    std::size_t out_first = 0, out_count = 0;
  };

  std::vector<FirmId> live;            // live ids, ascending
  std::vector<int> slot_of;            // firm id -> dense slot (-1 dead)
  std::vector<FirmInputs> inputs;      // per slot
  std::vector<std::int64_t> in_ids;    // flattened supplier slots
  std::vector<std::int64_t> out_ids;   // flattened customer slots
  std::vector<std::vector<std::int64_t>> touch_next;  // slot -> slots to requeue

  CascadeGraph(const Network& net, const EssentialnessTable& ess) {
    live = net.live_firms();
    slot_of.assign(static_cast<std::size_t>(net.id_bound()), -1);
    for (std::size_t i = 0; i < live.size(); ++i)
      slot_of[static_cast<std::size_t>(live[i])] = static_cast<int>(i);
    inputs.resize(live.size());
    touch_next.resize(live.size());

    for (std::size_t i = 0; i < live.size(); ++i) {
      FirmId f = live[i];
      const int fs = net.sector(f);
      auto& fi = inputs[i];

      // Group suppliers by sector (supplier lists are sorted by id, so sort a
      // local copy by sector first).
      std::vector<std::pair<int, std::int64_t>> by_sector;
      for (FirmId sup : net.suppliers_of(f)) {
        by_sector.emplace_back(net.sector(sup),
                               slot_of[static_cast<std::size_t>(sup)]);
      }
      std::sort(by_sector.begin(), by_sector.end());
      std::size_t j = 0;
      while (j < by_sector.size()) {
        std::size_t j2 = j;
        while (j2 < by_sector.size() && by_sector[j2].first == by_sector[j].first)
          ++j2;
        FirmInputs::Group g;
        g.sector = by_sector[j].first;
        g.first = in_ids.size();
        g.count = j2 - j;
        g.cls = ess.at(g.sector, fs);
        for (std::size_t t = j; t < j2; ++t) in_ids.push_back(by_sector[t].second);
        fi.groups.push_back(g);
        j = j2;
      }
      fi.out_first = out_ids.size();
      fi.out_count = net.customers_of(f).size();
      for (FirmId c : net.customers_of(f))
        out_ids.push_back(slot_of[static_cast<std::size_t>(c)]);

      // Seed set for this firm as cascade source: its customers (supply
      // side) and its suppliers (demand side).
      auto& touch = touch_next[i];
      for (FirmId c : net.customers_of(f))
        touch.push_back(slot_of[static_cast<std::size_t>(c)]);
      for (FirmId s : net.suppliers_of(f))
        touch.push_back(slot_of[static_cast<std::size_t>(s)]);
      std::sort(touch.begin(), touch.end());
      touch.erase(std::unique(touch.begin(), touch.end()), touch.end());
    }
  }

  // Supply level: what the firm could produce from its input side alone.
  // A demand-constrained supplier still delivers in full (spare capacity), so
  // only suppliers' own supply levels propagate downstream.
  double evaluate_supply(std::size_t slot, const std::vector<double>& d) const {
    const auto& fi = inputs[slot];
    double supply = 1.0;
    double noness_sum = 0.0;
    std::size_t noness_groups = 0;
    for (const auto& g : fi.groups) {
      if (g.cls == InputClass::NotUsed) continue;
      double s = 0.0;
      for (std::size_t t = 0; t < g.count; ++t)
        s += d[static_cast<std::size_t>(in_ids[g.first + t])];
      double frac = s / static_cast<double>(g.count);
      if (g.cls == InputClass::Essential) {
        supply = std::min(supply, frac);
      } else {
        noness_sum += frac;
        ++noness_groups;
      }
    }
    if (noness_groups > 0) supply *= noness_sum / noness_groups;
    return supply;
  }

  // Demand level: surviving orders, weighted by customers' realized
  // production min(d, u). A customer that cannot produce stops ordering.
  double evaluate_demand(std::size_t slot, const std::vector<double>& d,
                         const std::vector<double>& u) const {
    const auto& fi = inputs[slot];
    if (fi.out_count == 0) return 1.0;
    double s = 0.0;
    for (std::size_t t = 0; t < fi.out_count; ++t) {
      std::size_t c = static_cast<std::size_t>(out_ids[fi.out_first + t]);
      s += std::min(d[c], u[c]);
    }
    return s / static_cast<double>(fi.out_count);
  }
};

struct CascadeResult {
  double esri;
  bool converged;
};

// Relaxes supply levels d and demand levels u to their greatest fixed point
// with the source pinned at 0. Buffers arrive filled with 1.0 and are left
// dirty; the caller restores them over `touched`.
CascadeResult run_cascade(const CascadeGraph& g, std::size_t source_slot,
                          double tol, long max_relaxations,
                          std::vector<double>& d, std::vector<double>& u,
                          std::vector<std::int64_t>& touched,
                          std::vector<std::int64_t>& queue,
                          std::vector<char>& queued) {
  d[source_slot] = 0.0;
  u[source_slot] = 0.0;
  touched.clear();
  touched.push_back(static_cast<std::int64_t>(source_slot));
  queue.clear();
  for (std::int64_t n : g.touch_next[source_slot]) {
    if (static_cast<std::size_t>(n) == source_slot) continue;
    queue.push_back(n);
    queued[static_cast<std::size_t>(n)] = 1;
  }

  bool converged = true;
  long relaxations = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t slot = static_cast<std::size_t>(queue[head]);
    queued[slot] = 0;
    if (slot == source_slot) continue;
    if (++relaxations > max_relaxations) {
      converged = false;
      break;
    }
    double nd = g.evaluate_supply(slot, d);
    double nu = g.evaluate_demand(slot, d, u);
    bool d_drop = d[slot] - nd > tol;
    bool psi_drop =
        std::min(d[slot], u[slot]) - std::min(nd, nu) > tol;
    if (d_drop || psi_drop) {
      if (d[slot] == 1.0 && u[slot] == 1.0) {
        touched.push_back(static_cast<std::int64_t>(slot));
      }
      d[slot] = std::max(0.0, std::min(d[slot], nd));
      u[slot] = std::max(0.0, std::min(u[slot], nu));
      // A supply drop re-constrains customers; a realized-production drop
      // re-constrains suppliers' demand. Requeue the superset.
      const auto& fi = g.inputs[slot];
      if (d_drop) {
        for (std::size_t t = 0; t < fi.out_count; ++t) {
          std::size_t c = static_cast<std::size_t>(g.out_ids[fi.out_first + t]);
          if (!queued[c] && c != source_slot) {
            queued[c] = 1;
            queue.push_back(static_cast<std::int64_t>(c));
          }
        }
      }
      for (const auto& grp : fi.groups) {
        for (std::size_t t = 0; t < grp.count; ++t) {
          std::size_t s = static_cast<std::size_t>(g.in_ids[grp.first + t]);
          if (!queued[s] && s != source_slot) {
            queued[s] = 1;
            queue.push_back(static_cast<std::int64_t>(s));
          }
        }
      }
    }
  }

  double loss = 0.0;
  for (std::int64_t s : touched)
    loss += 1.0 - std::min(d[static_cast<std::size_t>(s)],
                           u[static_cast<std::size_t>(s)]);
  for (std::size_t i = 0; i < queue.size(); ++i)
    queued[static_cast<std::size_t>(queue[i])] = 0;
  return {loss / static_cast<double>(g.live.size()), converged};
}

}  // namespace

std::vector<double> esri_cascade(const Network& net,
                                 const EssentialnessTable& ess, FirmId source,
                                 double tol, int max_iter) {
  CascadeGraph g(net, ess);
  std::size_t slot = static_cast<std::size_t>(
      g.slot_of[static_cast<std::size_t>(source)]);
  std::vector<double> d(g.live.size(), 1.0), u(g.live.size(), 1.0);
  std::vector<std::int64_t> touched, queue;
  std::vector<char> queued(g.live.size(), 0);
  long max_relax =
      static_cast<long>(max_iter) * static_cast<long>(g.live.size());
  run_cascade(g, slot, tol, max_relax, d, u, touched, queue, queued);

  std::vector<double> by_id(static_cast<std::size_t>(net.id_bound()), 1.0);
  for (std::size_t i = 0; i < g.live.size(); ++i)
    by_id[static_cast<std::size_t>(g.live[i])] = std::min(d[i], u[i]);
  return by_id;
}

EsriProfile compute_esri(const Network& net, const EssentialnessTable& ess,
                         double tol, int max_iter, int threads) {
  CascadeGraph g(net, ess);
  const std::size_t n = g.live.size();
  std::vector<EsriEntry> entries(n);

  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  n_threads = std::min<int>(n_threads, static_cast<int>(std::max<std::size_t>(1, n)));

  const long max_relax = static_cast<long>(max_iter) * static_cast<long>(std::max<std::size_t>(1, n));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    std::vector<double> d(n, 1.0), u(n, 1.0);
    std::vector<std::int64_t> touched, queue;
    std::vector<char> queued(n, 0);
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      CascadeResult r =
          run_cascade(g, i, tol, max_relax, d, u, touched, queue, queued);
      entries[i] = {g.live[i], r.esri, r.converged};
      for (std::int64_t s : touched) {
        d[static_cast<std::size_t>(s)] = 1.0;
        u[static_cast<std::size_t>(s)] = 1.0;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(entries.begin(), entries.end(), [](const EsriEntry& a, const EsriEntry& b) {
    if (a.esri != b.esri) return a.esri > b.esri;
    return a.firm < b.firm;
  });
  EsriProfile p;
  p.entries = std::move(entries);
  return p;
}

ProfileComparison esri_profile_compare(
    const EsriProfile& a, const EsriProfile& b,
    const std::vector<EsriProfile>& snapshot_set) {
  ProfileComparison cmp;
  std::size_t n = std::min(a.entries.size(), b.entries.size());
  cmp.ratio.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double denom = b.entries[i].esri;
    cmp.ratio.push_back(denom > 0.0 ? a.entries[i].esri / denom : 0.0);
  }
  if (!snapshot_set.empty()) {
    std::size_t m = snapshot_set.front().entries.size();
    for (const auto& p : snapshot_set) m = std::min(m, p.entries.size());
    cmp.env_min.assign(m, 0.0);
    cmp.env_max.assign(m, 0.0);
    cmp.env_mean.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      double lo = snapshot_set.front().entries[i].esri, hi = lo, sum = 0.0;
      for (const auto& p : snapshot_set) {
        double v = p.entries[i].esri;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
      }
      cmp.env_min[i] = lo;
      cmp.env_max[i] = hi;
      cmp.env_mean[i] = sum / snapshot_set.size();
    }
  }
  return cmp;
}

}  // namespace scn
