// Acceptance gate: one line per criterion, [PASS] or [FAIL], nonzero exit if
// any fail. Criteria 2-7 share a single 500-step period-A style run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "scn/calibration.hpp"
#include "scn/engine.hpp"
#include "scn/esri.hpp"
#include "scn/io.hpp"
#include "scn/link_filter.hpp"
#include "scn/netstats.hpp"
#include "scn/network.hpp"
#include "scn/synthbench.hpp"

using namespace scn;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

using EdgeKey = std::pair<FirmId, FirmId>;

// ---------------------------------------------------------------------------

void criterion_1_filter_roundtrip() {
  auto t0 = Clock::now();
  auto truth = make_random_intervals(10000, 60, 101);
  TransactionGenConfig cfg;
  cfg.seed = 102;
  auto txs = generate_transactions(truth, cfg);
  auto rec = filter_stable_links(txs);

  auto key = [](const LinkInterval& iv) {
    return std::tuple(iv.supplier, iv.buyer, iv.entry_month, iv.exit_month);
  };
  std::set<std::tuple<FirmId, FirmId, int, int>> t_set, r_set;
  for (const auto& iv : truth) t_set.insert(key(iv));
  for (const auto& iv : rec) r_set.insert(key(iv));
  bool exact = t_set == r_set;

  cfg.noise_pairs = 2000;
  cfg.seed = 103;
  auto noisy = filter_stable_links(generate_transactions(truth, cfg));
  std::set<std::tuple<FirmId, FirmId, int, int>> n_set;
  for (const auto& iv : noisy) n_set.insert(key(iv));
  bool no_spurious = n_set == t_set;

  double dt = seconds_since(t0);
  std::ostringstream d;
  d << "exact=" << (exact ? "yes" : "no") << " spurious-free="
    << (no_spurious ? "yes" : "no") << " runtime=" << dt << "s";
  report(1, "filter round trip", exact && no_spurious && dt < 10.0, d.str());
}

// ---------------------------------------------------------------------------

struct SharedRun {
  ModelParams params;          // period-A values used for generation
  ModelParams adjusted;        // after stationarity_adjust
  std::vector<StepReport> reports;
  std::vector<Network> snapshots;       // 5 late-run snapshots
  EventLog events;
  std::vector<std::pair<int, std::int64_t>> survival;  // (dt, cohort alive)
  std::int64_t cohort_size = 0;
  double runtime_s = 0.0;
  std::int64_t n_start = 0;
};

SharedRun shared_period_a_run() {
  auto t0 = Clock::now();
  SharedRun run;
  run.params = default_period_a_params();

  SeedNetworkConfig seed_cfg;
  seed_cfg.n_firms = 18340;
  seed_cfg.sector_dist = run.params.sector_dist;
  seed_cfg.seed = 201;
  // Heavier than the snapshot tail on purpose: an 18k-firm slice of a real
  // supply network carries hub mass (k ~ 10^3) far above what a pure 2.65
  // power law produces at this size, and the link budget needs that mass.
  seed_cfg.degree_exponent = 2.3;
  seed_cfg.mean_degree = 1.53;  // per direction, 2L/N ~ 3.06
  Network seed = seed_network(seed_cfg);

  run.adjusted = stationarity_adjust(run.params, seed, 202, 120);

  EngineConfig cfg;
  cfg.params = run.adjusted;
  cfg.seed = 203;
  cfg.record_events = true;
  Engine eng(std::move(seed), cfg);

  run.n_start = eng.network().num_firms();
  const int total_steps = 500;
  const int cohort_step = 300, cohort_window = 24;
  std::vector<EdgeKey> cohort;
  for (int s = 0; s < total_steps; ++s) {
    run.reports.push_back(eng.step());
    if (s + 1 == cohort_step) {
      for (FirmId f : eng.network().live_firms())
        for (FirmId b : eng.network().customers_of(f)) cohort.push_back({f, b});
      run.cohort_size = static_cast<std::int64_t>(cohort.size());
    }
    if (s + 1 > cohort_step && s + 1 <= cohort_step + cohort_window) {
      std::int64_t alive = 0;
      const Network& net = eng.network();
      for (const auto& [sup, buy] : cohort)
        if (net.live(sup) && net.live(buy) && net.has_edge(sup, buy)) ++alive;
      run.survival.push_back({s + 1 - cohort_step, alive});
    }
    if (s + 1 > 400 && (s + 1) % 20 == 0) run.snapshots.push_back(eng.network());
  }
  run.events = eng.events();
  run.runtime_s = seconds_since(t0);
  return run;
}

void criterion_2_calibration_recovery(const SharedRun& run) {
  std::ostringstream d;
  bool ok = true;

  // Sector-restricted kernel fits, combined event-weighted. A pooled fit
  // confounds degree with sector: per-firm attachment rates differ across
  // sectors (column weights over unequal sector masses), and high-degree
  // buckets only exist in the large sectors, which flattens the exponent.
  double beta_wsum = 0.0, beta_sum = 0.0;
  const int nsec = run.params.sector_matrix.sector_count;
  for (int s = 0; s < nsec; ++s) {
    std::vector<std::pair<int, int>> evs;
    for (const auto& e : run.events.attachment_events)
      if (e.second == s) evs.push_back(e);
    if (evs.size() < 500) continue;
    DegreeCensus cen;
    for (const auto& [ks, n] : run.events.census.counts)
      if (ks.second == s) cen.counts[ks] = n;
    auto fit = estimate_attachment_kernel(evs, cen);
    beta_sum += fit.exponent * static_cast<double>(evs.size());
    beta_wsum += static_cast<double>(evs.size());
  }
  double beta_hat = beta_wsum > 0.0 ? beta_sum / beta_wsum : 0.0;
  ok &= std::abs(beta_hat - run.params.beta) <= 0.15;
  d << "beta=" << beta_hat << " (target 1.08 +- 0.15)";

  auto scaling = fit_new_supplier_scaling(run.events.stub_events);
  double alpha_err = std::abs(scaling.exponent - run.params.alpha);
  ok &= alpha_err <= 0.1;
  d << " alpha=" << scaling.exponent << " (target 1.0369 +- 0.1)";

  std::int64_t removed = 0, exposed = 0, added_firms = 0;
  for (const auto& r : run.reports) {
    removed += r.links_removed_spontaneous;
    exposed += r.edges_before_link_removal;
    added_firms += r.firms_added;
  }
  double p_term = static_cast<double>(removed) / static_cast<double>(exposed);
  ok &= std::abs(p_term - run.params.p_remove_link) / run.params.p_remove_link <=
        0.10;
  d << " p_term=" << p_term << " (target 0.0214 +- 10%)";

  double n_entry =
      static_cast<double>(added_firms) / static_cast<double>(run.reports.size());
  ok &= std::abs(n_entry - run.params.n_entry_mean) / run.params.n_entry_mean <=
        0.05;
  d << " n_entry=" << n_entry << " (target 357 +- 5%)";

  ok &= run.runtime_s < 300.0;
  d << " shared-run=" << run.runtime_s << "s";
  report(2, "calibration recovery", ok, d.str());
}

void criterion_3_stationarity(const SharedRun& run) {
  bool n_ok = true;
  double k_sum = 0.0;
  for (const auto& r : run.reports) {
    double ratio = static_cast<double>(r.n_firms) /
                   static_cast<double>(run.n_start);
    if (ratio < 0.9 || ratio > 1.1) n_ok = false;
    k_sum += 2.0 * static_cast<double>(r.n_edges) /
             static_cast<double>(r.n_firms);
  }
  double k_avg = k_sum / static_cast<double>(run.reports.size());
  bool k_ok = k_avg >= 2.7 && k_avg <= 3.4;
  std::ostringstream d;
  d << "N_final/N_start="
    << static_cast<double>(run.reports.back().n_firms) /
           static_cast<double>(run.n_start)
    << " within-band=" << (n_ok ? "yes" : "no") << " <k>=" << k_avg
    << " (band [2.7, 3.4]) p_exit_adjusted=" << run.adjusted.p_node_exit;
  report(3, "stationarity", n_ok && k_ok, d.str());
}

void criterion_4_degree_tails(const SharedRun& run) {
  // pool late-run snapshots for tail power
  std::vector<int> k_in, k_out;
  for (const auto& net : run.snapshots) {
    for (FirmId f : net.live_firms()) {
      if (net.k_in(f) > 0) k_in.push_back(net.k_in(f));
      if (net.k_out(f) > 0) k_out.push_back(net.k_out(f));
    }
  }
  std::ostringstream d;
  bool ok = true;
  try {
    auto in_fit = fit_tail_exponent(k_in);
    auto out_fit = fit_tail_exponent(k_out);
    ok &= std::abs(in_fit.exponent - 2.653) <= 0.26;
    ok &= std::abs(out_fit.exponent - 2.620) <= 0.26;
    d << "in=" << in_fit.exponent << " (target 2.653 +- 0.26) out="
      << out_fit.exponent << " (target 2.620 +- 0.26)";
  } catch (const std::exception& e) {
    ok = false;
    d << "tail fit failed: " << e.what();
  }
  report(4, "degree tails", ok, d.str());
}

void criterion_5_link_decay(const SharedRun& run) {
  // all-cause cohort survival from the shared run
  std::vector<double> x, y;
  for (const auto& [dt, alive] : run.survival) {
    if (alive == 0) continue;
    x.push_back(static_cast<double>(dt));
    y.push_back(std::log(static_cast<double>(alive) /
                         static_cast<double>(run.cohort_size)));
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x[i] * y[i];
    den += x[i] * x[i];
  }
  double lambda = -num / den;  // through-origin OLS
  const double lo = -std::log(1.0 - 0.0214);
  const double hi = lo + 0.006;
  bool band_ok = lambda >= lo && lambda <= hi;

  // analytic cross-check on pure geometric data
  std::mt19937_64 rng(501);
  std::geometric_distribution<int> geo(0.0214);
  std::vector<int> lifetimes;
  for (int i = 0; i < 200000; ++i) lifetimes.push_back(geo(rng));
  auto pure = fit_link_decay(lifetimes, 24);
  double rel = std::abs(pure.lambda - lo) / lo;
  bool pure_ok = rel <= 0.03;

  std::ostringstream d;
  d << "cohort lambda=" << lambda << " (band [" << lo << ", " << hi
    << "]) geometric-oracle rel-err=" << rel;
  report(5, "link decay", band_ok && pure_ok, d.str());
}

bool curve_decreasing_beyond_10(const BinnedCurve& c) {
  // log-bin region: lower edges above 10; require a downward trend at 90%
  // confidence between consecutive occupied bins and strict overall decrease
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < c.bin_lo.size(); ++i)
    if (c.bin_lo[i] > 10.0 && c.count[i] > 0) idx.push_back(i);
  if (idx.size() < 2) return false;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    double se = std::sqrt(c.std_err[idx[j]] * c.std_err[idx[j]] +
                          c.std_err[idx[j - 1]] * c.std_err[idx[j - 1]]);
    if (c.mean[idx[j]] - c.mean[idx[j - 1]] > kZ90 * se) return false;
  }
  return c.mean[idx.back()] < c.mean[idx.front()];
}

void criterion_6_disassortativity(const SharedRun& run) {
  bool knn_ok = true, cl_ok = true;
  for (const auto& net : run.snapshots) {
    knn_ok &= curve_decreasing_beyond_10(knn_curve(net));
    cl_ok &= curve_decreasing_beyond_10(clustering_curve(net));
  }

  // exhaustive oracle on a small random graph
  std::mt19937_64 rng(601);
  Network small(1);
  for (int i = 0; i < 300; ++i) small.add_firm(0);
  for (int i = 0; i < 900; ++i) {
    FirmId s = static_cast<FirmId>(rng() % 300);
    FirmId b = static_cast<FirmId>(rng() % 300);
    if (s != b) small.add_edge(s, b);
  }
  std::map<FirmId, std::set<FirmId>> adj;
  for (FirmId f : small.live_firms()) {
    adj[f];
    for (FirmId b : small.customers_of(f)) {
      adj[f].insert(b);
      adj[b].insert(f);
    }
  }
  bool brute_ok = true;
  auto knn = knn_per_node(small);
  std::size_t pos = 0;
  for (const auto& [f, nb] : adj) {
    if (nb.empty()) continue;
    double sum = 0.0;
    for (FirmId j : nb) sum += static_cast<double>(adj.at(j).size());
    double want = sum / static_cast<double>(nb.size());
    if (pos >= knn.size() || std::abs(knn[pos].second - want) > 1e-9 ||
        knn[pos].first != static_cast<int>(nb.size()))
      brute_ok = false;
    ++pos;
  }
  brute_ok &= pos == knn.size();

  auto cl = clustering_per_node(small);
  pos = 0;
  for (const auto& [f, nb] : adj) {
    if (nb.size() < 2) continue;
    int tri = 0;
    for (FirmId a : nb)
      for (FirmId b : nb)
        if (a < b && adj.at(a).count(b)) ++tri;
    double k = static_cast<double>(nb.size());
    double want = 2.0 * tri / (k * (k - 1.0));
    if (pos >= cl.size() || std::abs(cl[pos].second - want) > 1e-9)
      brute_ok = false;
    ++pos;
  }
  brute_ok &= pos == cl.size();

  std::ostringstream d;
  d << "knn-decreasing=" << (knn_ok ? "yes" : "no") << " clustering-decreasing="
    << (cl_ok ? "yes" : "no") << " brute-force-match="
    << (brute_ok ? "yes" : "no");
  report(6, "disassortativity and hierarchy", knn_ok && cl_ok && brute_ok,
         d.str());
}

void criterion_7_esri(const SharedRun& run) {
  auto t0 = Clock::now();
  const Network& net = run.snapshots.back();
  // Bundled default pattern: goods inputs essential, services non-essential.
  EssentialnessTable ess =
      EssentialnessTable::survey_default(net.sector_count());
  auto profile = compute_esri(net, ess);
  double runtime = seconds_since(t0);

  const double inv_n = 1.0 / static_cast<double>(net.num_firms());
  bool floor_ok = true, sorted_ok = true;
  for (std::size_t i = 0; i < profile.entries.size(); ++i) {
    if (profile.entries[i].esri < inv_n - 1e-12) floor_ok = false;
    if (i > 0 &&
        profile.entries[i].esri > profile.entries[i - 1].esri + 1e-12)
      sorted_ok = false;
  }
  bool span_ok = false;
  if (profile.entries.size() > 1000) {
    span_ok = profile.entries[0].esri / profile.entries[999].esri >= 1000.0;
  }

  // hand cascades on the three documented toy graphs
  bool toys_ok = true;
  {
    Network iso(1);
    for (int i = 0; i < 5; ++i) iso.add_firm(0);
    iso.add_edge(0, 1);
    auto p = compute_esri(iso, EssentialnessTable::uniform(1, InputClass::Essential));
    for (const auto& e : p.entries)
      if (e.firm == 4 && std::abs(e.esri - 0.2) > 1e-9) toys_ok = false;
  }
  {
    Network chain(1);
    chain.add_firm(0);
    chain.add_firm(0);
    chain.add_edge(0, 1);
    auto p = compute_esri(chain, EssentialnessTable::uniform(1, InputClass::Essential));
    for (const auto& e : p.entries)
      if (e.firm == 0 && std::abs(e.esri - 1.0) > 1e-9) toys_ok = false;
  }
  {
    Network two(1);
    two.add_firm(0);
    two.add_firm(0);
    two.add_firm(0);
    two.add_edge(0, 2);
    two.add_edge(1, 2);
    auto psi = esri_cascade(two, EssentialnessTable::uniform(1, InputClass::Essential), 0);
    if (psi[2] > 0.5 + 1e-9) toys_ok = false;
  }

  std::ostringstream d;
  d << "floor=" << (floor_ok ? "yes" : "no") << " rank-sorted="
    << (sorted_ok ? "yes" : "no") << " span3dec=" << (span_ok ? "yes" : "no")
    << " toys=" << (toys_ok ? "yes" : "no") << " runtime=" << runtime << "s on N="
    << net.num_firms();
  report(7, "esri properties",
         floor_ok && sorted_ok && span_ok && toys_ok && runtime < 120.0,
         d.str());
}

void criterion_8_determinism() {
  // engine stage
  auto run_engine = []() {
    EngineConfig cfg;
    cfg.params = default_period_a_params();
    cfg.params.n_entry_mean = 25.0;
    cfg.seed = 801;
    SeedNetworkConfig sc;
    sc.n_firms = 1500;
    sc.sector_dist = cfg.params.sector_dist;
    sc.seed = 802;
    Engine eng(seed_network(sc), cfg);
    for (int i = 0; i < 40; ++i) eng.step();
    std::ostringstream os;
    write_edges_csv(os, eng.network());
    return os.str();
  };
  bool engine_ok = run_engine() == run_engine();

  // filter stage
  auto truth = make_random_intervals(500, 36, 803);
  TransactionGenConfig tc;
  tc.seed = 804;
  auto txs = generate_transactions(truth, tc);
  auto run_filter = [&]() {
    std::ostringstream os;
    write_intervals_csv(os, filter_stable_links(txs));
    return os.str();
  };
  bool filter_ok = run_filter() == run_filter();

  // parallel esri stage
  SeedNetworkConfig sc;
  sc.n_firms = 800;
  sc.seed = 805;
  Network net = seed_network(sc);
  auto run_esri = [&]() {
    std::ostringstream os;
    write_esri_csv(os, compute_esri(net, EssentialnessTable::uniform(
                                             1, InputClass::Essential)));
    return os.str();
  };
  bool esri_ok = run_esri() == run_esri();

  std::ostringstream d;
  d << "engine=" << (engine_ok ? "yes" : "no") << " filter="
    << (filter_ok ? "yes" : "no") << " esri=" << (esri_ok ? "yes" : "no");
  report(8, "determinism", engine_ok && filter_ok && esri_ok, d.str());
}

void criterion_9_exit_solver() {
  std::vector<double> pk = {0.0, 1.0};
  double p_ex = calibrate_exit_probability(0.0259, pk, 0.021);
  bool ok = std::abs(p_ex - 0.0049) < 1e-15;
  std::ostringstream d;
  d << "p_ex=" << p_ex << " (expected 0.0049 exactly)";
  report(9, "exit-rate inversion", ok, d.str());
}

}  // namespace

int main() {
  criterion_1_filter_roundtrip();
  SharedRun run = shared_period_a_run();
  criterion_2_calibration_recovery(run);
  criterion_3_stationarity(run);
  criterion_4_degree_tails(run);
  criterion_5_link_decay(run);
  criterion_6_disassortativity(run);
  criterion_7_esri(run);
  criterion_8_determinism();
  criterion_9_exit_solver();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
