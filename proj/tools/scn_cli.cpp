// scn: supply-chain network rewiring toolkit.
//
// Subcommands: filter, calibrate, simulate, stats, esri, roundtrip.
// Exit codes: 0 success, 2 input error, 3 numerical failure, 4 insufficient data.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scn/calibration.hpp"
#include "scn/engine.hpp"
#include "scn/esri.hpp"
#include "scn/io.hpp"
#include "scn/link_filter.hpp"
#include "scn/netstats.hpp"
#include "scn/network.hpp"
#include "scn/synthbench.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInsufficient = 4;

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_dir = ".";
};

void write_manifest(const GlobalOpts& g, const std::string& command,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  json j;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["seed"] = g.seed;
  j["threads"] = g.threads;
  j["output_directory"] = g.out_dir;
  j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  scn::write_text_file((fs::path(g.out_dir) / "manifest.json").string(),
                       j.dump(2) + "\n");
}

void write_file(const fs::path& p, const std::function<void(std::ostream&)>& fn) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw scn::io_error("cannot write " + p.string());
  fn(out);
}

// ---------------------------------------------------------------------------
// filter

int cmd_filter(const GlobalOpts& g, const std::string& input, bool lenient) {
  auto res = scn::read_transactions_csv_file(input, lenient);
  for (const auto& e : res.errors) std::cerr << "warning: " << e << "\n";
  auto intervals = scn::filter_stable_links(res.records);

  std::set<std::pair<scn::FirmId, scn::FirmId>> pairs_in, pairs_out;
  for (const auto& t : res.records) pairs_in.insert({t.supplier, t.buyer});
  for (const auto& iv : intervals) pairs_out.insert({iv.supplier, iv.buyer});

  int t0 = 0, t1 = 0;
  if (!intervals.empty()) {
    t0 = intervals.front().entry_month;
    t1 = intervals.front().exit_month;
    for (const auto& iv : intervals) {
      t0 = std::min(t0, iv.entry_month);
      t1 = std::max(t1, iv.exit_month);
    }
  }
  auto timeline = scn::activity_timeline(intervals, t0, t1);

  fs::create_directories(g.out_dir);
  write_file(fs::path(g.out_dir) / "intervals.csv",
             [&](std::ostream& o) { scn::write_intervals_csv(o, intervals); });
  write_file(fs::path(g.out_dir) / "timeline.csv",
             [&](std::ostream& o) { scn::write_timeline_csv(o, timeline); });
  write_manifest(g, "filter", {input}, {"intervals.csv", "timeline.csv"});

  double rejected = pairs_in.empty()
                        ? 0.0
                        : 1.0 - static_cast<double>(pairs_out.size()) /
                                    static_cast<double>(pairs_in.size());
  std::cout << "pairs in: " << pairs_in.size() << "\n"
            << "intervals out: " << intervals.size() << "\n"
            << "self-loop rows dropped: " << res.rejected_self_loops << "\n"
            << "rejected pair share: " << rejected << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// calibrate

// Monthly reconstruction of the stable-link network from interval data.
// Months are swept in order; the state after month m holds every interval
// with entry <= m < exit.
struct MonthlySweep {
  int t0 = 0, t1 = 0;  // month range [t0, t1)
  std::map<scn::FirmId, int> sector_of;
  // per month: intervals entering / exiting
  std::map<int, std::vector<const scn::LinkInterval*>> entries, exits;
  std::map<scn::FirmId, int> first_month, last_active;

  explicit MonthlySweep(const std::vector<scn::LinkInterval>& ivs,
                        const std::map<scn::FirmId, int>& sectors)
      : sector_of(sectors) {
    if (ivs.empty()) throw scn::calibration_error("no intervals");
    t0 = ivs.front().entry_month;
    t1 = ivs.front().exit_month;
    for (const auto& iv : ivs) {
      t0 = std::min(t0, iv.entry_month);
      t1 = std::max(t1, iv.exit_month);
      entries[iv.entry_month].push_back(&iv);
      exits[iv.exit_month].push_back(&iv);
      for (scn::FirmId f : {iv.supplier, iv.buyer}) {
        auto [it, fresh] = first_month.try_emplace(f, iv.entry_month);
        if (!fresh) it->second = std::min(it->second, iv.entry_month);
        auto [jt, fresh2] = last_active.try_emplace(f, iv.exit_month - 1);
        if (!fresh2) jt->second = std::max(jt->second, iv.exit_month - 1);
      }
    }
  }

  int sector(scn::FirmId f) const {
    auto it = sector_of.find(f);
    return it == sector_of.end() ? 0 : it->second;
  }
};

struct CalibrationReport {
  scn::ModelParams params;
  scn::SeasonalRateModel entry_fit;
  scn::DecayFit decay;
  scn::ScalingFit supplier_scaling;
  scn::ScalingFit kernel;
  double p_exit_empirical = 0.0;
  std::vector<std::string> warnings;
};

CalibrationReport calibrate_from_intervals(
    const std::vector<scn::LinkInterval>& intervals,
    const std::map<scn::FirmId, int>& sectors, int sector_count) {
  MonthlySweep sw(intervals, sectors);
  CalibrationReport rep;
  const int t0 = sw.t0, t1 = sw.t1;
  // Interior months: edge months are censored by the 6-month filter window.
  const int lo = t0 + 6, hi = t1 - 6;
  if (hi - lo < 12)
    throw scn::calibration_error(
        "insufficient data for n_entry_mean: fewer than 12 interior months");

  // --- firm entry rate (seasonal Poisson over interior months)
  std::map<int, double> entry_counts;
  for (int m = lo; m < hi; ++m) entry_counts[m] = 0.0;
  for (const auto& [f, m] : sw.first_month)
    if (m >= lo && m < hi) entry_counts[m] += 1.0;
  std::vector<std::pair<int, double>> entry_series(entry_counts.begin(),
                                                   entry_counts.end());
  rep.entry_fit = scn::fit_seasonal_poisson(entry_series);
  rep.params.n_entry_mean = rep.entry_fit.mixture_mean();

  // --- link decay (cohorts by entry month, right-censoring respected)
  const int dt_max = std::min(12, hi - lo);
  std::vector<int> lifetimes;
  for (const auto& iv : intervals) {
    if (iv.entry_month < lo || iv.entry_month + dt_max >= t1) continue;
    lifetimes.push_back(std::min(iv.exit_month - iv.entry_month - 1, dt_max));
  }
  if (lifetimes.size() < 30)
    throw scn::calibration_error(
        "insufficient data for p_remove_link: fewer than 30 cohort links");
  rep.decay = scn::fit_link_decay(lifetimes, dt_max);
  rep.params.p_remove_link = 1.0 - rep.decay.survival;

  // --- monthly sweep collecting degree-resolved events
  std::map<scn::FirmId, std::pair<int, int>> deg;  // (k_in, k_out), active firms
  std::vector<std::pair<int, double>> supplier_events;  // (k_in, new suppliers)
  std::vector<std::pair<int, int>> kernel_events;       // (supplier k, sector)
  scn::DegreeCensus census;
  std::vector<std::pair<int, int>> sector_events;  // (supplier s, buyer s)
  std::vector<std::pair<int, int>> entry_degree_events;
  std::int64_t firm_months = 0, firm_exits = 0;
  std::map<int, std::int64_t> degree_hist;  // p(k) for the exit decomposition

  for (int m = t0; m < t1; ++m) {
    const bool interior = m >= lo && m < hi;
    // census and per-firm state before month m's entries land
    if (interior) {
      for (const auto& [f, d] : deg) {
        census.counts[{d.first + d.second, sw.sector(f)}] += 1;
        ++degree_hist[d.first + d.second];
        ++firm_months;
        if (sw.last_active.at(f) == m - 1) ++firm_exits;
      }
    }
    std::map<scn::FirmId, int> new_in;  // this month's new suppliers per buyer
    auto ent = sw.entries.find(m);
    if (ent != sw.entries.end()) {
      for (const auto* iv : ent->second) {
        sector_events.push_back({sw.sector(iv->supplier), sw.sector(iv->buyer)});
        auto ds = deg.find(iv->supplier);
        if (interior && ds != deg.end())
          kernel_events.push_back(
              {ds->second.first + ds->second.second, sw.sector(iv->supplier)});
        if (deg.count(iv->buyer)) ++new_in[iv->buyer];
      }
    }
    if (interior)
      for (const auto& [f, d] : deg)
        if (d.first >= 1)
          supplier_events.push_back(
              {d.first, static_cast<double>(new_in.count(f) ? new_in[f] : 0)});
    // entering firms' initial degrees
    if (ent != sw.entries.end()) {
      std::map<scn::FirmId, std::pair<int, int>> entrant_deg;
      for (const auto* iv : ent->second) {
        if (sw.first_month.at(iv->supplier) == m && !deg.count(iv->supplier))
          entrant_deg[iv->supplier].second += 1;
        if (sw.first_month.at(iv->buyer) == m && !deg.count(iv->buyer))
          entrant_deg[iv->buyer].first += 1;
      }
      if (interior)
        for (const auto& [f, d] : entrant_deg)
          entry_degree_events.push_back(d);
    }
    // apply entries then exits to the running degree state
    if (ent != sw.entries.end()) {
      for (const auto* iv : ent->second) {
        deg[iv->supplier].second += 1;
        deg[iv->buyer].first += 1;
      }
    }
    auto ex = sw.exits.find(m + 1);
    if (ex != sw.exits.end()) {
      for (const auto* iv : ex->second) {
        auto& s = deg[iv->supplier];
        auto& b = deg[iv->buyer];
        s.second -= 1;
        b.first -= 1;
      }
    }
    // drop firms past their last active month
    for (auto it = deg.begin(); it != deg.end();) {
      if (sw.last_active.at(it->first) <= m)
        it = deg.erase(it);
      else
        ++it;
    }
  }

  if (supplier_events.size() < 100)
    throw scn::calibration_error(
        "insufficient data for alpha: fewer than 100 firm-month observations");
  rep.supplier_scaling = scn::fit_new_supplier_scaling(supplier_events);
  rep.params.alpha0 = rep.supplier_scaling.prefactor;
  rep.params.alpha = rep.supplier_scaling.exponent;

  if (kernel_events.size() < 100)
    throw scn::calibration_error(
        "insufficient data for beta: fewer than 100 attachment events");
  rep.kernel = scn::estimate_attachment_kernel(kernel_events, census);
  rep.params.beta = rep.kernel.exponent;

  // --- firm exit probability via the exit-rate decomposition
  if (firm_months == 0)
    throw scn::calibration_error("insufficient data for p_node_exit");
  rep.p_exit_empirical =
      static_cast<double>(firm_exits) / static_cast<double>(firm_months);
  int k_max = degree_hist.empty() ? 0 : degree_hist.rbegin()->first;
  std::vector<double> pk(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (const auto& [k, n] : degree_hist)
    pk[static_cast<std::size_t>(k)] =
        static_cast<double>(n) / static_cast<double>(firm_months);
  rep.params.p_node_exit = scn::calibrate_exit_probability(
      rep.p_exit_empirical, pk, rep.params.p_remove_link);

  rep.params.sector_matrix =
      scn::estimate_sector_matrix(sector_events, sector_count);
  for (int s : rep.params.sector_matrix.customer_sectors_without_events)
    rep.warnings.push_back("no attachment events for customer sector " +
                           std::to_string(s));
  if (entry_degree_events.empty())
    throw scn::calibration_error("insufficient data for entry_degrees");
  rep.params.entry_degrees = scn::estimate_entry_degrees(entry_degree_events);

  std::vector<double> sector_census(static_cast<std::size_t>(sector_count), 0.0);
  double tot = 0.0;
  for (const auto& [f, s] : sw.sector_of) {
    sector_census[static_cast<std::size_t>(s)] += 1.0;
    tot += 1.0;
  }
  if (tot > 0)
    for (auto& v : sector_census) v /= tot;
  rep.params.sector_dist = sector_census;
  rep.params.validate();
  return rep;
}

json scaling_to_json(const scn::ScalingFit& f) {
  return json{{"prefactor", f.prefactor},
              {"exponent", f.exponent},
              {"prefactor_ci", {f.prefactor_lo, f.prefactor_hi}},
              {"exponent_ci", {f.exponent_lo, f.exponent_hi}},
              {"n_points", f.n_points}};
}

int cmd_calibrate(const GlobalOpts& g, const std::string& intervals_path,
                  const std::string& firms_path, int sector_count) {
  auto intervals = scn::read_intervals_csv_file(intervals_path);
  std::map<scn::FirmId, int> sectors;
  if (!firms_path.empty()) {
    std::ifstream in(firms_path);
    if (!in) throw scn::io_error("cannot open " + firms_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line == "\r") continue;
      std::istringstream ss(line);
      std::string a, b;
      if (!std::getline(ss, a, ',') || !std::getline(ss, b))
        throw scn::io_error("expected firm_id,sector", lineno);
      if (a == "firm_id") continue;
      sectors[std::stoll(a)] = std::stoi(b);
    }
  }
  auto rep = calibrate_from_intervals(intervals, sectors, sector_count);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";

  fs::create_directories(g.out_dir);
  scn::save_params_file((fs::path(g.out_dir) / "params.json").string(),
                        rep.params);
  json j;
  j["entry_rate"] = {{"beta0", rep.entry_fit.beta0},
                     {"beta1", rep.entry_fit.beta1},
                     {"mixture_mean", rep.entry_fit.mixture_mean()}};
  j["link_decay"] = {{"lambda", rep.decay.lambda},
                     {"survival", rep.decay.survival},
                     {"lambda_se", rep.decay.lambda_se}};
  j["new_supplier_scaling"] = scaling_to_json(rep.supplier_scaling);
  j["attachment_kernel"] = scaling_to_json(rep.kernel);
  j["p_exit_empirical"] = rep.p_exit_empirical;
  j["warnings"] = rep.warnings;
  scn::write_text_file((fs::path(g.out_dir) / "report.json").string(),
                       j.dump(2) + "\n");
  write_manifest(g, "calibrate", {intervals_path, firms_path},
                 {"params.json", "report.json"});
  std::cout << "n_entry_mean " << rep.params.n_entry_mean << "\n"
            << "p_node_exit " << rep.params.p_node_exit << "\n"
            << "alpha0 " << rep.params.alpha0 << "\n"
            << "alpha " << rep.params.alpha << "\n"
            << "beta " << rep.params.beta << "\n"
            << "p_remove_link " << rep.params.p_remove_link << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const GlobalOpts& g, const std::string& params_path,
                 const std::string& init_firms, const std::string& init_edges,
                 std::size_t synth_firms, int burn_in, int snapshot_interval,
                 int snapshot_count, bool stationary) {
  scn::ModelParams params = scn::load_params_file(params_path);
  scn::Network net = [&]() {
    if (!init_firms.empty()) {
      int sc = params.sector_matrix.sector_count > 0
                   ? params.sector_matrix.sector_count
                   : scn::kDefaultSectorCount;
      return scn::read_network_csv_files(init_firms, init_edges, sc);
    }
    scn::SeedNetworkConfig sc;
    sc.n_firms = synth_firms;
    sc.sector_dist = params.sector_dist;
    sc.seed = g.seed + 1;
    return scn::seed_network(sc);
  }();

  if (stationary)
    params = scn::stationarity_adjust(params, net, g.seed + 2, 60);

  scn::EngineConfig cfg;
  cfg.params = params;
  cfg.seed = g.seed;
  cfg.burn_in = burn_in;
  cfg.snapshot_interval = snapshot_interval;
  cfg.snapshot_count = snapshot_count;
  scn::Engine eng(std::move(net), cfg);
  auto snaps = eng.run();

  fs::create_directories(g.out_dir);
  std::vector<std::string> outputs = {"steps.csv"};
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    std::ostringstream tag;
    tag << "snapshot_" << std::setfill('0') << std::setw(2) << i;
    write_file(fs::path(g.out_dir) / (tag.str() + "_firms.csv"),
               [&](std::ostream& o) { scn::write_firms_csv(o, snaps[i]); });
    write_file(fs::path(g.out_dir) / (tag.str() + "_edges.csv"),
               [&](std::ostream& o) { scn::write_edges_csv(o, snaps[i]); });
    outputs.push_back(tag.str() + "_firms.csv");
    outputs.push_back(tag.str() + "_edges.csv");
  }
  write_file(fs::path(g.out_dir) / "steps.csv", [&](std::ostream& o) {
    scn::write_step_reports_csv(o, eng.reports());
  });
  if (stationary)
    scn::save_params_file((fs::path(g.out_dir) / "params_adjusted.json").string(),
                          params);
  write_manifest(g, "simulate", {params_path, init_firms, init_edges}, outputs);
  std::cout << "snapshots: " << snaps.size() << "\n"
            << "final N: " << eng.network().num_firms() << "\n"
            << "final L: " << eng.network().num_edges() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// stats / esri

int cmd_stats(const GlobalOpts& g, const std::string& firms_path,
              const std::string& edges_path, int sector_count) {
  scn::Network net =
      scn::read_network_csv_files(firms_path, edges_path, sector_count);
  auto st = scn::compute_stats(net);
  fs::create_directories(g.out_dir);
  scn::write_text_file((fs::path(g.out_dir) / "stats.json").string(),
                       scn::stats_to_json(st) + "\n");
  write_manifest(g, "stats", {firms_path, edges_path}, {"stats.json"});
  std::cout << "N " << st.n_firms << "  L " << st.n_edges << "  <k> "
            << st.mean_degree << "\n";
  if (st.tail_in)
    std::cout << "in-degree tail exponent " << st.tail_in->exponent << "\n";
  if (st.tail_out)
    std::cout << "out-degree tail exponent " << st.tail_out->exponent << "\n";
  return 0;
}

int cmd_esri(const GlobalOpts& g, const std::string& firms_path,
             const std::string& edges_path, const std::string& ess_path,
             int sector_count) {
  scn::Network net =
      scn::read_network_csv_files(firms_path, edges_path, sector_count);
  scn::EssentialnessTable ess =
      ess_path.empty()
          ? scn::EssentialnessTable::survey_default(sector_count)
          : scn::read_essentialness_csv_file(ess_path, sector_count);
  auto profile = scn::compute_esri(net, ess, 1e-6, 1000, g.threads);
  for (const auto& e : profile.entries)
    if (!e.converged)
      throw std::runtime_error("cascade for firm " + std::to_string(e.firm) +
                               " did not converge");
  fs::create_directories(g.out_dir);
  write_file(fs::path(g.out_dir) / "esri.csv",
             [&](std::ostream& o) { scn::write_esri_csv(o, profile); });
  write_manifest(g, "esri", {firms_path, edges_path, ess_path}, {"esri.csv"});
  if (!profile.entries.empty())
    std::cout << "top ESRI: firm " << profile.entries.front().firm << " = "
              << profile.entries.front().esri << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// roundtrip

int cmd_roundtrip(const GlobalOpts& g, std::size_t n_links, int months,
                  std::size_t noise_pairs) {
  auto truth = scn::make_random_intervals(n_links, months, g.seed);
  scn::TransactionGenConfig tc;
  tc.seed = g.seed + 1;
  tc.noise_pairs = noise_pairs;
  tc.months = months;
  auto txs = scn::generate_transactions(truth, tc);
  auto recovered = scn::filter_stable_links(txs);

  auto key = [](const scn::LinkInterval& iv) {
    return std::tuple(iv.supplier, iv.buyer, iv.entry_month, iv.exit_month);
  };
  std::set<std::tuple<scn::FirmId, scn::FirmId, int, int>> t_set, r_set;
  for (const auto& iv : truth) t_set.insert(key(iv));
  for (const auto& iv : recovered) r_set.insert(key(iv));
  std::size_t missed = 0, spurious = 0;
  for (const auto& k : t_set)
    if (!r_set.count(k)) ++missed;
  for (const auto& k : r_set)
    if (!t_set.count(k)) ++spurious;

  fs::create_directories(g.out_dir);
  json j;
  j["links_generated"] = truth.size();
  j["transactions"] = txs.size();
  j["intervals_recovered"] = recovered.size();
  j["missed"] = missed;
  j["spurious"] = spurious;
  j["exact"] = (missed == 0 && spurious == 0);
  scn::write_text_file((fs::path(g.out_dir) / "roundtrip.json").string(),
                       j.dump(2) + "\n");
  write_manifest(g, "roundtrip", {}, {"roundtrip.json"});
  std::cout << "generated " << truth.size() << " intervals, recovered "
            << recovered.size() << " (missed " << missed << ", spurious "
            << spurious << ")\n";
  return (missed == 0 && spurious == 0) ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supply-chain network rewiring simulator and calibration toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker thread cap (0 = hardware)");
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();

  std::string input, firms_path, edges_path, ess_path, params_path;
  bool lenient = false, stationary = false;
  int sector_count = scn::kDefaultSectorCount;
  std::size_t n_links = 10000, noise_pairs = 0, synth_firms = 1000;
  int months = 60, burn_in = 500, snapshot_interval = 200, snapshot_count = 10;

  auto* filter = app.add_subcommand("filter", "Extract stable link intervals");
  filter->add_option("input", input, "Transactions CSV")->required();
  filter->add_flag("--lenient", lenient, "Skip malformed rows with a warning");

  auto* calibrate =
      app.add_subcommand("calibrate", "Estimate model parameters from intervals");
  calibrate->add_option("intervals", input, "Intervals CSV")->required();
  calibrate->add_option("--firms", firms_path, "firm_id,sector CSV");
  calibrate->add_option("--sectors", sector_count, "Sector count");

  auto* simulate = app.add_subcommand("simulate", "Run the rewiring model");
  simulate->add_option("params", params_path, "Parameter JSON")->required();
  simulate->add_option("--init-firms", firms_path, "Initial firms CSV");
  simulate->add_option("--init-edges", edges_path, "Initial edges CSV");
  simulate->add_option("--synth-firms", synth_firms,
                       "Synthesize an initial network of this size");
  simulate->add_option("--burn-in", burn_in, "Burn-in steps");
  simulate->add_option("--snapshot-interval", snapshot_interval,
                       "Steps between snapshots");
  simulate->add_option("--snapshot-count", snapshot_count, "Snapshots to keep");
  simulate->add_flag("--stationary", stationary,
                     "Adjust the exit rate for stationarity first");

  auto* stats = app.add_subcommand("stats", "Snapshot statistics");
  stats->add_option("firms", firms_path, "Firms CSV")->required();
  stats->add_option("edges", edges_path, "Edges CSV")->required();
  stats->add_option("--sectors", sector_count, "Sector count");

  auto* esri = app.add_subcommand("esri", "Systemic risk profile");
  esri->add_option("firms", firms_path, "Firms CSV")->required();
  esri->add_option("edges", edges_path, "Edges CSV")->required();
  esri->add_option("--essentialness", ess_path, "Essentialness CSV");
  esri->add_option("--sectors", sector_count, "Sector count");

  auto* roundtrip =
      app.add_subcommand("roundtrip", "Synthetic filter round-trip check");
  roundtrip->add_option("--links", n_links, "Ground-truth links");
  roundtrip->add_option("--months", months, "Months of data");
  roundtrip->add_option("--noise", noise_pairs, "Sub-threshold noise pairs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*filter) return cmd_filter(g, input, lenient);
    if (*calibrate) return cmd_calibrate(g, input, firms_path, sector_count);
    if (*simulate)
      return cmd_simulate(g, params_path, firms_path, edges_path, synth_firms,
                          burn_in, snapshot_interval, snapshot_count, stationary);
    if (*stats) return cmd_stats(g, firms_path, edges_path, sector_count);
    if (*esri) return cmd_esri(g, firms_path, edges_path, ess_path, sector_count);
    if (*roundtrip) return cmd_roundtrip(g, n_links, months, noise_pairs);
  } catch (const scn::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const scn::calibration_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficient;
  } catch (const scn::netstats_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficient;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
