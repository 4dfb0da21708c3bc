#include "scn/synthbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include "scn/engine.hpp"

namespace scn {

namespace {
const char* kSectorLetters = "ABCDEFGHIJKLMNOPQRSTU";
}

std::string sector_letter(int s) {
  if (s < 0 || s >= kDefaultSectorCount) return "?";
  return std::string(1, kSectorLetters[s]);
}

int sector_index(const std::string& letter) {
  if (letter.size() == 1) {
    const char* p = std::strchr(kSectorLetters, letter[0]);
    if (p) return static_cast<int>(p - kSectorLetters);
  }
  // Also accept plain integer indices.
  try {
    int v = std::stoi(letter);
    if (v >= 0) return v;
  } catch (...) {
  }
  return -1;
}

ModelParams default_period_a_params() {
  ModelParams p;
  p.n_entry_mean = 357.0;
  p.p_node_exit = 0.0049;
  p.alpha0 = 0.0108;
  p.alpha = 1.0369;
  p.beta = 1.08;
  p.p_remove_link = 0.0214;

  // Sector prevalence, trade/manufacturing/professional-services heavy.
  std::vector<double> w = {0.045, 0.002, 0.090, 0.005, 0.005, 0.090, 0.220,
                           0.050, 0.035, 0.060, 0.020, 0.050, 0.130, 0.050,
                           0.003, 0.010, 0.020, 0.015, 0.040, 0.001, 0.009};
  double ws = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= ws;
  p.sector_dist = w;

  // Supplier attachment matrix: strong diagonal plus a few supplier sectors
  // (wholesale G, energy D, real estate L) that serve everyone.
  const int ns = kDefaultSectorCount;
  p.sector_matrix.sector_count = ns;
  p.sector_matrix.pi.assign(ns, std::vector<double>(ns, 0.0));
  const int sG = sector_index("G"), sD = sector_index("D"), sL = sector_index("L");
  for (int s2 = 0; s2 < ns; ++s2) {
    std::vector<double> col(ns, 0.1);
    col[s2] += 4.0;
    col[sG] += 2.0;
    col[sD] += 0.8;
    col[sL] += 0.8;
    double sum = std::accumulate(col.begin(), col.end(), 0.0);
    for (int s1 = 0; s1 < ns; ++s1) p.sector_matrix.pi[s1][s2] = col[s1] / sum;
  }

  // Entry-degree joint table, mean in-degree 0.35 and out-degree 0.71,
  // with no mass on (0,0).
  p.entry_degrees.k_cap = 3;
  p.entry_degrees.p.assign(4, std::vector<double>(4, 0.0));
  p.entry_degrees.p[1][0] = 0.309;
  p.entry_degrees.p[0][1] = 0.641;
  p.entry_degrees.p[1][1] = 0.020;
  p.entry_degrees.p[0][2] = 0.015;
  p.entry_degrees.p[2][0] = 0.005;
  p.entry_degrees.p[0][3] = 0.004;
  p.entry_degrees.p[3][0] = 0.002;
  p.entry_degrees.p[1][2] = 0.003;
  p.entry_degrees.p[2][1] = 0.001;
  return p;
}

std::vector<LinkInterval> make_random_intervals(std::size_t n_links, int months,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LinkInterval> out;
  out.reserve(n_links);
  std::geometric_distribution<int> extra(0.15);
  for (std::size_t i = 0; i < n_links; ++i) {
    int len = 3 + std::min(extra(rng), months - 3);
    len = std::min(len, months);
    std::uniform_int_distribution<int> start(0, months - len);
    int e = start(rng);
    // Disjoint firm pairs keep every (supplier, buyer) unique.
    out.push_back({static_cast<FirmId>(2 * i), static_cast<FirmId>(2 * i + 1),
                   e, e + len});
  }
  return out;
}

std::vector<TransactionRecord> generate_transactions(
    const std::vector<LinkInterval>& intervals, const TransactionGenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::lognormal_distribution<double> amount(cfg.amount_log_mean,
                                             cfg.amount_log_sigma);
  std::vector<TransactionRecord> out;
  FirmId max_id = 0;
  for (const auto& iv : intervals) {
    if (iv.exit_month - iv.entry_month < 3)
      throw std::invalid_argument(
          "generate_transactions: interval shorter than 3 months cannot be "
          "reconstructed by the 3-in-6 rule");
    max_id = std::max({max_id, iv.supplier, iv.buyer});
    for (int m = iv.entry_month; m < iv.exit_month; ++m) {
      out.push_back({iv.supplier, iv.buyer, m, amount(rng), true});
    }
  }
  // Noise: pairs with at most two transactions can never satisfy 3-in-6.
  const FirmId base = max_id + 1000;
  int months = std::max(cfg.months, 2);
  std::uniform_int_distribution<int> month(0, months - 1);
  for (std::size_t j = 0; j < cfg.noise_pairs; ++j) {
    FirmId s = base + static_cast<FirmId>(2 * j);
    FirmId b = base + static_cast<FirmId>(2 * j + 1);
    int m1 = month(rng), m2 = month(rng);
    out.push_back({s, b, m1, amount(rng), true});
    if (m2 != m1) out.push_back({s, b, m2, amount(rng), true});
  }
  return out;
}

namespace {

// Discrete power-law sampler, p(k) ~ k^-gamma for k >= 1.
class ZipfSampler {
 public:
  ZipfSampler(double gamma, int k_max) {
    cdf_.reserve(static_cast<std::size_t>(k_max));
    double acc = 0.0;
    for (int k = 1; k <= k_max; ++k) {
      acc += std::pow(static_cast<double>(k), -gamma);
      cdf_.push_back(acc);
    }
    for (double& v : cdf_) v /= acc;
  }
  template <class RNG>
  int operator()(RNG& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u(rng));
    return static_cast<int>(it - cdf_.begin()) + 1;
  }

 private:
  std::vector<double> cdf_;
};

Network configuration_model(const SeedNetworkConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int ns = cfg.sector_dist.empty()
                     ? 1
                     : static_cast<int>(cfg.sector_dist.size());
  Network net(ns);
  std::vector<FirmId> ids;
  ids.reserve(cfg.n_firms);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < cfg.n_firms; ++i) {
    SectorId s = 0;
    if (!cfg.sector_dist.empty()) {
      double r = u(rng), acc = 0.0;
      for (int q = 0; q < ns; ++q) {
        acc += cfg.sector_dist[static_cast<std::size_t>(q)];
        if (r < acc) {
          s = q;
          break;
        }
        s = ns - 1;
      }
    }
    ids.push_back(net.add_firm(s));
  }

  const int k_max = std::max(
      10, static_cast<int>(std::pow(static_cast<double>(cfg.n_firms), 0.9)));
  ZipfSampler zipf(cfg.degree_exponent, k_max);
  // Zero-inflate each direction so the requested mean degree holds; the pure
  // power law pins the mean to its own value otherwise. Firms drawing (0,0)
  // are promoted to degree 1 on a random side so the seed has no isolates.
  double mean_zipf = 0.0;
  {
    double norm = 0.0;
    for (int k = 1; k <= k_max; ++k) norm += std::pow(k, -cfg.degree_exponent);
    for (int k = 1; k <= k_max; ++k)
      mean_zipf += k * std::pow(k, -cfg.degree_exponent) / norm;
  }
  const double q = std::min(1.0, cfg.mean_degree / mean_zipf);
  std::vector<FirmId> out_stubs, in_stubs;
  for (FirmId f : ids) {
    int ko = u(rng) < q ? zipf(rng) : 0;
    int ki = u(rng) < q ? zipf(rng) : 0;
    if (ko == 0 && ki == 0) {
      if (u(rng) < 0.5) ko = 1;
      else ki = 1;
    }
    for (int t = 0; t < ko; ++t) out_stubs.push_back(f);
    for (int t = 0; t < ki; ++t) in_stubs.push_back(f);
  }
  // Balance stub counts by trimming the longer list.
  std::shuffle(out_stubs.begin(), out_stubs.end(), rng);
  std::shuffle(in_stubs.begin(), in_stubs.end(), rng);
  std::size_t m = std::min(out_stubs.size(), in_stubs.size());
  for (std::size_t t = 0; t < m; ++t) {
    net.add_edge(out_stubs[t], in_stubs[t]);  // self-loops/dups dropped
  }
  return net;
}

Network engine_burn_in(const SeedNetworkConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int ns = cfg.sector_dist.empty()
                     ? std::max(1, cfg.params.sector_matrix.sector_count)
                     : static_cast<int>(cfg.sector_dist.size());
  Network net(ns);
  const std::size_t n0 = std::min<std::size_t>(cfg.n_firms, 500);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<FirmId> ids;
  for (std::size_t i = 0; i < n0; ++i) {
    SectorId s = 0;
    if (!cfg.sector_dist.empty()) {
      double r = u(rng), acc = 0.0;
      for (int q = 0; q < ns; ++q) {
        acc += cfg.sector_dist[static_cast<std::size_t>(q)];
        if (r < acc) {
          s = q;
          break;
        }
        s = ns - 1;
      }
    }
    ids.push_back(net.add_firm(s));
  }
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  for (std::size_t e = 0; e < 2 * ids.size(); ++e) {
    net.add_edge(ids[pick(rng)], ids[pick(rng)]);
  }
  EngineConfig ec;
  ec.params = cfg.params;
  ec.seed = cfg.seed ^ 0x9e3779b97f4a7c15ULL;
  Engine eng(std::move(net), ec);
  for (int s = 0; s < cfg.burn_in_steps; ++s) eng.step();
  return eng.network();
}

}  // namespace

Network seed_network(const SeedNetworkConfig& cfg) {
  if (cfg.n_firms < 100)
    throw std::invalid_argument("seed_network needs n_firms >= 100");
  switch (cfg.recipe) {
    case SeedRecipe::ConfigurationModel:
      return configuration_model(cfg);
    case SeedRecipe::EngineBurnIn:
      return engine_burn_in(cfg);
  }
  throw std::logic_error("unknown recipe");
}

}  // namespace scn
