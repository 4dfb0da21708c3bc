#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <tuple>
#include <vector>

#include "scn/link_filter.hpp"
#include "scn/netstats.hpp"
#include "scn/synthbench.hpp"

using namespace scn;

namespace {

using Key = std::tuple<FirmId, FirmId, int, int>;

std::set<Key> key_set(const std::vector<LinkInterval>& ivs) {
  std::set<Key> out;
  for (const auto& iv : ivs)
    out.insert({iv.supplier, iv.buyer, iv.entry_month, iv.exit_month});
  return out;
}

}  // namespace

TEST_CASE("zero-noise streams round-trip exactly") {
  auto truth = make_random_intervals(2000, 60, 5);
  TransactionGenConfig cfg;
  cfg.seed = 6;
  auto txs = generate_transactions(truth, cfg);
  auto rec = filter_stable_links(txs);
  CHECK(key_set(rec) == key_set(truth));
}

TEST_CASE("noise pairs never produce intervals") {
  auto truth = make_random_intervals(500, 60, 7);
  TransactionGenConfig cfg;
  cfg.seed = 8;
  cfg.noise_pairs = 300;
  auto txs = generate_transactions(truth, cfg);
  auto rec = filter_stable_links(txs);
  CHECK(key_set(rec) == key_set(truth));
  CHECK(txs.size() > 0);
}

TEST_CASE("generated amounts are positive when present") {
  auto truth = make_random_intervals(50, 24, 9);
  TransactionGenConfig cfg;
  cfg.seed = 10;
  auto txs = generate_transactions(truth, cfg);
  for (const auto& t : txs) {
    CHECK(t.has_amount);
    CHECK(t.amount > 0.0);
  }
}

TEST_CASE("sub-3-month intervals are rejected as unreconstructable") {
  std::vector<LinkInterval> bad = {{1, 2, 0, 2}};
  TransactionGenConfig cfg;
  CHECK_THROWS_AS(generate_transactions(bad, cfg), std::invalid_argument);
}

TEST_CASE("random intervals honour their contract") {
  auto ivs = make_random_intervals(3000, 48, 11);
  CHECK(ivs.size() == 3000);
  std::set<std::pair<FirmId, FirmId>> pairs;
  for (const auto& iv : ivs) {
    CHECK(iv.exit_month - iv.entry_month >= 3);
    CHECK(iv.entry_month >= 0);
    CHECK(iv.exit_month <= 48);
    CHECK(pairs.insert({iv.supplier, iv.buyer}).second);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  auto a = make_random_intervals(200, 36, 12);
  auto b = make_random_intervals(200, 36, 12);
  CHECK(key_set(a) == key_set(b));
  TransactionGenConfig cfg;
  cfg.seed = 13;
  cfg.noise_pairs = 20;
  auto t1 = generate_transactions(a, cfg);
  auto t2 = generate_transactions(b, cfg);
  REQUIRE(t1.size() == t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i].supplier == t2[i].supplier);
    CHECK(t1[i].month == t2[i].month);
    CHECK(t1[i].amount == t2[i].amount);
  }
}

TEST_CASE("configuration model hits the requested tail exponent") {
  SeedNetworkConfig cfg;
  cfg.n_firms = 100000;
  cfg.recipe = SeedRecipe::ConfigurationModel;
  cfg.seed = 14;
  cfg.degree_exponent = 2.4;
  Network net = seed_network(cfg);
  CHECK(net.num_firms() == 100000);
  std::vector<int> k_in;
  for (FirmId f : net.live_firms())
    if (net.k_in(f) > 0) k_in.push_back(net.k_in(f));
  auto fit = fit_tail_exponent(k_in);
  CHECK(fit.exponent == doctest::Approx(2.4).epsilon(0.0417));  // +- 0.1
}

TEST_CASE("single-sector seed labels everything alike") {
  SeedNetworkConfig cfg;
  cfg.n_firms = 100;
  cfg.seed = 15;
  Network net = seed_network(cfg);
  for (FirmId f : net.live_firms()) CHECK(net.sector(f) == 0);
}

TEST_CASE("sector prevalence shapes the seed labels") {
  SeedNetworkConfig cfg;
  cfg.n_firms = 20000;
  cfg.sector_dist = {0.7, 0.3};
  cfg.seed = 16;
  Network net = seed_network(cfg);
  double s0 = static_cast<double>(net.firms_in_sector(0)) /
              static_cast<double>(net.num_firms());
  CHECK(s0 == doctest::Approx(0.7).epsilon(0.05));
}

TEST_CASE("seed network construction is deterministic") {
  SeedNetworkConfig cfg;
  cfg.n_firms = 2000;
  cfg.seed = 17;
  Network a = seed_network(cfg);
  Network b = seed_network(cfg);
  CHECK(a.num_edges() == b.num_edges());
  for (FirmId f : a.live_firms()) {
    CHECK(a.customers_of(f) == b.customers_of(f));
  }
}

TEST_CASE("period-A fixture is internally consistent") {
  auto p = default_period_a_params();
  p.validate();
  CHECK(p.n_entry_mean == doctest::Approx(357.0));
  CHECK(p.p_node_exit == doctest::Approx(0.0049));
  CHECK(p.alpha0 == doctest::Approx(0.0108));
  CHECK(p.alpha == doctest::Approx(1.0369));
  CHECK(p.beta == doctest::Approx(1.08));
  CHECK(p.p_remove_link == doctest::Approx(0.0214));
  CHECK(p.entry_degrees.mean_in() == doctest::Approx(0.35));
  CHECK(p.entry_degrees.mean_out() == doctest::Approx(0.71));
  double sd = 0.0;
  for (double v : p.sector_dist) sd += v;
  CHECK(sd == doctest::Approx(1.0));
  for (int s2 = 0; s2 < p.sector_matrix.sector_count; ++s2) {
    double col = 0.0;
    for (int s1 = 0; s1 < p.sector_matrix.sector_count; ++s1)
      col += p.sector_matrix.at(s1, s2);
    CHECK(col == doctest::Approx(1.0));
  }
}

TEST_CASE("sector letters map NACE sections") {
  CHECK(sector_letter(0) == "A");
  CHECK(sector_letter(20) == "U");
  CHECK(sector_index("G") == 6);
  CHECK(sector_index(sector_letter(13)) == 13);
}
