#ifndef SCN_SYNTHBENCH_HPP
#define SCN_SYNTHBENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "scn/calibration.hpp"
#include "scn/link_filter.hpp"
#include "scn/network.hpp"

namespace scn {

struct GroundTruth {
  ModelParams params;
  std::uint64_t seed = 0;
  std::string recipe;
  std::vector<LinkInterval> intervals;  // when transactions were generated
};

struct TransactionGenConfig {
  std::uint64_t seed = 0;
  std::size_t noise_pairs = 0;  // pairs with <= 2 transactions, filtered out
  double amount_log_mean = 10.0;
  double amount_log_sigma = 1.5;
  int months = 60;
};

/// Emits one transaction per active month of every interval (so the stable-link
/// filter reconstructs each interval exactly) plus noise pairs the filter must
/// reject. Intervals must span at least 3 months; shorter ones cannot be
/// produced by the 3-in-6 rule at monthly resolution.
std::vector<TransactionRecord> generate_transactions(
    const std::vector<LinkInterval>& intervals, const TransactionGenConfig& cfg);

/// Random ground-truth intervals for filter round-trip tests: pairs are unique,
/// spans >= 3 months inside [0, months).
std::vector<LinkInterval> make_random_intervals(std::size_t n_links, int months,
                                                std::uint64_t seed);

enum class SeedRecipe { ConfigurationModel, EngineBurnIn };

struct SeedNetworkConfig {
  std::size_t n_firms = 1000;
  std::vector<double> sector_dist;  // empty = single sector
  SeedRecipe recipe = SeedRecipe::ConfigurationModel;
  std::uint64_t seed = 0;
  double degree_exponent = 2.4;  // configuration-model tail (density exponent)
  double mean_degree = 3.0;      // per-direction mean target
  ModelParams params;            // for the burn-in recipe
  int burn_in_steps = 300;
};

/// Synthetic initial network: a directed configuration model with power-law
/// degrees, or a long engine burn-in started from a small random seed.
Network seed_network(const SeedNetworkConfig& cfg);

/// Bundled parameter fixture for a period-A style run (21 NACE-section
/// sectors, diagonal-heavy supplier matrix, entry degrees with mean in 0.35 /
/// out 0.71).
ModelParams default_period_a_params();

inline constexpr int kDefaultSectorCount = 21;  // NACE sections A..U
std::string sector_letter(int s);
int sector_index(const std::string& letter);

}  // namespace scn

#endif
