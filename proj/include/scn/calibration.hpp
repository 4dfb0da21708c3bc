#ifndef SCN_CALIBRATION_HPP
#define SCN_CALIBRATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scn/network.hpp"

namespace scn {

class calibration_error : public std::runtime_error {
 public:
  explicit calibration_error(const std::string& what) : std::runtime_error(what) {}
};

/// Monthly event counts fitted as a linear trend in month-of-year (1..12).
/// The mixture PDF is the average of twelve Poisson laws with rates x(tau).
struct SeasonalRateModel {
  double beta0 = 0.0;  // events/month intercept
  double beta1 = 0.0;  // slope per month-of-year
  double rate(int month_of_year) const { return beta1 * month_of_year + beta0; }
  double mixture_mean() const { return beta1 * 6.5 + beta0; }
  double mixture_pdf(int count) const;
};

struct DecayFit {
  double lambda = 0.0;     // per-month decay rate
  double survival = 1.0;   // a = exp(-lambda)
  double lambda_se = 0.0;
  int dt_max = 0;
};

struct GroupDecayFit {
  DecayFit fit;
  std::size_t n_links = 0;
  bool low_confidence = false;
};

struct ScalingFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  double prefactor_lo = 0.0, prefactor_hi = 0.0;  // 90% CI
  double exponent_lo = 0.0, exponent_hi = 0.0;    // 90% CI
  std::size_t n_points = 0;
};

struct SectorAttachmentMatrix {
  int sector_count = 0;
  // pi[s1][s2] = p(supplier sector s1 | customer sector s2); columns sum to 1
  // over sectors with observations.
  std::vector<std::vector<double>> pi;
  std::vector<int> customer_sectors_without_events;

  double at(int s1, int s2) const {
    return pi[static_cast<std::size_t>(s1)][static_cast<std::size_t>(s2)];
  }
  std::vector<double> column(int s2) const;
};

struct EntryDegreeDistribution {
  int k_cap = 3;
  // p[k_in][k_out], (k_cap+1)^2 entries summing to 1.
  std::vector<std::vector<double>> p;

  double mean_in() const;
  double mean_out() const;
};

/// Full calibrated parameter set consumed by the engine.
struct ModelParams {
  double n_entry_mean = 0.0;   // firms/month
  double p_node_exit = 0.0;    // uniform removal probability/month
  double alpha0 = 0.0;         // new-supplier scaling prefactor
  double alpha = 1.0;          // new-supplier scaling exponent
  double beta = 1.0;           // attachment kernel exponent
  double p_remove_link = 0.0;  // spontaneous link termination/month
  SectorAttachmentMatrix sector_matrix;
  EntryDegreeDistribution entry_degrees;
  std::vector<double> sector_dist;  // p(s), sums to 1
  bool frozen_sector_dist = false;  // sample sectors from sector_dist instead
                                    // of the live census n(s)/N
  bool poisson_stubs = false;       // Poisson(alpha0 k^alpha) instead of the
                                    // binomial parametrization
  void validate() const;
};

// --- estimators -------------------------------------------------------------

/// OLS of monthly counts against month-of-year. Throws if any fitted seasonal
/// rate is non-positive. `monthly_counts` pairs (month index, count).
SeasonalRateModel fit_seasonal_poisson(
    const std::vector<std::pair<int, double>>& monthly_counts);

/// `lifetimes[i]` = number of months after t0 that cohort link i stayed alive
/// (0 = gone by t0+1). Fits ln l(dt) = -lambda dt through the origin over
/// dt = 1..dt_max; points with l(dt) = 0 are dropped.
DecayFit fit_link_decay(const std::vector<int>& lifetimes, int dt_max);

std::map<int, GroupDecayFit> fit_decay_by_group(
    const std::map<int, std::vector<int>>& cohorts, int dt_max,
    std::size_t min_group_size = 30);

/// Per-firm-month observations (degree k >= 1, new supplier count). Averages
/// the count per degree and fits log<N> = log a0 + a log k by OLS. When
/// `fixed_exponent` is set the exponent is pinned and only the prefactor fit.
ScalingFit fit_new_supplier_scaling(
    const std::vector<std::pair<int, double>>& events,
    std::optional<double> fixed_exponent = std::nullopt);

struct DegreeCensus {
  // n(k, s): number of live firms with total degree k in sector s.
  std::map<std::pair<int, int>, std::int64_t> counts;
  std::int64_t at(int k, int s) const {
    auto it = counts.find({k, s});
    return it == counts.end() ? 0 : it->second;
  }
  static DegreeCensus from_network(const Network& net);
};

/// Attachment kernel fit: histogram of new-supplier events per degree, each
/// event weighted 1/n(k, s), then OLS on the log variables.
ScalingFit estimate_attachment_kernel(
    const std::vector<std::pair<int, int>>& events,  // (degree k, sector s)
    const DegreeCensus& census);

SectorAttachmentMatrix estimate_sector_matrix(
    const std::vector<std::pair<int, int>>& events,  // (supplier s1, customer s2)
    int sector_count);

EntryDegreeDistribution estimate_entry_degrees(
    const std::vector<std::pair<int, int>>& entry_events, int k_cap = 3);

/// Inverts the exit-rate decomposition: the empirical exit probability is the
/// uniform removal probability plus the chance of losing every link.
double calibrate_exit_probability(double p_exit_empirical,
                                  const std::vector<double>& degree_dist,
                                  double p_remove_link);

/// Scales p_node_exit by bisection until the mean per-step change in firm
/// count over `trial_steps` simulated months is within tolerance of zero.
ModelParams stationarity_adjust(const ModelParams& params,
                                const Network& current_network,
                                std::uint64_t seed, int trial_steps);

// --- shared regression helpers ---------------------------------------------

struct OlsFit {
  double intercept = 0.0, slope = 0.0;
  double intercept_se = 0.0, slope_se = 0.0;
  std::size_t n = 0;
};

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y);

inline constexpr double kZ90 = 1.6448536269514722;  // two-sided 90% normal quantile

}  // namespace scn

#endif
