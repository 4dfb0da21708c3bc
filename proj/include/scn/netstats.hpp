#ifndef SCN_NETSTATS_HPP
#define SCN_NETSTATS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scn/network.hpp"

namespace scn {

class netstats_error : public std::runtime_error {
 public:
  explicit netstats_error(const std::string& what) : std::runtime_error(what) {}
};

/// Degree-binned curve: linear bins of width 1 for k <= 10, multiplicative
/// bins above. Means are present only for non-empty bins.
struct BinnedCurve {
  std::vector<double> bin_lo;    // lower edge of each bin
  std::vector<double> mean;
  std::vector<double> std_err;   // standard error of the mean
  std::vector<std::int64_t> count;
};

struct TailFit {
  double exponent = 0.0;  // density exponent of p(k) ~ k^-exponent
  double ci_lo = 0.0, ci_hi = 0.0;  // 90% CI
  int k_min = 1;
  std::size_t n_tail = 0;
};

struct SnapshotStats {
  std::int64_t n_firms = 0;
  std::int64_t n_edges = 0;
  double mean_degree = 0.0;  // 2L/N, total degree per firm
  std::vector<std::pair<double, double>> ccdf_total, ccdf_in, ccdf_out;
  std::optional<TailFit> tail_in, tail_out;
  BinnedCurve knn;
  BinnedCurve clustering;
};

/// Exact empirical counter-cumulative distribution p(X >= x) at each distinct x.
std::vector<std::pair<double, double>> ccdf(const std::vector<int>& values);

/// Discrete maximum-likelihood power-law fit of the tail above k_min. When
/// k_min is not given it is chosen to minimize the Kolmogorov-Smirnov distance.
/// Requires >= 100 tail values.
TailFit fit_tail_exponent(const std::vector<int>& values,
                          std::optional<int> k_min = std::nullopt);

/// Average nearest-neighbor degree on the undirected projection, binned.
BinnedCurve knn_curve(const Network& net);
/// Local clustering c_i = 2 t_i / k_i (k_i - 1), binned; nodes with k < 2 skipped.
BinnedCurve clustering_curve(const Network& net);

/// Per-node values on the undirected projection, for oracle comparisons.
/// Entries are (undirected degree, value); isolated (or k<2) nodes omitted.
std::vector<std::pair<int, double>> knn_per_node(const Network& net);
std::vector<std::pair<int, double>> clustering_per_node(const Network& net);

/// Sample variance over the trailing `window` entries.
double trailing_variance(const std::vector<std::int64_t>& series, std::size_t window);

SnapshotStats compute_stats(const Network& net);

/// Bin index layout shared by knn/clustering curves: returns lower edges.
std::vector<double> degree_bin_edges(int max_degree);

}  // namespace scn

#endif
