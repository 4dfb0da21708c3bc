#include "scn/netstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace scn {

std::vector<std::pair<double, double>> ccdf(const std::vector<int>& values) {
  if (values.empty()) throw netstats_error("ccdf of empty sample");
  std::vector<int> v = values;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  std::vector<std::pair<double, double>> out;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    out.emplace_back(static_cast<double>(v[i]),
                     static_cast<double>(v.size() - i) / n);
    i = j;
  }
  return out;
}

namespace {

// Hurwitz zeta by direct summation with an Euler-Maclaurin tail.
double hurwitz_zeta(double s, double q) {
  constexpr int kDirect = 24;
  double sum = 0.0;
  for (int j = 0; j < kDirect; ++j) sum += std::pow(q + j, -s);
  double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(a, -s);
  sum += s * std::pow(a, -s - 1.0) / 12.0;
  return sum;
}

// Negative log-likelihood of the discrete power law with support k >= k_min.
double tail_nll(double alpha, double sum_log, std::size_t n, int k_min) {
  return alpha * sum_log +
         n * std::log(hurwitz_zeta(alpha, static_cast<double>(k_min)));
}

double mle_alpha(double sum_log, std::size_t n, int k_min) {
  // Golden-section search on (1, 12].
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 1.0001, hi = 12.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = tail_nll(x1, sum_log, n, k_min);
  double f2 = tail_nll(x2, sum_log, n, k_min);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = tail_nll(x1, sum_log, n, k_min);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = tail_nll(x2, sum_log, n, k_min);
    }
  }
  return 0.5 * (lo + hi);
}

double ks_distance(const std::vector<int>& sorted_tail, double alpha, int k_min) {
  // Model CCDF at x: zeta(alpha, x) / zeta(alpha, k_min).
  const double z0 = hurwitz_zeta(alpha, static_cast<double>(k_min));
  const double n = static_cast<double>(sorted_tail.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted_tail.size()) {
    std::size_t j = i;
    while (j < sorted_tail.size() && sorted_tail[j] == sorted_tail[i]) ++j;
    double emp = static_cast<double>(sorted_tail.size() - i) / n;
    double model =
        hurwitz_zeta(alpha, static_cast<double>(sorted_tail[i])) / z0;
    d = std::max(d, std::abs(emp - model));
    i = j;
  }
  return d;
}

TailFit fit_at(const std::vector<int>& sorted_values, int k_min) {
  auto lo = std::lower_bound(sorted_values.begin(), sorted_values.end(), k_min);
  std::vector<int> tail(lo, sorted_values.end());
  if (tail.size() < 100) throw netstats_error("tail has fewer than 100 points");
  double sum_log = 0.0;
  for (int v : tail) sum_log += std::log(static_cast<double>(v));
  TailFit fit;
  fit.k_min = k_min;
  fit.n_tail = tail.size();
  fit.exponent = mle_alpha(sum_log, tail.size(), k_min);
  // Asymptotic SE from the observed Fisher information (numeric second
  // derivative of the per-point NLL).
  const double h = 1e-4;
  double d2 = (tail_nll(fit.exponent + h, sum_log, tail.size(), k_min) -
               2.0 * tail_nll(fit.exponent, sum_log, tail.size(), k_min) +
               tail_nll(fit.exponent - h, sum_log, tail.size(), k_min)) /
              (h * h);
  double se = d2 > 0.0 ? 1.0 / std::sqrt(d2)
                       : (fit.exponent - 1.0) / std::sqrt(static_cast<double>(tail.size()));
  fit.ci_lo = fit.exponent - 1.6448536269514722 * se;
  fit.ci_hi = fit.exponent + 1.6448536269514722 * se;
  return fit;
}

}  // namespace

TailFit fit_tail_exponent(const std::vector<int>& values,
                          std::optional<int> k_min) {
  std::vector<int> v;
  v.reserve(values.size());
  for (int x : values)
    if (x >= 1) v.push_back(x);
  std::sort(v.begin(), v.end());
  if (v.empty() || v.front() == v.back())
    throw netstats_error("degenerate sample: no tail to fit");

  if (k_min) return fit_at(v, *k_min);

  // Scan candidate k_min over distinct values, keep the fit with the smallest
  // KS distance between empirical and fitted tail.
  std::optional<TailFit> best;
  double best_ks = 0.0;
  int prev = -1;
  for (int x : v) {
    if (x == prev) continue;
    prev = x;
    auto lo = std::lower_bound(v.begin(), v.end(), x);
    if (static_cast<std::size_t>(v.end() - lo) < 100) break;
    TailFit f = fit_at(v, x);
    std::vector<int> tail(lo, v.end());
    double d = ks_distance(tail, f.exponent, x);
    if (!best || d < best_ks) {
      best = f;
      best_ks = d;
    }
  }
  if (!best) throw netstats_error("no k_min with >= 100 tail points");
  return *best;
}

std::vector<double> degree_bin_edges(int max_degree) {
  std::vector<double> edges;
  for (int k = 1; k <= std::min(10, max_degree); ++k)
    edges.push_back(static_cast<double>(k));
  double e = 11.0;
  const double ratio = 1.35;
  while (e <= max_degree) {
    edges.push_back(std::floor(e));
    double next = std::floor(e * ratio);
    e = next > std::floor(e) ? next : std::floor(e) + 1;
  }
  return edges;
}

namespace {

// Undirected projection: deduplicated neighbor lists, indexed by firm id.
std::vector<std::vector<FirmId>> undirected_adjacency(const Network& net) {
  std::vector<std::vector<FirmId>> adj(
      static_cast<std::size_t>(net.id_bound()));
  for (FirmId f : net.live_firms()) {
    auto& nb = adj[static_cast<std::size_t>(f)];
    const auto& in = net.suppliers_of(f);
    const auto& out = net.customers_of(f);
    nb.reserve(in.size() + out.size());
    std::merge(in.begin(), in.end(), out.begin(), out.end(),
               std::back_inserter(nb));
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return adj;
}

BinnedCurve bin_by_degree(const std::vector<std::pair<int, double>>& samples) {
  int max_deg = 1;
  for (const auto& [k, v] : samples) max_deg = std::max(max_deg, k);
  std::vector<double> edges = degree_bin_edges(max_deg);
  BinnedCurve c;
  c.bin_lo = edges;
  c.mean.assign(edges.size(), 0.0);
  c.std_err.assign(edges.size(), 0.0);
  c.count.assign(edges.size(), 0);
  std::vector<double> sum(edges.size(), 0.0), sum2(edges.size(), 0.0);
  for (const auto& [k, v] : samples) {
    auto it = std::upper_bound(edges.begin(), edges.end(),
                               static_cast<double>(k));
    if (it == edges.begin()) continue;
    std::size_t b = static_cast<std::size_t>(it - edges.begin()) - 1;
    sum[b] += v;
    sum2[b] += v * v;
    ++c.count[b];
  }
  for (std::size_t b = 0; b < edges.size(); ++b) {
    if (c.count[b] == 0) continue;
    double n = static_cast<double>(c.count[b]);
    c.mean[b] = sum[b] / n;
    double var = n > 1 ? (sum2[b] - n * c.mean[b] * c.mean[b]) / (n - 1) : 0.0;
    c.std_err[b] = n > 1 ? std::sqrt(std::max(0.0, var) / n) : 0.0;
  }
  return c;
}

}  // namespace

std::vector<std::pair<int, double>> knn_per_node(const Network& net) {
  auto adj = undirected_adjacency(net);
  std::vector<std::pair<int, double>> out;
  for (FirmId f : net.live_firms()) {
    const auto& nb = adj[static_cast<std::size_t>(f)];
    if (nb.empty()) continue;  // isolated nodes skipped
    double s = 0.0;
    for (FirmId j : nb) s += static_cast<double>(adj[static_cast<std::size_t>(j)].size());
    out.emplace_back(static_cast<int>(nb.size()), s / nb.size());
  }
  return out;
}

std::vector<std::pair<int, double>> clustering_per_node(const Network& net) {
  auto adj = undirected_adjacency(net);
  std::vector<std::pair<int, double>> out;
  for (FirmId f : net.live_firms()) {
    const auto& nb = adj[static_cast<std::size_t>(f)];
    const std::size_t d = nb.size();
    if (d < 2) continue;
    std::int64_t wedges = 0;  // ordered neighbor pairs that are connected
    for (FirmId j : nb) {
      const auto& nbj = adj[static_cast<std::size_t>(j)];
      // |nb ∩ nbj| by merge walk (both sorted).
      std::size_t a = 0, b = 0;
      while (a < nb.size() && b < nbj.size()) {
        if (nb[a] < nbj[b])
          ++a;
        else if (nbj[b] < nb[a])
          ++b;
        else {
          ++wedges;
          ++a;
          ++b;
        }
      }
    }
    double triangles = static_cast<double>(wedges) / 2.0;
    double c = 2.0 * triangles / (static_cast<double>(d) * (d - 1));
    out.emplace_back(static_cast<int>(d), c);
  }
  return out;
}

BinnedCurve knn_curve(const Network& net) {
  if (net.num_firms() < 2) throw netstats_error("knn needs >= 2 firms");
  return bin_by_degree(knn_per_node(net));
}

BinnedCurve clustering_curve(const Network& net) {
  if (net.num_firms() < 3) throw netstats_error("clustering needs >= 3 firms");
  return bin_by_degree(clustering_per_node(net));
}

double trailing_variance(const std::vector<std::int64_t>& series,
                         std::size_t window) {
  if (window > series.size() || window < 2)
    throw netstats_error("variance window larger than series (or < 2)");
  auto begin = series.end() - static_cast<std::ptrdiff_t>(window);
  double mean = std::accumulate(begin, series.end(), 0.0) / window;
  double ss = 0.0;
  for (auto it = begin; it != series.end(); ++it) {
    double d = static_cast<double>(*it) - mean;
    ss += d * d;
  }
  return ss / (window - 1);
}

SnapshotStats compute_stats(const Network& net) {
  SnapshotStats st;
  st.n_firms = net.num_firms();
  st.n_edges = net.num_edges();
  if (st.n_firms > 0)
    st.mean_degree = 2.0 * static_cast<double>(st.n_edges) / st.n_firms;

  std::vector<int> k_tot, k_in, k_out;
  for (FirmId f : net.live_firms()) {
    k_tot.push_back(net.degree(f));
    k_in.push_back(net.k_in(f));
    k_out.push_back(net.k_out(f));
  }
  if (!k_tot.empty()) {
    st.ccdf_total = ccdf(k_tot);
    st.ccdf_in = ccdf(k_in);
    st.ccdf_out = ccdf(k_out);
  }
  try {
    st.tail_in = fit_tail_exponent(k_in);
  } catch (const netstats_error&) {
  }
  try {
    st.tail_out = fit_tail_exponent(k_out);
  } catch (const netstats_error&) {
  }
  if (net.num_firms() >= 2) st.knn = knn_curve(net);
  if (net.num_firms() >= 3) st.clustering = clustering_curve(net);
  return st;
}

}  // namespace scn
