#include "scn/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scn/engine.hpp"

namespace scn {

double SeasonalRateModel::mixture_pdf(int count) const {
  double p = 0.0;
  for (int tau = 1; tau <= 12; ++tau) {
    double lam = rate(tau);
    double logp = -lam + count * std::log(lam) - std::lgamma(count + 1.0);
    p += std::exp(logp);
  }
  return p / 12.0;
}

std::vector<double> SectorAttachmentMatrix::column(int s2) const {
  std::vector<double> col(static_cast<std::size_t>(sector_count));
  for (int s1 = 0; s1 < sector_count; ++s1) col[s1] = at(s1, s2);
  return col;
}

double EntryDegreeDistribution::mean_in() const {
  double m = 0.0;
  for (int i = 0; i <= k_cap; ++i)
    for (int o = 0; o <= k_cap; ++o) m += i * p[i][o];
  return m;
}

double EntryDegreeDistribution::mean_out() const {
  double m = 0.0;
  for (int i = 0; i <= k_cap; ++i)
    for (int o = 0; o <= k_cap; ++o) m += o * p[i][o];
  return m;
}

void ModelParams::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw calibration_error(std::string(name) + " outside [0,1]");
  };
  prob(p_node_exit, "p_node_exit");
  prob(p_remove_link, "p_remove_link");
  if (n_entry_mean < 0.0) throw calibration_error("n_entry_mean negative");
  if (alpha0 < 0.0) throw calibration_error("alpha0 negative");
  if (!sector_dist.empty()) {
    double s = std::accumulate(sector_dist.begin(), sector_dist.end(), 0.0);
    if (std::abs(s - 1.0) > 1e-9)
      throw calibration_error("sector_dist does not sum to 1");
  }
}

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw calibration_error("OLS needs >= 2 paired observations");
  const std::size_t n = x.size();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw calibration_error("OLS regressor is constant");
  OlsFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    ss_res += r * r;
  }
  double sigma2 = n > 2 ? ss_res / (n - 2) : 0.0;
  f.slope_se = std::sqrt(sigma2 / sxx);
  f.intercept_se = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
  return f;
}

SeasonalRateModel fit_seasonal_poisson(
    const std::vector<std::pair<int, double>>& monthly_counts) {
  if (monthly_counts.size() < 12)
    throw calibration_error("fit_seasonal_poisson needs >= 12 observations");
  std::vector<double> x, y;
  x.reserve(monthly_counts.size());
  y.reserve(monthly_counts.size());
  for (const auto& [month, count] : monthly_counts) {
    int moy = ((month % 12) + 12) % 12 + 1;  // 1 = January
    x.push_back(static_cast<double>(moy));
    y.push_back(count);
  }
  SeasonalRateModel m;
  try {
    OlsFit f = ols(x, y);
    m.beta0 = f.intercept;
    m.beta1 = f.slope;
  } catch (const calibration_error&) {
    // All observations in the same month-of-year: flat rate.
    m.beta0 = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    m.beta1 = 0.0;
  }
  for (int tau = 1; tau <= 12; ++tau) {
    if (m.rate(tau) <= 0.0)
      throw calibration_error("non-positive seasonal rate at month " +
                              std::to_string(tau));
  }
  return m;
}

DecayFit fit_link_decay(const std::vector<int>& lifetimes, int dt_max) {
  if (lifetimes.empty()) throw calibration_error("empty cohort");
  if (dt_max < 3) throw calibration_error("decay fit needs dt range >= 3");
  const double n0 = static_cast<double>(lifetimes.size());
  std::vector<double> xs, ys;
  for (int dt = 1; dt <= dt_max; ++dt) {
    std::size_t alive = 0;
    for (int life : lifetimes)
      if (life >= dt) ++alive;
    if (alive == 0) continue;  // log undefined, point dropped
    xs.push_back(static_cast<double>(dt));
    ys.push_back(std::log(static_cast<double>(alive) / n0));
  }
  if (xs.empty()) throw calibration_error("no usable decay points");

  // Regression through the origin: l(0) = 1 by construction.
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  DecayFit fit;
  fit.dt_max = dt_max;
  fit.lambda = std::max(0.0, -sxy / sxx);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] + fit.lambda * xs[i];
    ss_res += r * r;
  }
  double sigma2 = xs.size() > 1 ? ss_res / (xs.size() - 1) : 0.0;
  fit.lambda_se = std::sqrt(sigma2 / sxx);
  fit.survival = std::exp(-fit.lambda);
  return fit;
}

std::map<int, GroupDecayFit> fit_decay_by_group(
    const std::map<int, std::vector<int>>& cohorts, int dt_max,
    std::size_t min_group_size) {
  std::map<int, GroupDecayFit> out;
  for (const auto& [group, lifetimes] : cohorts) {
    if (lifetimes.empty()) continue;
    GroupDecayFit g;
    g.n_links = lifetimes.size();
    g.low_confidence = lifetimes.size() < min_group_size;
    g.fit = fit_link_decay(lifetimes, dt_max);
    out[group] = g;
  }
  return out;
}

namespace {

ScalingFit fit_loglog(const std::vector<double>& log_k,
                      const std::vector<double>& log_v,
                      std::optional<double> fixed_exponent) {
  ScalingFit fit;
  fit.n_points = log_k.size();
  if (fixed_exponent) {
    fit.exponent = *fixed_exponent;
    fit.exponent_lo = fit.exponent_hi = fit.exponent;
    // Intercept-only fit of log v - a*log k.
    double sum = 0.0;
    for (std::size_t i = 0; i < log_k.size(); ++i)
      sum += log_v[i] - fit.exponent * log_k[i];
    double mean = sum / log_k.size();
    double ss = 0.0;
    for (std::size_t i = 0; i < log_k.size(); ++i) {
      double r = log_v[i] - fit.exponent * log_k[i] - mean;
      ss += r * r;
    }
    double se = log_k.size() > 1
                    ? std::sqrt(ss / (log_k.size() - 1) / log_k.size())
                    : 0.0;
    fit.prefactor = std::exp(mean);
    fit.prefactor_lo = std::exp(mean - kZ90 * se);
    fit.prefactor_hi = std::exp(mean + kZ90 * se);
    return fit;
  }
  OlsFit f = ols(log_k, log_v);
  fit.exponent = f.slope;
  fit.exponent_lo = f.slope - kZ90 * f.slope_se;
  fit.exponent_hi = f.slope + kZ90 * f.slope_se;
  fit.prefactor = std::exp(f.intercept);
  fit.prefactor_lo = std::exp(f.intercept - kZ90 * f.intercept_se);
  fit.prefactor_hi = std::exp(f.intercept + kZ90 * f.intercept_se);
  return fit;
}

}  // namespace

ScalingFit fit_new_supplier_scaling(
    const std::vector<std::pair<int, double>>& events,
    std::optional<double> fixed_exponent) {
  std::map<int, std::pair<double, std::int64_t>> by_degree;  // k -> (sum, n)
  for (const auto& [k, count] : events) {
    if (k < 1) continue;
    auto& acc = by_degree[k];
    acc.first += count;
    acc.second += 1;
  }
  std::vector<double> log_k, log_v;
  for (const auto& [k, acc] : by_degree) {
    double mean = acc.first / acc.second;
    if (mean <= 0.0) continue;  // log undefined, bucket excluded
    log_k.push_back(std::log(static_cast<double>(k)));
    log_v.push_back(std::log(mean));
  }
  if (log_k.size() < 2)
    throw calibration_error(
        "fit_new_supplier_scaling needs >= 2 degree buckets with positive mean");
  return fit_loglog(log_k, log_v, fixed_exponent);
}

DegreeCensus DegreeCensus::from_network(const Network& net) {
  DegreeCensus c;
  for (FirmId f : net.live_firms()) {
    ++c.counts[{net.degree(f), net.sector(f)}];
  }
  return c;
}

ScalingFit estimate_attachment_kernel(
    const std::vector<std::pair<int, int>>& events, const DegreeCensus& census) {
  std::map<int, double> hist;  // k -> sum of 1/n(k, s)
  for (const auto& [k, s] : events) {
    std::int64_t n = census.at(k, s);
    if (n == 0)
      throw calibration_error("attachment event at (k=" + std::to_string(k) +
                              ", s=" + std::to_string(s) +
                              ") but census holds no such firm");
    hist[k] += 1.0 / static_cast<double>(n);
  }
  std::vector<double> log_k, log_v;
  for (const auto& [k, mass] : hist) {
    if (k < 1 || mass <= 0.0) continue;
    log_k.push_back(std::log(static_cast<double>(k)));
    log_v.push_back(std::log(mass));
  }
  if (log_k.size() < 2)
    throw calibration_error("attachment kernel needs >= 2 degree buckets");
  return fit_loglog(log_k, log_v, std::nullopt);
}

SectorAttachmentMatrix estimate_sector_matrix(
    const std::vector<std::pair<int, int>>& events, int sector_count) {
  SectorAttachmentMatrix m;
  m.sector_count = sector_count;
  m.pi.assign(static_cast<std::size_t>(sector_count),
              std::vector<double>(static_cast<std::size_t>(sector_count), 0.0));
  std::vector<double> col_totals(static_cast<std::size_t>(sector_count), 0.0);
  for (const auto& [s1, s2] : events) {
    m.pi.at(static_cast<std::size_t>(s1)).at(static_cast<std::size_t>(s2)) += 1.0;
    col_totals[static_cast<std::size_t>(s2)] += 1.0;
  }
  for (int s2 = 0; s2 < sector_count; ++s2) {
    if (col_totals[s2] == 0.0) {
      m.customer_sectors_without_events.push_back(s2);
      continue;
    }
    for (int s1 = 0; s1 < sector_count; ++s1) m.pi[s1][s2] /= col_totals[s2];
  }
  return m;
}

EntryDegreeDistribution estimate_entry_degrees(
    const std::vector<std::pair<int, int>>& entry_events, int k_cap) {
  EntryDegreeDistribution d;
  d.k_cap = k_cap;
  d.p.assign(static_cast<std::size_t>(k_cap) + 1,
             std::vector<double>(static_cast<std::size_t>(k_cap) + 1, 0.0));
  double total = 0.0;
  for (const auto& [kin, kout] : entry_events) {
    if (kin < 0 || kout < 0 || kin > k_cap || kout > k_cap) continue;  // truncated
    d.p[kin][kout] += 1.0;
    total += 1.0;
  }
  if (total > 0.0) {
    for (auto& row : d.p)
      for (double& v : row) v /= total;
  }
  return d;
}

double calibrate_exit_probability(double p_exit_empirical,
                                  const std::vector<double>& degree_dist,
                                  double p_remove_link) {
  if (p_remove_link < 0.0 || p_remove_link >= 1.0)
    throw calibration_error("p_remove_link outside [0,1)");
  double cascade = 0.0;
  for (std::size_t k = 0; k < degree_dist.size(); ++k) {
    cascade += degree_dist[k] * std::pow(p_remove_link, static_cast<double>(k));
  }
  double p_ex = p_exit_empirical - cascade;
  if (p_ex < 0.0)
    throw calibration_error(
        "link-removal cascade alone exceeds empirical exit rate");
  return p_ex;
}

ModelParams stationarity_adjust(const ModelParams& params,
                                const Network& current_network,
                                std::uint64_t seed, int trial_steps) {
  auto mean_delta_n = [&](double p_ex) {
    ModelParams trial = params;
    trial.p_node_exit = p_ex;
    EngineConfig cfg;
    cfg.params = trial;
    cfg.seed = seed;
    Engine eng(current_network, cfg);
    std::int64_t n0 = eng.network().num_firms();
    for (int s = 0; s < trial_steps; ++s) eng.step();
    return static_cast<double>(eng.network().num_firms() - n0) / trial_steps;
  };

  const double tol = 0.01 * std::max(params.n_entry_mean, 1.0);
  double lo = 0.0, hi = std::max(params.p_node_exit, 1e-4);
  double f_lo = mean_delta_n(lo);
  if (f_lo <= 0.0) {
    // Already shrinking with no uniform removal at all; nothing to balance.
    if (std::abs(f_lo) <= tol) {
      ModelParams out = params;
      out.p_node_exit = 0.0;
      return out;
    }
    throw calibration_error("stationarity_adjust: network shrinks even at p_node_exit = 0");
  }
  double f_hi = mean_delta_n(hi);
  int expand = 0;
  while (f_hi > 0.0) {
    if (++expand > 12)
      throw calibration_error("stationarity_adjust: failed to bracket root");
    hi = std::min(1.0, hi * 2.0);
    f_hi = mean_delta_n(hi);
  }
  double mid = hi, f_mid = f_hi;
  for (int it = 0; it < 30; ++it) {
    mid = 0.5 * (lo + hi);
    f_mid = mean_delta_n(mid);
    if (std::abs(f_mid) <= tol) break;
    if (f_mid > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  ModelParams out = params;
  out.p_node_exit = mid;
  return out;
}

}  // namespace scn
