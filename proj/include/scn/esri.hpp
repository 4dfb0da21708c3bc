#ifndef SCN_ESRI_HPP
#define SCN_ESRI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "scn/network.hpp"

namespace scn {

enum class InputClass { NotUsed, NonEssential, Essential };

/// e[input_sector][firm_sector]: how a firm in `firm_sector` depends on
/// inputs sourced from `input_sector`.
struct EssentialnessTable {
  int sector_count = 0;
  std::vector<std::vector<InputClass>> e;

  InputClass at(int input_sector, int firm_sector) const {
    return e[static_cast<std::size_t>(input_sector)]
            [static_cast<std::size_t>(firm_sector)];
  }
  static EssentialnessTable uniform(int sector_count, InputClass c);
  /// Default pattern: goods inputs (agriculture, mining, manufacturing,
  /// energy, water, indexes 0..4) are essential to every sector; services
  /// are non-essential. Shipped as data/essentialness_default.csv.
  static EssentialnessTable survey_default(int sector_count);
};

struct EsriEntry {
  FirmId firm = 0;
  double esri = 0.0;
  bool converged = true;
};

/// Rank-ordered (descending) ESRI values for every live firm.
struct EsriProfile {
  std::vector<EsriEntry> entries;
};

/// Immediate relative production loss caused by each firm's default.
/// Each firm carries a supply level (generalized Leontief: minimum in-link
/// fraction over essential input sectors, weighted by suppliers' supply
/// levels, times the mean fraction over non-essential used sectors) and a
/// demand level (out-link fraction weighted by customers' realized
/// production psi = min(supply, demand)). Supply shocks travel downstream,
/// realized-production shocks travel upstream as lost demand; a
/// demand-constrained supplier still delivers in full. Both levels are
/// monotone non-increasing, so the fixed point is reached by worklist
/// relaxation.
EsriProfile compute_esri(const Network& net, const EssentialnessTable& ess,
                         double tol = 1e-6, int max_iter = 1000,
                         int threads = 0);

/// Production levels after the default of `source` (for oracle tests).
/// Returned vector is indexed by firm id; dead slots hold 1.
std::vector<double> esri_cascade(const Network& net,
                                 const EssentialnessTable& ess, FirmId source,
                                 double tol = 1e-6, int max_iter = 1000);

struct ProfileComparison {
  std::vector<double> ratio;      // profile A / profile B per rank
  std::vector<double> env_min, env_max, env_mean;  // across the snapshot set
};

ProfileComparison esri_profile_compare(
    const EsriProfile& a, const EsriProfile& b,
    const std::vector<EsriProfile>& snapshot_set = {});

}  // namespace scn

#endif
