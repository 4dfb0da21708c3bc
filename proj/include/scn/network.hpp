#ifndef SCN_NETWORK_HPP
#define SCN_NETWORK_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scn {

using FirmId = std::int64_t;
using SectorId = int;

class network_error : public std::runtime_error {
 public:
  explicit network_error(const std::string& what) : std::runtime_error(what) {}
};

/// Directed graph of firms with sector labels and cached degrees.
///
/// FirmIds are assigned sequentially and never reused within a run, so a
/// removed firm leaves a dead slot behind. Adjacency lists are kept sorted;
/// duplicate edges and self-loops are rejected.
class Network {
 public:
  explicit Network(int sector_count)
      : sector_counts_(static_cast<std::size_t>(sector_count), 0) {
    if (sector_count <= 0) throw network_error("sector_count must be positive");
  }

  FirmId add_firm(SectorId sector);
  /// Inserts supplier -> buyer. Returns false for self-loops and duplicates.
  bool add_edge(FirmId supplier, FirmId buyer);
  bool remove_edge(FirmId supplier, FirmId buyer);
  /// Removes the firm and all incident edges; returns the number of edges removed.
  std::size_t remove_firm(FirmId id);

  bool has_edge(FirmId supplier, FirmId buyer) const;
  bool live(FirmId id) const {
    return id >= 0 && id < static_cast<FirmId>(firms_.size()) &&
           firms_[static_cast<std::size_t>(id)].live;
  }

  SectorId sector(FirmId id) const { return firm(id).sector; }
  int k_in(FirmId id) const { return static_cast<int>(firm(id).in.size()); }
  int k_out(FirmId id) const { return static_cast<int>(firm(id).out.size()); }
  int degree(FirmId id) const { return k_in(id) + k_out(id); }

  const std::vector<FirmId>& suppliers_of(FirmId id) const { return firm(id).in; }
  const std::vector<FirmId>& customers_of(FirmId id) const { return firm(id).out; }

  std::int64_t num_firms() const { return n_live_; }
  std::int64_t num_edges() const { return n_edges_; }
  int sector_count() const { return static_cast<int>(sector_counts_.size()); }
  std::int64_t firms_in_sector(SectorId s) const {
    return sector_counts_.at(static_cast<std::size_t>(s));
  }

  /// Live firms with degree zero.
  std::vector<FirmId> isolated_firms() const;
  /// Live firm ids in ascending order.
  std::vector<FirmId> live_firms() const;
  /// Upper bound on firm ids ever issued (dead slots included).
  FirmId id_bound() const { return static_cast<FirmId>(firms_.size()); }

  int month() const { return month_; }
  void set_month(int t) { month_ = t; }

 private:
  struct Firm {
    SectorId sector = 0;
    bool live = false;
    std::vector<FirmId> in;   // suppliers, sorted
    std::vector<FirmId> out;  // buyers, sorted
  };

  const Firm& firm(FirmId id) const {
    if (!live(id)) throw network_error("unknown firm id " + std::to_string(id));
    return firms_[static_cast<std::size_t>(id)];
  }
  Firm& firm(FirmId id) {
    if (!live(id)) throw network_error("unknown firm id " + std::to_string(id));
    return firms_[static_cast<std::size_t>(id)];
  }

  std::vector<Firm> firms_;
  std::vector<std::int64_t> sector_counts_;
  std::int64_t n_live_ = 0;
  std::int64_t n_edges_ = 0;
  int month_ = 0;
};

}  // namespace scn

#endif
