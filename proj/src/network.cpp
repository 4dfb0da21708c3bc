#include "scn/network.hpp"

#include <algorithm>

namespace scn {

namespace {

bool sorted_contains(const std::vector<FirmId>& v, FirmId x) {
  return std::binary_search(v.begin(), v.end(), x);
}

void sorted_insert(std::vector<FirmId>& v, FirmId x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<FirmId>& v, FirmId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

FirmId Network::add_firm(SectorId sector) {
  if (sector < 0 || sector >= sector_count())
    throw network_error("sector out of range: " + std::to_string(sector));
  FirmId id = static_cast<FirmId>(firms_.size());
  Firm f;
  f.sector = sector;
  f.live = true;
  firms_.push_back(std::move(f));
  ++sector_counts_[static_cast<std::size_t>(sector)];
  ++n_live_;
  return id;
}

bool Network::add_edge(FirmId supplier, FirmId buyer) {
  Firm& s = firm(supplier);
  Firm& b = firm(buyer);
  if (supplier == buyer) return false;
  if (sorted_contains(s.out, buyer)) return false;
  sorted_insert(s.out, buyer);
  sorted_insert(b.in, supplier);
  ++n_edges_;
  return true;
}

bool Network::remove_edge(FirmId supplier, FirmId buyer) {
  Firm& s = firm(supplier);
  Firm& b = firm(buyer);
  if (!sorted_contains(s.out, buyer)) return false;
  sorted_erase(s.out, buyer);
  sorted_erase(b.in, supplier);
  --n_edges_;
  return true;
}

bool Network::has_edge(FirmId supplier, FirmId buyer) const {
  return sorted_contains(firm(supplier).out, buyer);
}

std::size_t Network::remove_firm(FirmId id) {
  Firm& f = firm(id);
  std::size_t removed = f.in.size() + f.out.size();
  for (FirmId sup : f.in) {
    sorted_erase(firms_[static_cast<std::size_t>(sup)].out, id);
  }
  for (FirmId buy : f.out) {
    sorted_erase(firms_[static_cast<std::size_t>(buy)].in, id);
  }
  n_edges_ -= static_cast<std::int64_t>(removed);
  --sector_counts_[static_cast<std::size_t>(f.sector)];
  --n_live_;
  f.live = false;
  f.in.clear();
  f.in.shrink_to_fit();
  f.out.clear();
  f.out.shrink_to_fit();
  return removed;
}

std::vector<FirmId> Network::isolated_firms() const {
  std::vector<FirmId> out;
  for (std::size_t i = 0; i < firms_.size(); ++i) {
    if (firms_[i].live && firms_[i].in.empty() && firms_[i].out.empty())
      out.push_back(static_cast<FirmId>(i));
  }
  return out;
}

std::vector<FirmId> Network::live_firms() const {
  std::vector<FirmId> out;
  out.reserve(static_cast<std::size_t>(n_live_));
  for (std::size_t i = 0; i < firms_.size(); ++i) {
    if (firms_[i].live) out.push_back(static_cast<FirmId>(i));
  }
  return out;
}

}  // namespace scn
