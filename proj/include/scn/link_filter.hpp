#ifndef SCN_LINK_FILTER_HPP
#define SCN_LINK_FILTER_HPP

#include <cstdint>
#include <vector>

#include "scn/network.hpp"

namespace scn {

/// One monthly VAT-style transaction row. `month` is months since an
/// arbitrary epoch (YYYY-MM parsed as year*12 + month-1 by the ingestion layer).
struct TransactionRecord {
  FirmId supplier = 0;
  FirmId buyer = 0;
  int month = 0;
  double amount = 0.0;
  bool has_amount = false;
};

/// A stable supply link, active over [entry_month, exit_month).
struct LinkInterval {
  FirmId supplier = 0;
  FirmId buyer = 0;
  int entry_month = 0;
  int exit_month = 0;
};

/// Stable-link rule: a (supplier, buyer) pair is active wherever some window of
/// six consecutive months holds at least three distinct transaction months.
/// For each satisfying window the span from its first to its last transaction
/// month is active; overlapping or adjacent spans merge. Entry is the first
/// active month, exit the month after the last covered transaction month.
/// Duplicate (pair, month) rows collapse to one transaction month.
///
/// Output is sorted by (supplier, buyer, entry_month) and independent of the
/// input ordering.
std::vector<LinkInterval> filter_stable_links(
    const std::vector<TransactionRecord>& transactions);

/// Spans of stable activity for a single pair's transaction months.
/// Exposed separately so tests can brute-force individual pairs.
std::vector<LinkInterval> stable_spans_for_pair(FirmId supplier, FirmId buyer,
                                                std::vector<int> months);

struct ActivityTimeline {
  int t0 = 0;                  // first month of the range
  std::vector<std::int64_t> links;  // L(t) for t in [t0, t0+len)
  std::vector<std::int64_t> firms;  // N(t), firm counted inside [first, last) occurrence span
};

ActivityTimeline activity_timeline(const std::vector<LinkInterval>& intervals,
                                   int t0, int t1);

}  // namespace scn

#endif
