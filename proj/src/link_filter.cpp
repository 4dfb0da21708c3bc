#include "scn/link_filter.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace scn {

std::vector<LinkInterval> stable_spans_for_pair(FirmId supplier, FirmId buyer,
                                                std::vector<int> months) {
  std::sort(months.begin(), months.end());
  months.erase(std::unique(months.begin(), months.end()), months.end());

  std::vector<LinkInterval> out;
  if (months.size() < 3) return out;

  // Slide a 6-month window anchored at each transaction month. Any alignment
  // with >= 3 transaction months marks the span between its first and last
  // covered transaction month as active.
  std::vector<std::pair<int, int>> spans;  // [first_tx, last_tx] inclusive
  const int n = static_cast<int>(months.size());
  int lo = 0;
  for (int hi = 0; hi < n; ++hi) {
    // Window ending anchored so that months[hi] is the last member:
    // consider all windows [w, w+5] with months[hi] inside. Equivalent: for
    // each hi, find the smallest lo with months[hi] - months[lo] <= 5.
    while (months[hi] - months[lo] > 5) ++lo;
    if (hi - lo + 1 >= 3) spans.emplace_back(months[lo], months[hi]);
  }
  if (spans.empty()) return out;

  // Merge overlapping or adjacent active spans into maximal runs.
  int cur_lo = spans[0].first, cur_hi = spans[0].second;
  auto flush = [&]() {
    out.push_back({supplier, buyer, cur_lo, cur_hi + 1});
  };
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first <= cur_hi + 1) {
      cur_hi = std::max(cur_hi, spans[i].second);
    } else {
      flush();
      cur_lo = spans[i].first;
      cur_hi = spans[i].second;
    }
  }
  flush();
  return out;
}

std::vector<LinkInterval> filter_stable_links(
    const std::vector<TransactionRecord>& transactions) {
  std::map<std::pair<FirmId, FirmId>, std::vector<int>> by_pair;
  for (const auto& tr : transactions) {
    by_pair[{tr.supplier, tr.buyer}].push_back(tr.month);
  }
  std::vector<LinkInterval> out;
  for (auto& [pair, months] : by_pair) {
    auto spans = stable_spans_for_pair(pair.first, pair.second, std::move(months));
    out.insert(out.end(), spans.begin(), spans.end());
  }
  return out;
}

ActivityTimeline activity_timeline(const std::vector<LinkInterval>& intervals,
                                   int t0, int t1) {
  ActivityTimeline tl;
  tl.t0 = t0;
  const int len = std::max(0, t1 - t0);
  tl.links.assign(static_cast<std::size_t>(len), 0);
  tl.firms.assign(static_cast<std::size_t>(len), 0);
  if (len == 0) return tl;

  for (const auto& iv : intervals) {
    for (int t = std::max(t0, iv.entry_month);
         t < std::min(t1, iv.exit_month); ++t) {
      ++tl.links[static_cast<std::size_t>(t - t0)];
    }
  }

  // Firm span: first overall occurrence to last overall occurrence across all
  // intervals the firm is incident to (either side).
  std::map<FirmId, std::pair<int, int>> span;
  for (const auto& iv : intervals) {
    for (FirmId f : {iv.supplier, iv.buyer}) {
      auto [it, fresh] = span.emplace(f, std::make_pair(iv.entry_month, iv.exit_month));
      if (!fresh) {
        it->second.first = std::min(it->second.first, iv.entry_month);
        it->second.second = std::max(it->second.second, iv.exit_month);
      }
    }
  }
  for (const auto& [f, se] : span) {
    for (int t = std::max(t0, se.first); t < std::min(t1, se.second); ++t) {
      ++tl.firms[static_cast<std::size_t>(t - t0)];
    }
  }
  return tl;
}

}  // namespace scn
