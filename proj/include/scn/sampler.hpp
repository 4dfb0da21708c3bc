#ifndef SCN_SAMPLER_HPP
#define SCN_SAMPLER_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace scn {

/// Dynamic weighted sampling over a set of integer keys, O(log n) per
/// insert / remove / reweight / draw. Backed by a Fenwick tree over slots;
/// removed slots are recycled through a free list.
class WeightedSampler {
 public:
  void insert(std::int64_t key, double w) {
    if (pos_.count(key)) throw std::logic_error("WeightedSampler: duplicate key");
    std::size_t slot;
    if (!free_.empty()) {
      slot = free_.back();
      free_.pop_back();
      keys_[slot] = key;
    } else {
      slot = keys_.size();
      // Node slot+1 covers the slot range (slot+1-lowbit, slot+1]; seed it
      // with the weights of the already-present slots in that range.
      std::size_t node = slot + 1;
      std::size_t lowbit = node & (~node + 1);
      double init = prefix_(slot) - prefix_(node - lowbit);
      keys_.push_back(key);
      weights_.push_back(0.0);
      tree_.push_back(init);
    }
    pos_[key] = slot;
    set_slot(slot, w);
  }

  void update(std::int64_t key, double w) { set_slot(pos_.at(key), w); }

  void remove(std::int64_t key) {
    auto it = pos_.find(key);
    if (it == pos_.end()) throw std::logic_error("WeightedSampler: unknown key");
    set_slot(it->second, 0.0);
    free_.push_back(it->second);
    keys_[it->second] = -1;
    pos_.erase(it);
  }

  bool contains(std::int64_t key) const { return pos_.count(key) != 0; }
  double weight(std::int64_t key) const { return weights_[pos_.at(key)]; }
  double total() const { return total_; }
  std::size_t size() const { return pos_.size(); }

  /// Draws a key with probability weight/total. Requires total() > 0.
  template <class RNG>
  std::int64_t sample(RNG& rng) const {
    if (total_ <= 0.0) throw std::logic_error("WeightedSampler: empty");
    std::uniform_real_distribution<double> u(0.0, total_);
    double target = u(rng);
    // Fenwick descent: find the first slot whose prefix sum exceeds target.
    std::size_t idx = 0;
    std::size_t mask = bit_floor_(tree_.size());
    while (mask > 0) {
      std::size_t next = idx + mask;
      if (next <= tree_.size() && tree_[next - 1] < target) {
        target -= tree_[next - 1];
        idx = next;
      }
      mask >>= 1;
    }
    if (idx >= keys_.size()) idx = keys_.size() - 1;
    // Skip over zero-weight or freed slots hit through float residue.
    while (idx > 0 && (keys_[idx] < 0 || weights_[idx] <= 0.0)) --idx;
    return keys_[idx];
  }

 private:
  // Sum of the first n slot weights via the tree.
  double prefix_(std::size_t n) const {
    double s = 0.0;
    for (std::size_t i = n; i > 0; i -= i & (~i + 1)) s += tree_[i - 1];
    return s;
  }

  static std::size_t bit_floor_(std::size_t n) {
    std::size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return n == 0 ? 0 : p;
  }

  void set_slot(std::size_t slot, double w) {
    if (w < 0.0) throw std::logic_error("WeightedSampler: negative weight");
    double delta = w - weights_[slot];
    weights_[slot] = w;
    total_ += delta;
    for (std::size_t i = slot + 1; i <= tree_.size(); i += i & (~i + 1)) {
      tree_[i - 1] += delta;
    }
    if (total_ < 0.0) total_ = 0.0;
  }

  std::vector<std::int64_t> keys_;   // slot -> key (-1 when freed)
  std::vector<double> weights_;      // slot -> weight
  std::vector<double> tree_;         // Fenwick partial sums (1-based layout)
  std::vector<std::size_t> free_;
  std::unordered_map<std::int64_t, std::size_t> pos_;
  double total_ = 0.0;
};

}  // namespace scn

#endif
