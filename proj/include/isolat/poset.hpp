#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isolat/errors.hpp"

namespace isolat {

// Square bit matrix, row-major, 64-bit words.  Row r packed so that bit c of
// row r is word r*words + c/64, bit c%64.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

  int dim() const { return n_; }
  bool get(int r, int c) const { return (bits_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u; }
  void set(int r, int c, bool v) {
    auto& w = bits_[static_cast<std::size_t>(r) * words_ + c / 64];
    const std::uint64_t m = std::uint64_t(1) << (c % 64);
    if (v) w |= m; else w &= ~m;
  }
  std::span<const std::uint64_t> row(int r) const { return {bits_.data() + static_cast<std::size_t>(r) * words_, static_cast<std::size_t>(words_)}; }

  // row(a) subset of row(b)
  bool row_subset(int a, int b) const {
    const auto ra = row(a), rb = row(b);
    for (int w = 0; w < words_; ++w)
      if (ra[w] & ~rb[w]) return false;
    return true;
  }

  bool operator==(const BitMatrix& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Finite partially ordered set with unique string labels.  Stores both the
// up-relation (row a = everything above a) and its transpose so bound
// computations can run on whole rows.
class Poset {
 public:
  Poset() = default;

  static Poset from_leq(std::string name, std::vector<std::string> labels, BitMatrix leq) {
    Poset p;
    p.name_ = std::move(name);
    p.labels_ = std::move(labels);
    p.up_ = std::move(leq);
    p.finish(true);
    return p;
  }

  // For builders whose output order is reflexive/antisymmetric/transitive by
  // construction (products, restrictions of valid posets, ...).  Skips the
  // quadratic-and-worse order axioms; still indexes labels.
  static Poset from_leq_unchecked(std::string name, std::vector<std::string> labels, BitMatrix leq) {
    Poset p;
    p.name_ = std::move(name);
    p.labels_ = std::move(labels);
    p.up_ = std::move(leq);
    p.finish(false);
    return p;
  }

  // Order = reflexive-transitive closure of the cover pairs (x covered-by y).
  static Poset from_covers(std::string name, std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& covers) {
    const int n = static_cast<int>(labels.size());
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < n; ++i) {
      if (!idx.emplace(labels[i], i).second)
        fail(Errc::invalid_input, "duplicate element label '" + labels[i] + "'");
    }
    BitMatrix leq(n);
    for (int i = 0; i < n; ++i) leq.set(i, i, true);
    for (const auto& [lo, hi] : covers) {
      auto a = idx.find(lo), b = idx.find(hi);
      if (a == idx.end()) fail(Errc::parse_error, "unknown element '" + lo + "' in cover");
      if (b == idx.end()) fail(Errc::parse_error, "unknown element '" + hi + "' in cover");
      leq.set(a->second, b->second, true);
    }
    // Warshall closure.
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (leq.get(i, k))
          for (int j = 0; j < n; ++j)
            if (leq.get(k, j)) leq.set(i, j, true);
    return from_leq(std::move(name), std::move(labels), std::move(leq));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& name() const { return name_; }
  void rename(std::string n) { name_ = std::move(n); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int index_of(std::string_view l) const {
    auto it = index_.find(std::string(l));
    return it == index_.end() ? -1 : it->second;
  }
  int require(std::string_view l) const {
    int i = index_of(l);
    if (i < 0) fail(Errc::parse_error, "unknown element label '" + std::string(l) + "'");
    return i;
  }

  bool leq(int a, int b) const { return up_.get(a, b); }
  bool lt(int a, int b) const { return a != b && up_.get(a, b); }
  const BitMatrix& up_matrix() const { return up_; }
  const BitMatrix& down_matrix() const { return dn_; }

  // transitive reduction (x,y) with x covered by y
  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    const int n = size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!lt(x, y)) continue;
        bool direct = true;
        for (int z = 0; z < n && direct; ++z)
          if (lt(x, z) && lt(z, y)) direct = false;
        if (direct) out.emplace_back(x, y);
      }
    return out;
  }

  // indices ordered so that smaller elements come first
  std::vector<int> linear_extension() const {
    const int n = size();
    std::vector<int> below(n, 0), order(n);
    for (int x = 0; x < n; ++x) {
      order[x] = x;
      for (int y = 0; y < n; ++y)
        if (lt(y, x)) ++below[x];
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
    return order;
  }

  std::vector<int> heights() const {
    const int n = size();
    std::vector<int> h(n, 0);
    for (int x : linear_extension())
      for (int y = 0; y < n; ++y)
        if (lt(y, x)) h[x] = std::max(h[x], h[y] + 1);
    return h;
  }

  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x) {
      bool maximal = true;
      for (int y = 0; y < size() && maximal; ++y)
        if (lt(x, y)) maximal = false;
      if (maximal) out.push_back(x);
    }
    return out;
  }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x) {
      bool minimal = true;
      for (int y = 0; y < size() && minimal; ++y)
        if (lt(y, x)) minimal = false;
      if (minimal) out.push_back(x);
    }
    return out;
  }

  bool operator==(const Poset& o) const { return labels_ == o.labels_ && up_ == o.up_; }

 private:
  void finish(bool validate) {
    const int n = size();
    if (up_.dim() != n) fail(Errc::invalid_input, "order matrix dimension does not match label count");
    index_.clear();
    for (int i = 0; i < n; ++i) {
      if (labels_[i].empty()) fail(Errc::invalid_input, "empty element label");
      if (!index_.emplace(labels_[i], i).second)
        fail(Errc::invalid_input, "duplicate element label '" + labels_[i] + "'");
    }
    if (validate) {
      for (int i = 0; i < n; ++i) {
        if (!up_.get(i, i)) fail(Errc::invalid_input, "order not reflexive at '" + labels_[i] + "'");
        for (int j = 0; j < n; ++j) {
          if (!up_.get(i, j)) continue;
          if (i != j && up_.get(j, i))
            fail(Errc::invalid_input, "order not antisymmetric", {labels_[i], labels_[j]});
          if (!up_.row_subset(j, i))
            fail(Errc::invalid_input, "order not transitive", {labels_[i], labels_[j]});
        }
      }
    }
    dn_ = BitMatrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (up_.get(i, j)) dn_.set(j, i, true);
  }

  std::string name_;
  std::vector<std::string> labels_;
  BitMatrix up_, dn_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace isolat
