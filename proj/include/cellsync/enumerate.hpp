#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cellsync/partition.hpp"

namespace cellsync {

/// Index into an enumeration. Counts saturate at kSaturated.
using EnumIndex = std::uint64_t;
inline constexpr EnumIndex kSaturated = std::numeric_limits<EnumIndex>::max();

namespace detail {

inline EnumIndex sat_add(EnumIndex a, EnumIndex b) { return a > kSaturated - b ? kSaturated : a + b; }
inline EnumIndex sat_mul(EnumIndex a, EnumIndex b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

/// completions(r, m): number of ways to extend a restricted-growth prefix
/// that already uses m classes by r more positions.
class CompletionTable {
 public:
  explicit CompletionTable(std::size_t length) : length_(length) {
    const std::size_t dim = length + 2;
    table_.assign(dim * dim, 0);
    for (std::size_t m = 0; m < dim; ++m) at(0, m) = 1;
    for (std::size_t r = 1; r <= length; ++r)
      for (std::size_t m = 0; m + 1 < dim; ++m) at(r, m) = sat_add(sat_mul(m, at(r - 1, m)), at(r - 1, m + 1));
  }
  EnumIndex operator()(std::size_t r, std::size_t m) const { return table_[r * (length_ + 2) + m]; }

 private:
  EnumIndex& at(std::size_t r, std::size_t m) { return table_[r * (length_ + 2) + m]; }
  std::size_t length_;
  std::vector<EnumIndex> table_;
};

/// A restricted-growth string stepped in lexicographic order.
class RestrictedGrowthString {
 public:
  explicit RestrictedGrowthString(std::size_t length) : digits_(length, 0), prefix_max_(length, 0) {}

  std::size_t length() const noexcept { return digits_.size(); }
  const std::vector<ClassId>& digits() const noexcept { return digits_; }

  void reset() {
    std::fill(digits_.begin(), digits_.end(), 0);
    std::fill(prefix_max_.begin(), prefix_max_.end(), 0);
  }

  /// Moves to the successor; returns false (and resets) after the last string.
  bool advance() {
    for (std::size_t t = digits_.size(); t-- > 1;) {
      // digit t may take values 0..prefix_max_[t-1]+1
      if (digits_[t] <= prefix_max_[t - 1]) {
        ++digits_[t];
        prefix_max_[t] = std::max(prefix_max_[t - 1], digits_[t]);
        for (std::size_t u = t + 1; u < digits_.size(); ++u) {
          digits_[u] = 0;
          prefix_max_[u] = prefix_max_[t];
        }
        return true;
      }
    }
    reset();
    return false;
  }

  /// Sets the string to the one at `index` in lexicographic order.
  void seek(EnumIndex index, const CompletionTable& table) {
    const std::size_t len = digits_.size();
    if (len == 0) return;
    digits_[0] = 0;
    prefix_max_[0] = 0;
    std::size_t used = 1;
    for (std::size_t t = 1; t < len; ++t) {
      const std::size_t remaining = len - t - 1;
      ClassId v = 0;
      for (;; ++v) {
        const std::size_t used_after = std::max<std::size_t>(used, v + 1);
        const EnumIndex block = table(remaining, used_after);
        if (index < block || v == used) break;
        index -= block;
      }
      digits_[t] = v;
      used = std::max<std::size_t>(used, v + 1);
      prefix_max_[t] = static_cast<ClassId>(used - 1);
    }
  }

 private:
  std::vector<ClassId> digits_;
  std::vector<ClassId> prefix_max_;
};

}  // namespace detail

/// Bell number B(n), saturating.
inline EnumIndex bell_number(std::size_t n) {
  if (n == 0) return 1;
  return detail::CompletionTable(n)(n - 1, 1);
}

/// The set of all partitions refining a base partition, realized as the
/// product of independent set partitions of each base class. Indices run
/// in mixed-radix order with the last base class varying fastest; within a
/// class, sub-partitions follow restricted-growth lexicographic order.
///
/// With base = single_class(n) this is the list of all Bell(n) partitions of
/// n cells in restricted-growth lexicographic order.
class RefinementSpace {
 public:
  explicit RefinementSpace(const Partition& base) : n_(base.size()), blocks_(base.classes()) {
    std::size_t longest = 0;
    for (const auto& b : blocks_) longest = std::max(longest, b.size());
    table_ = detail::CompletionTable(longest);
    radices_.reserve(blocks_.size());
    size_ = 1;
    for (const auto& b : blocks_) {
      radices_.push_back(table_(b.size() - 1, 1));
      size_ = detail::sat_mul(size_, radices_.back());
    }
  }

  std::size_t cells() const noexcept { return n_; }
  /// Number of refinements (product of Bell numbers of class sizes), saturating.
  EnumIndex size() const noexcept { return size_; }

  class Cursor {
   public:
    const Partition& operator*() const noexcept { return current_; }
    const Partition* operator->() const noexcept { return &current_; }
    EnumIndex index() const noexcept { return index_; }
    bool done() const noexcept { return index_ >= space_->size_; }

    /// Steps to the next refinement; returns false once past the end.
    bool advance() {
      ++index_;
      if (done()) return false;
      for (std::size_t b = strings_.size(); b-- > 0;)
        if (strings_[b].advance()) break;
      rebuild();
      return true;
    }

   private:
    friend class RefinementSpace;
    Cursor(const RefinementSpace& space, EnumIndex index) : space_(&space), index_(index) {
      strings_.reserve(space.blocks_.size());
      for (const auto& b : space.blocks_) strings_.emplace_back(b.size());
      if (done()) return;
      EnumIndex rest = index;
      for (std::size_t b = strings_.size(); b-- > 0;) {
        const EnumIndex radix = space.radices_[b];
        strings_[b].seek(rest % radix, space.table_);
        rest /= radix;
      }
      rebuild();
    }

    void rebuild() {
      constexpr ClassId kUnset = ~ClassId{0};
      labels_.resize(space_->n_);
      std::size_t offset = 0;
      for (std::size_t b = 0; b < strings_.size(); ++b) {
        const auto& members = space_->blocks_[b];
        const auto& digits = strings_[b].digits();
        ClassId local_max = 0;
        for (std::size_t t = 0; t < members.size(); ++t) {
          labels_[members[t]] = offset + digits[t];
          local_max = std::max(local_max, digits[t]);
        }
        offset += local_max + 1;
      }
      // relabel into restricted-growth form
      remap_.assign(space_->n_, kUnset);
      rg_.resize(space_->n_);
      ClassId next = 0;
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        ClassId& id = remap_[labels_[i]];
        if (id == kUnset) id = next++;
        rg_[i] = id;
      }
      current_ = Partition::from_restricted_growth(rg_);
    }

    const RefinementSpace* space_;
    EnumIndex index_;
    std::vector<detail::RestrictedGrowthString> strings_;
    std::vector<std::size_t> labels_;
    std::vector<ClassId> remap_;
    std::vector<ClassId> rg_;
    Partition current_;
  };

  /// Cursor positioned at `index` (may equal size() for an exhausted cursor).
  Cursor at(EnumIndex index) const { return Cursor(*this, index); }

  /// Partition at `index`.
  Partition operator[](EnumIndex index) const {
    if (index >= size_) throw std::out_of_range("RefinementSpace: index out of range");
    return *at(index);
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Partition*;
    using reference = const Partition&;

    iterator() = default;
    reference operator*() const { return **cursor_; }
    pointer operator->() const { return &**cursor_; }
    iterator& operator++() {
      cursor_->advance();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) { return !it.cursor_ || it.cursor_->done(); }

   private:
    friend class RefinementSpace;
    explicit iterator(Cursor c) : cursor_(std::make_shared<Cursor>(std::move(c))) {}
    std::shared_ptr<Cursor> cursor_;
  };

  iterator begin() const { return iterator(at(0)); }
  std::default_sentinel_t end() const { return {}; }

 private:
  std::size_t n_;
  std::vector<std::vector<std::size_t>> blocks_;
  detail::CompletionTable table_{0};
  std::vector<EnumIndex> radices_;
  EnumIndex size_ = 1;
};

/// Every set partition of n cells, lazily, in restricted-growth lexicographic order.
inline RefinementSpace enumerate_all(std::size_t n) {
  if (n == 0) throw std::invalid_argument("enumerate_all: need at least one cell");
  return RefinementSpace(Partition::single_class(n));
}

/// Every partition refining `base`, lazily, in mixed-radix order.
inline RefinementSpace enumerate_refinements(const Partition& base) { return RefinementSpace(base); }

}  // namespace cellsync
