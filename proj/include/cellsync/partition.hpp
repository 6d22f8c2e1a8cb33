#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cellsync {

using ClassId = std::uint32_t;

/// An equivalence relation on cells {0..n-1}, stored as a restricted-growth
/// assignment: class ids appear in order of first occurrence starting at 0.
/// Classes are therefore ordered by their minimal cell.
class Partition {
 public:
  Partition() = default;

  /// Canonicalizes an arbitrary labeling (equal labels = same class).
  template <typename Label>
  static Partition from_labels(std::span<const Label> labels) {
    Partition p;
    p.assignment_.resize(labels.size());
    std::unordered_map<Label, ClassId> ids;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] = ids.try_emplace(labels[i], static_cast<ClassId>(ids.size()));
      p.assignment_[i] = it->second;
    }
    p.rank_ = ids.size();
    return p;
  }
  template <typename Label>
  static Partition from_labels(const std::vector<Label>& labels) {
    return from_labels(std::span<const Label>(labels));
  }

  /// Wraps an assignment that must already be in restricted-growth form.
  static Partition from_restricted_growth(std::vector<ClassId> assignment) {
    if (!is_restricted_growth(assignment))
      throw std::invalid_argument("Partition: assignment is not a restricted-growth string");
    Partition p;
    p.rank_ = 0;
    for (ClassId c : assignment) p.rank_ = std::max<std::size_t>(p.rank_, c + 1);
    p.assignment_ = std::move(assignment);
    return p;
  }

  /// (1)(2)...(n)
  static Partition discrete(std::size_t n) {
    std::vector<ClassId> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<ClassId>(i);
    Partition p;
    p.assignment_ = std::move(a);
    p.rank_ = n;
    return p;
  }

  /// (12...n)
  static Partition single_class(std::size_t n) {
    Partition p;
    p.assignment_.assign(n, 0);
    p.rank_ = n == 0 ? 0 : 1;
    return p;
  }

  static bool is_restricted_growth(std::span<const ClassId> a) {
    ClassId next = 0;
    for (ClassId c : a) {
      if (c > next) return false;
      if (c == next) ++next;
    }
    return true;
  }

  std::size_t size() const noexcept { return assignment_.size(); }
  std::size_t rank() const noexcept { return rank_; }
  ClassId class_of(std::size_t cell) const { return assignment_[cell]; }
  const std::vector<ClassId>& assignment() const noexcept { return assignment_; }

  bool is_discrete() const noexcept { return rank_ == assignment_.size(); }

  /// Members of each class, classes ordered by minimal cell, members ascending.
  std::vector<std::vector<std::size_t>> classes() const {
    std::vector<std::vector<std::size_t>> out(rank_);
    for (std::size_t i = 0; i < assignment_.size(); ++i) out[assignment_[i]].push_back(i);
    return out;
  }

  /// Minimal cell of each class.
  std::vector<std::size_t> representatives() const {
    std::vector<std::size_t> reps(rank_, 0);
    std::vector<bool> seen(rank_, false);
    for (std::size_t i = 0; i < assignment_.size(); ++i)
      if (!seen[assignment_[i]]) {
        seen[assignment_[i]] = true;
        reps[assignment_[i]] = i;
      }
    return reps;
  }

  /// Class sizes; entry s-1 counts the classes of size s (the shape [1^a1 2^a2 ...]).
  std::vector<std::size_t> shape() const {
    std::vector<std::size_t> sizes(rank_, 0), alpha(assignment_.size(), 0);
    for (ClassId c : assignment_) ++sizes[c];
    for (std::size_t s : sizes) ++alpha[s - 1];
    return alpha;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<ClassId> assignment_;
  std::size_t rank_ = 0;
};

/// Lattice order: rank ascending, then restricted-growth lexicographic.
struct RankOrder {
  bool operator()(const Partition& a, const Partition& b) const {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.assignment() < b.assignment();
  }
};

/// True iff every class of `p` lies inside a class of `q` (non-strict).
inline bool refines(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) throw std::invalid_argument("refines: partitions over different cell counts");
  if (p.rank() < q.rank()) return false;
  constexpr ClassId kUnset = ~ClassId{0};
  std::vector<ClassId> image(p.rank(), kUnset);
  for (std::size_t i = 0; i < p.size(); ++i) {
    ClassId& target = image[p.class_of(i)];
    if (target == kUnset)
      target = q.class_of(i);
    else if (target != q.class_of(i))
      return false;
  }
  return true;
}

inline bool strictly_refines(const Partition& p, const Partition& q) {
  return p.rank() != q.rank() && refines(p, q);
}

/// Normal-form cycle notation with 1-indexed cells: classes by minimal
/// cell, members ascending. Cells are concatenated when n <= 9 and
/// comma-separated otherwise.
inline std::string to_normal_form(const Partition& p) {
  const bool separated = p.size() > 9;
  std::string out;
  for (const auto& cls : p.classes()) {
    out += '(';
    for (std::size_t k = 0; k < cls.size(); ++k) {
      if (separated && k > 0) out += ',';
      out += std::to_string(cls[k] + 1);
    }
    out += ')';
  }
  return out;
}

class PartitionSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses cycle notation over cells 1..n. Separators inside a class may be
/// commas or whitespace; with n <= 9 cells may also be written as a run of
/// digits ("(124)"). Classes may come in any order.
inline Partition parse_partition(std::string_view text, std::size_t n) {
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kUnassigned);
  std::size_t next_class = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw PartitionSyntaxError("partition \"" + std::string(text) + "\": " + what);
  };
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto assign = [&](std::size_t cell) {
    if (cell < 1 || cell > n) fail("cell " + std::to_string(cell) + " out of range 1.." + std::to_string(n));
    if (label[cell - 1] != kUnassigned) fail("duplicate cell " + std::to_string(cell));
    label[cell - 1] = next_class;
  };

  skip_space();
  if (pos == text.size()) fail("empty");
  while (true) {
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != '(') fail("expected '(' at offset " + std::to_string(pos));
    ++pos;
    std::size_t members = 0;
    bool need_separator = false;
    while (true) {
      skip_space();
      if (pos == text.size()) fail("unterminated class");
      const char c = text[pos];
      if (c == ')') {
        if (members > 0 && !need_separator) fail("trailing ',' in class");
        ++pos;
        break;
      }
      if (c == ',') {
        if (!need_separator) fail("misplaced ',' at offset " + std::to_string(pos));
        need_separator = false;
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) fail(std::string("unexpected character '") + c + "'");
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      const std::string_view token = text.substr(start, pos - start);
      if (n <= 9) {
        for (char d : token) assign(static_cast<std::size_t>(d - '0'));
        members += token.size();
      } else {
        if (token.size() > 9) fail("cell index too large");
        assign(std::stoull(std::string(token)));
        ++members;
      }
      need_separator = true;
    }
    if (members == 0) fail("empty class");
    ++next_class;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (label[i] == kUnassigned) fail("missing cell " + std::to_string(i + 1));
  return Partition::from_labels(label);
}

}  // namespace cellsync
