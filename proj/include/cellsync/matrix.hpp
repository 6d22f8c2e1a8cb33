#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace cellsync {

using Count = std::int64_t;

/// Dense row-major integer matrix. Used for per-arrow-type adjacency
/// matrices, class column sums and quotient matrices.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Count fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; all rows must have equal length.
  IntMatrix(std::initializer_list<std::initializer_list<Count>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Count& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Count operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Count> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Count> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  Count row_sum(std::size_t r) const {
    Count s = 0;
    for (Count v : row(r)) s += v;
    return s;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product shape mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Count aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Count> data_;
};

/// Square 0/1 matrix stored as packed row bitsets.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + kWordBits - 1) / kWordBits), bits_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / kWordBits] >> (j % kWordBits)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    Word& w = bits_[i * words_ + j / kWordBits];
    const Word mask = Word{1} << (j % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row_words(std::size_t i) const { return {bits_.data() + i * words_, words_}; }
  std::span<Word> row_words(std::size_t i) { return {bits_.data() + i * words_, words_}; }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (test(i, j)) t.set(j, i);
    return t;
  }

  /// True iff some k in [first, last) has test(i, k) and other.test(k, j),
  /// where `other_transposed` holds the transpose of the right operand.
  bool rows_intersect(std::size_t i, const BitMatrix& other_transposed, std::size_t j, std::size_t first,
                      std::size_t last) const {
    if (first >= last) return false;
    const auto a = row_words(i);
    const auto b = other_transposed.row_words(j);
    const std::size_t w0 = first / kWordBits;
    const std::size_t w1 = (last - 1) / kWordBits;
    for (std::size_t w = w0; w <= w1; ++w) {
      Word m = a[w] & b[w];
      if (w == w0) m &= ~Word{0} << (first % kWordBits);
      if (w == w1 && last % kWordBits != 0) m &= (Word{1} << (last % kWordBits)) - 1;
      if (m != 0) return true;
    }
    return false;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

}  // namespace cellsync
