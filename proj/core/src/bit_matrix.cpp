#include "sealcheck/bit_matrix.hpp"

#include <bit>
#include <cassert>

namespace sealcheck {

BitMatrix::BitMatrix(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

void BitMatrix::set(std::size_t from, std::size_t to) {
  assert(from < n_ && to < n_);
  bits_[from * words_ + to / 64] |= std::uint64_t{1} << (to % 64);
}

bool BitMatrix::test(std::size_t from, std::size_t to) const {
  assert(from < n_ && to < n_);
  return (bits_[from * words_ + to / 64] >> (to % 64)) & 1U;
}

void BitMatrix::close_transitively() {
  for (std::size_t k = 0; k < n_; ++k) {
    const std::uint64_t* row_k = bits_.data() + k * words_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!test(i, k)) continue;
      std::uint64_t* row_i = bits_.data() + i * words_;
      for (std::size_t w = 0; w < words_; ++w) row_i[w] |= row_k[w];
    }
  }
}

bool BitMatrix::any_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (test(i, i)) return true;
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> BitMatrix::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (test(i, j)) out.emplace_back(i, j);
  return out;
}

std::size_t BitMatrix::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

}  // namespace sealcheck
