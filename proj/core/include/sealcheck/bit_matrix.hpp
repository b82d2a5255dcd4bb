#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace sealcheck {

// Dense square boolean matrix with word-parallel row unions; used as an
// adjacency / reachability relation over node indices.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n);

  std::size_t size() const { return n_; }

  void set(std::size_t from, std::size_t to);
  bool test(std::size_t from, std::size_t to) const;

  // Warshall's algorithm in place: afterwards test(a, b) holds iff b is
  // reachable from a by a non-empty path. O(n^3 / 64).
  void close_transitively();

  // True iff some diagonal entry is set. After close_transitively() this
  // is exactly "the relation has a cycle".
  bool any_diagonal() const;

  // All set pairs in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::size_t count() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace sealcheck
