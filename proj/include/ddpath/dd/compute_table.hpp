#pragma once

#include "ddpath/dd/node.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ddpath::dd {

/// Fixed-size, lossy memo: one slot per hash bucket, a colliding insert
/// overwrites the previous entry.
template <class LeftT, class RightT, class ResultT> class ComputeTable {
public:
  explicit ComputeTable(std::size_t bits)
      : entries_(std::size_t{1} << bits), mask_((std::size_t{1} << bits) - 1) {}

  [[nodiscard]] std::optional<ResultT> lookup(const LeftT& left,
                                              const RightT& right) {
    const auto& entry = entries_[slot(left, right)];
    ++lookups_;
    if (entry.valid && entry.left == left && entry.right == right) {
      ++hits_;
      return entry.result;
    }
    return std::nullopt;
  }

  void insert(const LeftT& left, const RightT& right, const ResultT& result) {
    entries_[slot(left, right)] = Entry{left, right, result, true};
  }

  void clear() {
    for (auto& entry : entries_) {
      entry.valid = false;
    }
  }

  [[nodiscard]] std::size_t lookups() const noexcept { return lookups_; }
  [[nodiscard]] std::size_t hits() const noexcept { return hits_; }

private:
  struct Entry {
    LeftT left{};
    RightT right{};
    ResultT result{};
    bool valid = false;
  };

  static std::size_t hashKey(const void* p) noexcept {
    return std::hash<const void*>{}(p);
  }
  template <class N> static std::size_t hashKey(const Edge<N>& e) noexcept {
    return hashEdge(e);
  }

  std::size_t slot(const LeftT& left, const RightT& right) const noexcept {
    auto h = detail::combine(hashKey(left), hashKey(right));
    h ^= h >> 33U;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33U;
    return h & mask_;
  }

  std::vector<Entry> entries_;
  std::size_t mask_;
  std::size_t lookups_ = 0;
  std::size_t hits_ = 0;
};

} // namespace ddpath::dd
