#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ddpath::dd {

using fp = double;
using Complex = std::complex<fp>;

/// Weight identification tolerance used inside the kernel tables.
inline constexpr fp TOLERANCE = 1e-12;
/// Tolerance for externally observable equality checks.
inline constexpr fp CHECK_TOLERANCE = 1e-10;

[[nodiscard]] inline bool approximatelyEqual(const Complex& a, const Complex& b,
                                             fp tol = TOLERANCE) noexcept {
  return std::abs(a.real() - b.real()) <= tol &&
         std::abs(a.imag() - b.imag()) <= tol;
}

[[nodiscard]] inline bool approximatelyZero(const Complex& a,
                                            fp tol = TOLERANCE) noexcept {
  return std::abs(a.real()) <= tol && std::abs(a.imag()) <= tol;
}

/// Interns real numbers so that values within TOLERANCE of an existing
/// representative collapse onto it. Buckets have width TOLERANCE; a lookup
/// probes its own bucket and both neighbours, which covers every
/// representative within TOLERANCE.
class RealTable {
public:
  RealTable() { seed(); }

  [[nodiscard]] fp lookup(fp value) {
    if (!std::isfinite(value)) {
      throw std::domain_error("non-finite edge weight");
    }
    // Weights this large only occur on unnormalised root edges.
    if (std::abs(value) >= MAX_INTERNED) {
      return value;
    }
    const auto key = bucketOf(value);
    for (auto k = key - 1; k <= key + 1; ++k) {
      const auto it = buckets_.find(k);
      if (it == buckets_.end()) {
        continue;
      }
      for (const fp rep : it->second) {
        if (std::abs(rep - value) <= TOLERANCE) {
          return rep;
        }
      }
    }
    buckets_[key].push_back(value);
    ++count_;
    return value;
  }

  [[nodiscard]] Complex lookup(const Complex& c) {
    return {lookup(c.real()), lookup(c.imag())};
  }

  /// Registers an existing representative verbatim. Used to rebuild the
  /// table from live nodes after garbage collection.
  void insertRepresentative(fp value) {
    if (!std::isfinite(value) || std::abs(value) >= MAX_INTERNED) {
      return;
    }
    auto& bucket = buckets_[bucketOf(value)];
    for (const fp rep : bucket) {
      if (rep == value) {
        return;
      }
    }
    bucket.push_back(value);
    ++count_;
  }

  void clear() {
    buckets_.clear();
    count_ = 0;
    seed();
  }

  [[nodiscard]] std::size_t size() const noexcept { return count_; }

private:
  static constexpr fp MAX_INTERNED = 1e6;

  static std::int64_t bucketOf(fp value) noexcept {
    return static_cast<std::int64_t>(std::floor(value / TOLERANCE));
  }

  void seed() {
    const fp r = std::numbers::sqrt2_v<fp> / 2;
    for (const fp v : {0., 1., -1., .5, -.5, r, -r}) {
      insertRepresentative(v);
    }
  }

  std::unordered_map<std::int64_t, std::vector<fp>> buckets_;
  std::size_t count_ = 0;
};

} // namespace ddpath::dd
