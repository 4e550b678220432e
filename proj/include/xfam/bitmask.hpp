#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xfam {

// Subsets of a ground set [n] = {1, ..., n} are bitmasks: element e is bit
// e-1.  Ascending mask order doubles as the canonical family order.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask full_mask(int n) { return n == 0 ? 0u : (Mask{1} << n) - 1u; }

inline bool element_in(Mask m, int e) { return (m >> (e - 1)) & 1u; }

inline Mask mask_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) m |= Mask{1} << (e - 1);
  return m;
}

inline Mask mask_from_elements(const std::vector<int>& elements, int n) {
  Mask m = 0;
  for (int e : elements) {
    if (e < 1 || e > n)
      throw std::invalid_argument("element " + std::to_string(e) + " exceeds n=" + std::to_string(n));
    Mask bit = Mask{1} << (e - 1);
    if (m & bit)
      throw std::invalid_argument("duplicate element " + std::to_string(e));
    m |= bit;
  }
  return m;
}

inline std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

inline std::string mask_to_string(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int e : elements_of(m)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

namespace detail {

inline void require_threshold(int t, int n) {
  if (t < 0 || t > n)
    throw std::invalid_argument("threshold t=" + std::to_string(t) +
                                " must be in [0, n] with n=" + std::to_string(n));
}

}  // namespace detail

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls fn(mask) for every k-subset of [n] in ascending mask order.
template <typename Fn>
void for_each_subset_of_size(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(Mask{0});
    return;
  }
  Mask limit = Mask{1} << n;
  Mask m = full_mask(k);
  while (m < limit) {
    fn(m);
    // Gosper's hack: next larger mask with the same popcount.
    Mask c = m & (0u - m);
    Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

// Calls fn(mask) for every subset of `within`, ascending by mask value.
template <typename Fn>
void for_each_submask(Mask within, Fn&& fn) {
  Mask s = 0;
  while (true) {
    fn(s);
    if (s == within) break;
    s = (s - within) & within;
  }
}

}  // namespace xfam
