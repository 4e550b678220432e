#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xfam/bitmask.hpp"
#include "xfam/rational.hpp"

namespace xfam {

// A finite family of subsets of [n], stored as a sorted vector of distinct
// bitmasks.  For n up to kDenseLimit a bit-per-subset indicator backs O(1)
// membership tests; beyond that contains() falls back to binary search.
class SetFamily {
public:
  static constexpr int kMaxGround = 24;
  static constexpr int kDenseLimit = 20;

  SetFamily(int n, std::vector<Mask> members) : n_(n), members_(std::move(members)) {
    if (n < 1 || n > kMaxGround)
      throw std::invalid_argument("set family: n must be in [1, " +
                                  std::to_string(kMaxGround) + "], got " + std::to_string(n));
    Mask limit = full_mask(n);
    for (Mask m : members_)
      if (m > limit)
        throw std::invalid_argument("set family: member " + mask_to_string(m & ~limit) +
                                    " reaches outside [" + std::to_string(n) + "]");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (n_ <= kDenseLimit) {
      dense_.assign((std::size_t{1} << n_) / 64 + 1, 0);
      for (Mask m : members_) dense_[m >> 6] |= std::uint64_t{1} << (m & 63);
    }
  }

  static SetFamily empty_family(int n) { return SetFamily(n, {}); }

  int ground_size() const { return n_; }
  const std::vector<Mask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(Mask m) const {
    if (n_ <= kDenseLimit)
      return m <= full_mask(n_) && ((dense_[m >> 6] >> (m & 63)) & 1u);
    return std::binary_search(members_.begin(), members_.end(), m);
  }

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
  }

private:
  int n_;
  std::vector<Mask> members_;
  std::vector<std::uint64_t> dense_;
};

namespace detail {

inline void require_same_ground(const SetFamily& a, const SetFamily& b) {
  if (a.ground_size() != b.ground_size())
    throw std::invalid_argument("families live on different ground sets (n=" +
                                std::to_string(a.ground_size()) + " vs n=" +
                                std::to_string(b.ground_size()) + ")");
}

}  // namespace detail

// Product measure: each element present independently with probability p, so
// a set of size k weighs p^k (1-p)^(n-k).  Requires 0 < p < 1.
inline Rational measure(const SetFamily& fam, const Rational& p) {
  if (!(Rational(0) < p && p < Rational(1)))
    throw std::domain_error("measure requires 0 < p < 1, got p=" + p.str());
  int n = fam.ground_size();
  std::vector<std::uint64_t> count(n + 1, 0);
  for (Mask m : fam.members()) ++count[popcount(m)];
  Rational q = Rational(1) - p;
  std::vector<Rational> pk(n + 1), qk(n + 1);
  pk[0] = qk[0] = Rational(1);
  for (int k = 1; k <= n; ++k) {
    pk[k] = pk[k - 1] * p;
    qk[k] = qk[k - 1] * q;
  }
  Rational total(0);
  for (int k = 0; k <= n; ++k)
    if (count[k]) total += Rational(BigInt(count[k])) * pk[k] * qk[n - k];
  return total;
}

// Every two members (including a member with itself) share at least t elements.
inline bool is_t_intersecting(const SetFamily& fam, int t) {
  detail::require_threshold(t, fam.ground_size());
  const auto& mem = fam.members();
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i; j < mem.size(); ++j)
      if (popcount(mem[i] & mem[j]) < t) return false;
  return true;
}

inline bool is_cross_t_intersecting(const SetFamily& f1, const SetFamily& f2, int t) {
  detail::require_same_ground(f1, f2);
  detail::require_threshold(t, f1.ground_size());
  for (Mask a : f1.members())
    for (Mask b : f2.members())
      if (popcount(a & b) < t) return false;
  return true;
}

// All supersets of T inside [n].
inline SetFamily principal_family(int n, Mask t_core) {
  if (n < 1 || n > SetFamily::kMaxGround)
    throw std::invalid_argument("principal family: n out of range");
  if (t_core > full_mask(n))
    throw std::invalid_argument("principal family: core set reaches outside [" +
                                std::to_string(n) + "]");
  std::vector<Mask> out;
  out.reserve(std::size_t{1} << (n - popcount(t_core)));
  for_each_submask(full_mask(n) & ~t_core, [&](Mask s) { out.push_back(t_core | s); });
  return SetFamily(n, std::move(out));
}

// Sets meeting the window [t + 2r] in at least t + r elements.  r = 0 gives
// the principal family over [t].
inline SetFamily frankl_family(int n, int t, int r) {
  if (t < 1) throw std::invalid_argument("frankl family: t must be at least 1");
  if (r < 0) throw std::invalid_argument("frankl family: r must be nonnegative");
  if (n < 1 || n > SetFamily::kMaxGround)
    throw std::invalid_argument("frankl family: n out of range");
  if (t + 2 * r > n)
    throw std::invalid_argument("frankl family: window t+2r=" + std::to_string(t + 2 * r) +
                                " exceeds n=" + std::to_string(n));
  Mask window = full_mask(t + 2 * r);
  std::vector<Mask> out;
  Mask limit = full_mask(n);
  for (Mask m = 0;; ++m) {
    if (popcount(m & window) >= t + r) out.push_back(m);
    if (m == limit) break;
  }
  return SetFamily(n, std::move(out));
}

// Sets of size at least (n+t)/2, padded on the boundary layer when n+t is
// odd by the sets of size (n+t-1)/2 avoiding element n.
inline SetFamily katona_family(int n, int t) {
  if (n < 1 || n > SetFamily::kMaxGround)
    throw std::invalid_argument("katona family: n out of range");
  if (t < 1 || t > n)
    throw std::invalid_argument("katona family: t must be in [1, n]");
  std::vector<Mask> out;
  Mask limit = full_mask(n);
  Mask last = Mask{1} << (n - 1);
  bool odd = (n + t) % 2 != 0;
  int high = (n + t + 1) / 2;
  for (Mask m = 0;; ++m) {
    int k = popcount(m);
    if (k >= high || (odd && k == high - 1 && !(m & last))) out.push_back(m);
    if (m == limit) break;
  }
  return SetFamily(n, std::move(out));
}

// Smallest superset-closed family containing fam.
inline SetFamily up_closure(const SetFamily& fam) {
  int n = fam.ground_size();
  if (n > SetFamily::kDenseLimit)
    throw std::invalid_argument("up closure: supported for n up to " +
                                std::to_string(SetFamily::kDenseLimit));
  std::size_t universe = std::size_t{1} << n;
  std::vector<char> in(universe, 0);
  for (Mask m : fam.members()) in[m] = 1;
  for (Mask m = 0; m < universe; ++m) {
    if (!in[m]) continue;
    for (int b = 0; b < n; ++b) in[m | (Mask{1} << b)] = 1;
  }
  std::vector<Mask> out;
  for (Mask m = 0; m < universe; ++m)
    if (in[m]) out.push_back(m);
  return SetFamily(n, std::move(out));
}

// Largest family cross-t-intersecting with fam: all sets meeting every member
// in at least t elements.  For the empty family that is the full power set.
inline SetFamily t_dual(const SetFamily& fam, int t) {
  int n = fam.ground_size();
  detail::require_threshold(t, n);
  std::vector<Mask> out;
  Mask limit = full_mask(n);
  for (Mask s = 0;; ++s) {
    bool ok = true;
    for (Mask f : fam.members())
      if (popcount(s & f) < t) {
        ok = false;
        break;
      }
    if (ok) out.push_back(s);
    if (s == limit) break;
  }
  return SetFamily(n, std::move(out));
}

}  // namespace xfam
