#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xfam/bitmask.hpp"

namespace xfam {

// A family of sequences over the alphabet [m] = {1, ..., m} with n
// coordinates.  A sequence (x_1, ..., x_n) is stored as its base-m index
// with the first coordinate most significant, so ascending index order is
// lexicographic order on sequences.  Dense sweeps over the universe require
// m^n <= 2^24, enforced at construction.
class SeqFamily {
public:
  static constexpr std::uint64_t kMaxUniverse = std::uint64_t{1} << 24;

  SeqFamily(int m, int n, std::vector<std::uint32_t> members)
      : m_(m), n_(n), members_(std::move(members)) {
    if (m < 2) throw std::invalid_argument("sequence family: alphabet size m must be at least 2");
    if (n < 1) throw std::invalid_argument("sequence family: length n must be at least 1");
    std::uint64_t u = 1;
    for (int i = 0; i < n; ++i) {
      u *= static_cast<std::uint64_t>(m);
      if (u > kMaxUniverse)
        throw std::invalid_argument("sequence family: universe m^n exceeds 2^24");
    }
    universe_ = static_cast<std::uint32_t>(u);
    for (std::uint32_t idx : members_)
      if (idx >= universe_)
        throw std::invalid_argument("sequence family: index " + std::to_string(idx) +
                                    " outside universe of size " + std::to_string(universe_));
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  static SeqFamily empty_family(int m, int n) { return SeqFamily(m, n, {}); }

  static SeqFamily full_family(int m, int n) {
    SeqFamily f(m, n, {});
    f.members_.resize(f.universe_);
    std::iota(f.members_.begin(), f.members_.end(), 0u);
    return f;
  }

  static SeqFamily from_vectors(int m, int n, const std::vector<std::vector<int>>& seqs) {
    SeqFamily f(m, n, {});
    f.members_.reserve(seqs.size());
    for (const auto& s : seqs) f.members_.push_back(f.encode(s));
    std::sort(f.members_.begin(), f.members_.end());
    f.members_.erase(std::unique(f.members_.begin(), f.members_.end()), f.members_.end());
    return f;
  }

  int alphabet() const { return m_; }
  int length() const { return n_; }
  std::uint32_t universe_size() const { return universe_; }
  const std::vector<std::uint32_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(std::uint32_t idx) const {
    return std::binary_search(members_.begin(), members_.end(), idx);
  }

  std::vector<int> decode(std::uint32_t idx) const {
    std::vector<int> out(n_);
    for (int i = n_ - 1; i >= 0; --i) {
      out[i] = static_cast<int>(idx % m_) + 1;
      idx /= m_;
    }
    return out;
  }

  std::uint32_t encode(const std::vector<int>& seq) const {
    if (static_cast<int>(seq.size()) != n_)
      throw std::invalid_argument("sequence has length " + std::to_string(seq.size()) +
                                  ", expected " + std::to_string(n_));
    std::uint32_t idx = 0;
    for (int v : seq) {
      if (v < 1 || v > m_)
        throw std::invalid_argument("coordinate " + std::to_string(v) +
                                    " outside alphabet [1, " + std::to_string(m_) + "]");
      idx = idx * m_ + static_cast<std::uint32_t>(v - 1);
    }
    return idx;
  }

  friend bool operator==(const SeqFamily& a, const SeqFamily& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.members_ == b.members_;
  }

private:
  int m_;
  int n_;
  std::uint32_t universe_;
  std::vector<std::uint32_t> members_;
};

// Coordinatewise agreement record: (x ∧ y)_i is x_i where the sequences
// agree and 0 where they differ.
inline std::vector<int> meet(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("meet: sequences have different lengths (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  std::vector<int> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] == y[i] ? x[i] : 0;
  return z;
}

inline int symbol_count(const std::vector<int>& z, int symbol) {
  return static_cast<int>(std::count(z.begin(), z.end(), symbol));
}

namespace detail {

inline void require_same_shape(const SeqFamily& a, const SeqFamily& b) {
  if (a.alphabet() != b.alphabet() || a.length() != b.length())
    throw std::invalid_argument("sequence families have different shapes (m=" +
                                std::to_string(a.alphabet()) + ", n=" + std::to_string(a.length()) +
                                " vs m=" + std::to_string(b.alphabet()) + ", n=" +
                                std::to_string(b.length()) + ")");
}

inline void require_tvec(const std::vector<int>& tvec, int m, int n) {
  if (static_cast<int>(tvec.size()) != m)
    throw std::invalid_argument("threshold vector has " + std::to_string(tvec.size()) +
                                " entries, expected one per symbol (m=" + std::to_string(m) + ")");
  long long total = 0;
  for (int t : tvec) {
    if (t < 0) throw std::invalid_argument("threshold vector entries must be nonnegative");
    total += t;
  }
  if (total > n)
    throw std::invalid_argument("threshold vector sums to " + std::to_string(total) +
                                ", exceeding n=" + std::to_string(n));
}

// Number of coordinates where the sequences for indices a, b agree.  For
// m = 2 the digits are the bits of the index, so agreement is n minus the
// popcount of the XOR.
inline int agreement_total(int m, int n, std::uint32_t a, std::uint32_t b) {
  if (m == 2) return n - popcount(a ^ b);
  int agree = 0;
  for (int i = 0; i < n; ++i) {
    if (a % m == b % m) ++agree;
    a /= m;
    b /= m;
  }
  return agree;
}

// Checks symbol_count(x ∧ y, i) >= tvec[i-1] for every symbol i.
inline bool agreement_meets(int m, int n, std::uint32_t a, std::uint32_t b,
                            const std::vector<int>& tvec) {
  if (m == 2) {
    Mask same = ~(a ^ b) & full_mask(n);
    return popcount(same & ~a) >= tvec[0] && popcount(same & a) >= tvec[1];
  }
  int remaining = n;
  std::vector<int> need(tvec);
  int owed = 0;
  for (int t : need) owed += t;
  for (int i = 0; i < n; ++i) {
    int da = static_cast<int>(a % m), db = static_cast<int>(b % m);
    if (da == db && need[da] > 0) {
      --need[da];
      --owed;
    }
    if (owed == 0) return true;
    --remaining;
    if (owed > remaining) return false;
    a /= m;
    b /= m;
  }
  return owed == 0;
}

}  // namespace detail

// Every pair drawn one from each family agrees in at least tvec[i-1]
// coordinates carrying symbol i, for every symbol.
inline bool is_cross_tvec_intersecting(const SeqFamily& h1, const SeqFamily& h2,
                                       const std::vector<int>& tvec) {
  detail::require_same_shape(h1, h2);
  detail::require_tvec(tvec, h1.alphabet(), h1.length());
  for (std::uint32_t a : h1.members())
    for (std::uint32_t b : h2.members())
      if (!detail::agreement_meets(h1.alphabet(), h1.length(), a, b, tvec)) return false;
  return true;
}

inline bool is_tvec_intersecting(const SeqFamily& h, const std::vector<int>& tvec) {
  detail::require_tvec(tvec, h.alphabet(), h.length());
  const auto& mem = h.members();
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i; j < mem.size(); ++j)
      if (!detail::agreement_meets(h.alphabet(), h.length(), mem[i], mem[j], tvec)) return false;
  return true;
}

// Plain-count companions: only the total number of agreements matters.
inline bool is_cross_t_intersecting(const SeqFamily& h1, const SeqFamily& h2, int t) {
  detail::require_same_shape(h1, h2);
  detail::require_threshold(t, h1.length());
  for (std::uint32_t a : h1.members())
    for (std::uint32_t b : h2.members())
      if (detail::agreement_total(h1.alphabet(), h1.length(), a, b) < t) return false;
  return true;
}

inline bool is_t_intersecting(const SeqFamily& h, int t) {
  detail::require_threshold(t, h.length());
  const auto& mem = h.members();
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i; j < mem.size(); ++j)
      if (detail::agreement_total(h.alphabet(), h.length(), mem[i], mem[j]) < t) return false;
  return true;
}

// Largest family cross-tvec-intersecting with h; the full universe when h is
// empty.  h is tvec-intersecting exactly when h is contained in its dual.
inline SeqFamily seq_dual(const SeqFamily& h, const std::vector<int>& tvec) {
  detail::require_tvec(tvec, h.alphabet(), h.length());
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < h.universe_size(); ++y) {
    bool ok = true;
    for (std::uint32_t x : h.members())
      if (!detail::agreement_meets(h.alphabet(), h.length(), x, y, tvec)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(y);
  }
  return SeqFamily(h.alphabet(), h.length(), std::move(out));
}

inline SeqFamily seq_dual(const SeqFamily& h, int t) {
  detail::require_threshold(t, h.length());
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < h.universe_size(); ++y) {
    bool ok = true;
    for (std::uint32_t x : h.members())
      if (detail::agreement_total(h.alphabet(), h.length(), x, y) < t) {
        ok = false;
        break;
      }
    if (ok) out.push_back(y);
  }
  return SeqFamily(h.alphabet(), h.length(), std::move(out));
}

namespace detail {

inline void require_symbol_set(Mask p, int m, const char* what) {
  if (p > full_mask(m))
    throw std::invalid_argument(std::string(what) + " contains symbols outside [1, " +
                                std::to_string(m) + "]");
  if (p == full_mask(m))
    throw std::invalid_argument(std::string(what) +
                                " must be a proper subset of the alphabet");
}

// Indices of the cylinder through x: coordinates whose symbol lies in p are
// pinned, the rest range over the whole alphabet.
template <typename Fn>
void for_each_in_cylinder(const SeqFamily& h, std::uint32_t x, Mask p, Fn&& fn) {
  int m = h.alphabet(), n = h.length();
  std::vector<int> digits = h.decode(x);
  std::vector<int> free_pos;
  for (int i = 0; i < n; ++i)
    if (!element_in(p, digits[i])) free_pos.push_back(i);
  std::vector<int> odo(free_pos.size(), 1);
  while (true) {
    for (std::size_t j = 0; j < free_pos.size(); ++j) digits[free_pos[j]] = odo[j];
    fn(h.encode(digits));
    std::size_t j = 0;
    for (; j < odo.size(); ++j) {
      if (odo[j] < m) {
        ++odo[j];
        break;
      }
      odo[j] = 1;
    }
    if (j == odo.size()) break;
  }
}

}  // namespace detail

// h is P-complete when membership only depends on the coordinates carrying a
// symbol from P: changing any other coordinate arbitrarily stays inside h.
inline bool is_p_complete(const SeqFamily& h, Mask p) {
  detail::require_symbol_set(p, h.alphabet(), "symbol set P");
  for (std::uint32_t x : h.members()) {
    bool ok = true;
    detail::for_each_in_cylinder(h, x, p, [&](std::uint32_t y) {
      if (!h.contains(y)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// Smallest P-complete family containing h.
inline SeqFamily p_complete_closure(const SeqFamily& h, Mask p) {
  detail::require_symbol_set(p, h.alphabet(), "symbol set P");
  std::vector<std::uint32_t> out;
  for (std::uint32_t x : h.members())
    detail::for_each_in_cylinder(h, x, p, [&](std::uint32_t y) { out.push_back(y); });
  return SeqFamily(h.alphabet(), h.length(), std::move(out));
}

// For h1 P-complete and h2 Q-complete with P, Q disjoint nonempty proper
// symbol sets, membership in h1 and h2 is negatively correlated under the
// uniform measure:  |h1 ∩ h2| * m^n <= |h1| * |h2|.  Returns the exact truth
// of that inequality.
inline bool correlation_check(const SeqFamily& h1, const SeqFamily& h2, Mask p, Mask q) {
  detail::require_same_shape(h1, h2);
  detail::require_symbol_set(p, h1.alphabet(), "symbol set P");
  detail::require_symbol_set(q, h1.alphabet(), "symbol set Q");
  if (p == 0 || q == 0)
    throw std::invalid_argument("correlation check: symbol sets must be nonempty");
  if (p & q)
    throw std::invalid_argument("correlation check: symbol sets must be disjoint, both contain " +
                                mask_to_string(p & q));
  if (!is_p_complete(h1, p))
    throw std::invalid_argument("correlation check: first family is not P-complete");
  if (!is_p_complete(h2, q))
    throw std::invalid_argument("correlation check: second family is not Q-complete");
  std::vector<std::uint32_t> common;
  std::set_intersection(h1.members().begin(), h1.members().end(), h2.members().begin(),
                        h2.members().end(), std::back_inserter(common));
  std::uint64_t lhs = static_cast<std::uint64_t>(common.size()) * h1.universe_size();
  std::uint64_t rhs = static_cast<std::uint64_t>(h1.size()) * h2.size();
  return lhs <= rhs;
}

}  // namespace xfam
