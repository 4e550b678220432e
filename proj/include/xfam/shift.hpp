#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xfam/set_family.hpp"

namespace xfam {

// Replaces A by B inside every member that contains all of A, none of B, and
// whose image is not already present.  A and B must be disjoint subsets of
// [n]; |A| and |B| are unconstrained here, the schedule below picks |B|=|A|+1.
inline SetFamily shift_ab(const SetFamily& fam, Mask a, Mask b) {
  Mask limit = full_mask(fam.ground_size());
  if (a > limit || b > limit)
    throw std::invalid_argument("shift: A or B reaches outside the ground set");
  if (a & b)
    throw std::invalid_argument("shift: A and B must be disjoint, both contain " +
                                mask_to_string(a & b));
  std::vector<Mask> out;
  out.reserve(fam.size());
  for (Mask f : fam.members()) {
    if ((f & a) == a && (f & b) == 0) {
      Mask image = (f & ~a) | b;
      if (!fam.contains(image)) {
        out.push_back(image);
        continue;
      }
    }
    out.push_back(f);
  }
  return SetFamily(fam.ground_size(), std::move(out));
}

// Sum of member sizes; strictly increases under every effective
// (|A|, |A|+1)-shift, which bounds the stabilization loop.
inline long long family_potential(const SetFamily& fam) {
  long long total = 0;
  for (Mask m : fam.members()) total += popcount(m);
  return total;
}

// Stable at level k: no (A, B)-shift with |A| = k, |B| = k+1 changes the
// family.
inline bool is_stable(const SetFamily& fam, int k) {
  int n = fam.ground_size();
  if (k < 0 || k >= n)
    throw std::invalid_argument("stability level k=" + std::to_string(k) +
                                " must be in [0, n-1] with n=" + std::to_string(n));
  bool stable = true;
  for_each_subset_of_size(n, k, [&](Mask a) {
    if (!stable) return;
    for_each_subset_of_size(n, k + 1, [&](Mask b) {
      if (!stable || (a & b)) return;
      for (Mask f : fam.members())
        if ((f & a) == a && (f & b) == 0 && !fam.contains((f & ~a) | b)) {
          stable = false;
          return;
        }
    });
  });
  return stable;
}

struct TraceStep {
  int level;
  Mask a;
  Mask b;
  long long potential;  // combined potential of both families after the step
};

struct StabilizationTrace {
  std::vector<TraceStep> steps;
  long long final_potential = 0;
};

struct StabilizeResult {
  SetFamily f1;
  SetFamily f2;
  StabilizationTrace trace;
};

namespace detail {

// First (level, A, B) in schedule order whose joint application changes at
// least one of the families.  Schedule order: level k = 0..n-1, then (A, B)
// lexicographic by (A-mask, B-mask).
inline std::optional<TraceStep> first_effective_shift(const SetFamily& f1, const SetFamily& f2) {
  int n = f1.ground_size();
  std::optional<TraceStep> hit;
  for (int k = 0; k < n && !hit; ++k) {
    for_each_subset_of_size(n, k, [&](Mask a) {
      if (hit) return;
      for_each_subset_of_size(n, k + 1, [&](Mask b) {
        if (hit || (a & b)) return;
        auto moves = [&](const SetFamily& fam) {
          for (Mask f : fam.members())
            if ((f & a) == a && (f & b) == 0 && !fam.contains((f & ~a) | b)) return true;
          return false;
        };
        if (moves(f1) || moves(f2)) hit = TraceStep{k, a, b, 0};
      });
    });
  }
  return hit;
}

}  // namespace detail

// Applies (k, k+1)-shifts jointly to both families, restarting from level 0
// after every change, until both are stable at every level.  Preserves the
// cross-t-intersecting property (which is required of the input) and both
// family sizes; each step raises the combined potential, so the loop
// terminates within 2n * 2^n steps.
inline StabilizeResult stabilize_pair(SetFamily f1, SetFamily f2, int t) {
  detail::require_same_ground(f1, f2);
  detail::require_threshold(t, f1.ground_size());
  if (!is_cross_t_intersecting(f1, f2, t))
    throw std::invalid_argument("stabilize: input families are not cross-" +
                                std::to_string(t) + "-intersecting");
  StabilizationTrace trace;
  while (auto step = detail::first_effective_shift(f1, f2)) {
    f1 = shift_ab(f1, step->a, step->b);
    f2 = shift_ab(f2, step->a, step->b);
    step->potential = family_potential(f1) + family_potential(f2);
    trace.steps.push_back(*step);
  }
  trace.final_potential = family_potential(f1) + family_potential(f2);
  return StabilizeResult{std::move(f1), std::move(f2), std::move(trace)};
}

// Size of the smallest member; undefined (and an error) for empty families.
inline int min_member_size(const SetFamily& fam) {
  if (fam.empty()) throw std::domain_error("min member size: empty family");
  int best = fam.ground_size();
  for (Mask m : fam.members()) best = std::min(best, popcount(m));
  return best;
}

// True when the family holds every set larger than its minimum member size:
// with u = min size, all sets of size > u are members.  The shape forced on
// a family stable at every level.
inline bool check_layer_sandwich(const SetFamily& fam) {
  int n = fam.ground_size();
  int u = min_member_size(fam);
  std::uint64_t above = 0;
  for (Mask m : fam.members())
    if (popcount(m) > u) ++above;
  std::uint64_t expected = 0;
  for (int k = u + 1; k <= n; ++k) expected += binomial(n, k);
  return above == expected;
}

}  // namespace xfam
