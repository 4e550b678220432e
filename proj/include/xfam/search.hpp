#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xfam/bitmask.hpp"
#include "xfam/family_io.hpp"
#include "xfam/rational.hpp"
#include "xfam/rng.hpp"
#include "xfam/seq_family.hpp"
#include "xfam/set_family.hpp"

namespace xfam {

enum class TheoremId { TM1, TM2, TM3, TM4, AF, KATONA, LE1, LE3, LE8, IU };

inline const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::TM1: return "tm1";
    case TheoremId::TM2: return "tm2";
    case TheoremId::TM3: return "tm3";
    case TheoremId::TM4: return "tm4";
    case TheoremId::AF: return "af";
    case TheoremId::KATONA: return "katona";
    case TheoremId::LE1: return "le1";
    case TheoremId::LE3: return "le3";
    case TheoremId::LE8: return "le8";
    case TheoremId::IU: return "iu";
  }
  return "?";
}

enum class SearchMode { kExhaustive, kSampled };

inline const char* to_string(SearchMode mode) {
  return mode == SearchMode::kExhaustive ? "exhaustive" : "sampled";
}

// Outcome of one verification run.  `pass` is exactly `computed_extremum <=
// claimed_bound`; `conjectural` marks parameter sets the source theorem does
// not cover (boundary alphabet sizes, the unsettled t=2 biased regime), and
// such runs never count as violations.  `trials`/`seed` are present only in
// sampled mode.  `witnesses` lists every extremal configuration found;
// `witness` is the lexicographically least of them.
struct VerificationReport {
  TheoremId theorem_id = TheoremId::TM1;
  std::vector<std::pair<std::string, std::string>> params;
  SearchMode mode = SearchMode::kExhaustive;
  Rational computed_extremum;
  Rational claimed_bound;
  std::string witness;
  std::vector<std::string> witnesses;
  bool pass = false;
  bool conjectural = false;
  std::optional<long long> trials;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const {
    nlohmann::json params_obj = nlohmann::json::object();
    for (const auto& [k, v] : params) params_obj[k] = v;
    nlohmann::json doc{
        {"theorem_id", to_string(theorem_id)},
        {"params", std::move(params_obj)},
        {"mode", to_string(mode)},
        {"extremum", computed_extremum.str()},
        {"bound", claimed_bound.str()},
        {"pass", pass},
        {"conjectural", conjectural},
        {"witness", witness},
        {"witnesses", witnesses},
    };
    if (trials) doc["trials"] = *trials;
    if (seed) doc["seed"] = *seed;
    return doc;
  }

  static VerificationReport from_json(const nlohmann::json& doc) {
    VerificationReport r;
    std::string id = doc.at("theorem_id").get<std::string>();
    bool found = false;
    for (TheoremId cand : {TheoremId::TM1, TheoremId::TM2, TheoremId::TM3, TheoremId::TM4,
                           TheoremId::AF, TheoremId::KATONA, TheoremId::LE1, TheoremId::LE3,
                           TheoremId::LE8, TheoremId::IU})
      if (id == to_string(cand)) {
        r.theorem_id = cand;
        found = true;
      }
    if (!found) throw std::invalid_argument("unknown theorem id \"" + id + "\"");
    for (const auto& [k, v] : doc.at("params").items())
      r.params.emplace_back(k, v.get<std::string>());
    r.mode = doc.at("mode").get<std::string>() == "sampled" ? SearchMode::kSampled
                                                            : SearchMode::kExhaustive;
    r.computed_extremum = Rational::parse(doc.at("extremum").get<std::string>());
    r.claimed_bound = Rational::parse(doc.at("bound").get<std::string>());
    r.pass = doc.at("pass").get<bool>();
    r.conjectural = doc.at("conjectural").get<bool>();
    r.witness = doc.at("witness").get<std::string>();
    r.witnesses = doc.at("witnesses").get<std::vector<std::string>>();
    if (doc.contains("trials")) r.trials = doc.at("trials").get<long long>();
    if (doc.contains("seed")) r.seed = doc.at("seed").get<std::uint64_t>();
    return r;
  }

  static std::string csv_header() {
    return "theorem_id,params,mode,extremum,bound,pass,witness,seed";
  }

  std::string csv_row() const {
    auto quote = [](const std::string& s) {
      std::string out = "\"";
      for (char c : s) {
        out += c;
        if (c == '"') out += '"';
      }
      return out + "\"";
    };
    std::string packed;
    for (const auto& [k, v] : params) {
      if (!packed.empty()) packed += ";";
      packed += k + "=" + v;
    }
    std::string row = std::string(to_string(theorem_id)) + "," + quote(packed) + "," +
                      to_string(mode) + "," + computed_extremum.str() + "," + claimed_bound.str() +
                      "," + (pass ? "true" : "false") + "," + quote(witness) + ",";
    if (seed) row += std::to_string(*seed);
    return row;
  }
};

namespace detail {

// Up-sets on [n] as indicator words: bit S marks that the subset with mask S
// belongs to the family.  An up-set splits by element n into a pair (U0, U1)
// of up-sets on [n-1] with U0 ⊆ U1; recursing on that pair in (U0-outer,
// U1-inner) order yields each family exactly once, deterministically.
inline std::vector<std::uint64_t> upset_words(int n) {
  if (n == 0) return {0b0, 0b1};
  std::vector<std::uint64_t> prev = upset_words(n - 1);
  int half = 1 << (n - 1);
  std::vector<std::uint64_t> out;
  for (std::uint64_t u0 : prev)
    for (std::uint64_t u1 : prev)
      if ((u0 & ~u1) == 0) out.push_back(u0 | (u1 << half));
  return out;
}

inline SetFamily family_from_word(int n, std::uint64_t word) {
  std::vector<Mask> members;
  for (Mask s = 0; s < (Mask{1} << n); ++s)
    if ((word >> s) & 1) members.push_back(s);
  return SetFamily(n, std::move(members));
}

inline SeqFamily seq_family_from_word(int m, int n, std::uint32_t universe, std::uint64_t word) {
  std::vector<std::uint32_t> members;
  for (std::uint32_t i = 0; i < universe; ++i)
    if ((word >> i) & 1) members.push_back(i);
  return SeqFamily(m, n, std::move(members));
}

// Per-threshold tables over the 2^n subset masks: layer[k] collects the
// masks of popcount k, bad[S] the masks F with |S ∩ F| < t.  A family word
// u admits S in its dual exactly when u & bad[S] == 0.
struct CubeTables {
  int n;
  std::array<std::uint64_t, 7> layer{};
  std::vector<std::uint64_t> bad;

  CubeTables(int n_, int t) : n(n_), bad(std::size_t{1} << n_, 0) {
    Mask universe = Mask{1} << n;
    for (Mask s = 0; s < universe; ++s) layer[popcount(s)] |= std::uint64_t{1} << s;
    for (Mask s = 0; s < universe; ++s)
      for (Mask f = 0; f < universe; ++f)
        if (popcount(s & f) < t) bad[s] |= std::uint64_t{1} << f;
  }

  std::uint64_t dual_word(std::uint64_t u) const {
    std::uint64_t d = 0;
    for (Mask s = 0; s < (Mask{1} << n); ++s)
      if ((u & bad[s]) == 0) d |= std::uint64_t{1} << s;
    return d;
  }
};

inline std::vector<Rational> biased_weights(int n, const Rational& p) {
  Rational q = Rational(1) - p;
  std::vector<Rational> w(n + 1);
  for (int k = 0; k <= n; ++k) w[k] = p.pow(k) * q.pow(n - k);
  return w;
}

inline Rational word_measure(const CubeTables& tables, std::uint64_t u,
                             const std::vector<Rational>& weights) {
  Rational total(0);
  for (int k = 0; k <= tables.n; ++k) {
    int cnt = std::popcount(u & tables.layer[k]);
    if (cnt) total += Rational(cnt) * weights[k];
  }
  return total;
}

// Running maximum with all tied argument pairs.  Merging is value-based, so
// the result is independent of how the index range was partitioned.
struct TieMax {
  Rational best{-1};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> args;

  void offer(const Rational& value, std::uint64_t x, std::uint64_t y) {
    if (value > best) {
      best = value;
      args.assign(1, {x, y});
    } else if (value == best) {
      args.emplace_back(x, y);
    }
  }

  void merge(const TieMax& other) {
    if (other.best > best) {
      best = other.best;
      args = other.args;
    } else if (other.best == best) {
      args.insert(args.end(), other.args.begin(), other.args.end());
    }
  }

  void finalize() {
    std::sort(args.begin(), args.end());
    args.erase(std::unique(args.begin(), args.end()), args.end());
  }
};

template <typename Body>
TieMax scan_range(std::uint64_t count, int workers, Body body) {
  int w = std::max(1, workers);
  if (count > 0 && static_cast<std::uint64_t>(w) > count) w = static_cast<int>(count);
  if (w <= 1) {
    TieMax acc;
    for (std::uint64_t i = 0; i < count; ++i) body(i, acc);
    acc.finalize();
    return acc;
  }
  std::vector<TieMax> accs(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (int wi = 0; wi < w; ++wi)
    threads.emplace_back([&, wi] {
      std::uint64_t begin = count * wi / w;
      std::uint64_t end = count * (wi + 1) / w;
      for (std::uint64_t i = begin; i < end; ++i) body(i, accs[wi]);
    });
  for (auto& th : threads) th.join();
  TieMax total;
  for (const auto& acc : accs) total.merge(acc);
  total.finalize();
  return total;
}

inline VerificationReport make_report(TheoremId id,
                                      std::vector<std::pair<std::string, std::string>> params,
                                      SearchMode mode, Rational extremum, Rational bound,
                                      std::vector<std::string> witnesses, bool conjectural,
                                      std::optional<long long> trials,
                                      std::optional<std::uint64_t> seed) {
  VerificationReport r;
  r.theorem_id = id;
  r.params = std::move(params);
  r.mode = mode;
  r.computed_extremum = std::move(extremum);
  r.claimed_bound = std::move(bound);
  std::sort(witnesses.begin(), witnesses.end());
  witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
  if (!witnesses.empty()) r.witness = witnesses.front();
  r.witnesses = std::move(witnesses);
  r.pass = r.computed_extremum <= r.claimed_bound;
  r.conjectural = conjectural;
  r.trials = trials;
  r.seed = seed;
  return r;
}

inline std::uint64_t checked_power(int base, int exp, std::uint64_t cap, const char* what) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= static_cast<std::uint64_t>(base);
    if (v > cap)
      throw std::invalid_argument(std::string(what) + " exceeds supported scale (cap " +
                                  std::to_string(cap) + ")");
  }
  return v;
}

// Agreement-failure table over a sequence universe of size k: bad[y] has bit
// x set when x and y do not meet the intersection requirement.
template <typename Fails>
std::vector<std::uint64_t> seq_bad_table(std::uint32_t k, Fails fails) {
  std::vector<std::uint64_t> bad(k, 0);
  for (std::uint32_t y = 0; y < k; ++y)
    for (std::uint32_t x = 0; x < k; ++x)
      if (fails(x, y)) bad[y] |= std::uint64_t{1} << x;
  return bad;
}

inline std::uint64_t seq_dual_word(const std::vector<std::uint64_t>& bad, std::uint64_t h) {
  std::uint64_t d = 0;
  for (std::uint32_t y = 0; y < bad.size(); ++y)
    if ((h & bad[y]) == 0) d |= std::uint64_t{1} << y;
  return d;
}

// Maximum of |H1| * |dual(H1)| over candidate words, exhaustively or from a
// seeded sample topped up with the structured candidate.
inline TieMax seq_pair_extremum(const std::vector<std::uint64_t>& bad, std::uint32_t k,
                                SearchMode mode, long long trials, std::uint64_t seed,
                                std::uint64_t structured, int workers) {
  std::uint64_t kmask = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  auto evaluate = [&](std::uint64_t h, TieMax& acc) {
    std::uint64_t d = seq_dual_word(bad, h);
    std::uint64_t value = static_cast<std::uint64_t>(std::popcount(h)) *
                          static_cast<std::uint64_t>(std::popcount(d));
    acc.offer(Rational(BigInt(value)), h, d);
  };
  if (mode == SearchMode::kExhaustive)
    return scan_range(std::uint64_t{1} << k, workers,
                      [&](std::uint64_t i, TieMax& acc) { evaluate(i, acc); });
  return scan_range(static_cast<std::uint64_t>(trials) + 1, workers,
                    [&](std::uint64_t i, TieMax& acc) {
                      std::uint64_t h = i == 0 ? structured : splitmix64_at(seed, i - 1) & kmask;
                      evaluate(h, acc);
                    });
}

inline std::string pair_witness(const std::string& first, const std::string& second) {
  return "[" + first + "," + second + "]";
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace detail

// Streams every superset-closed family on [n] exactly once, in the fixed
// recursive order.  n up to 6 (7828354 families).
inline void enumerate_upsets(int n, const std::function<void(const SetFamily&)>& fn) {
  detail::require(n >= 1 && n <= 6, "enumerate: n=" + std::to_string(n) +
                                        " out of range [1, 6] (count exceeds desk scale)");
  if (n <= 5) {
    for (std::uint64_t w : detail::upset_words(n)) fn(detail::family_from_word(n, w));
    return;
  }
  std::vector<std::uint64_t> prev = detail::upset_words(5);
  for (std::uint64_t u0 : prev)
    for (std::uint64_t u1 : prev)
      if ((u0 & ~u1) == 0) fn(detail::family_from_word(6, u0 | (u1 << 32)));
}

inline std::uint64_t count_upsets(int n) {
  detail::require(n >= 1 && n <= 6, "enumerate: n=" + std::to_string(n) +
                                        " out of range [1, 6] (count exceeds desk scale)");
  if (n <= 5) return detail::upset_words(n).size();
  std::vector<std::uint64_t> prev = detail::upset_words(5);
  std::uint64_t count = 0;
  for (std::uint64_t u0 : prev)
    for (std::uint64_t u1 : prev)
      if ((u0 & ~u1) == 0) ++count;
  return count;
}

// Biased-measure product bound for cross-t-intersecting set families:
// μ_{p1}(F1) μ_{p2}(F2) ≤ (p1 p2)^t for p1, p2 < 1/(t+1).  Exhaustive over
// up-sets F1 with the maximal partner t_dual(F1) on the other side.
inline VerificationReport verify_tm1(int n, int t, const Rational& p1, const Rational& p2,
                                     int workers = 1) {
  detail::require(t >= 1 && t <= n, "tm1 requires 1 <= t <= n, got t=" + std::to_string(t) +
                                        ", n=" + std::to_string(n));
  detail::require(n <= 5, "tm1 search supports n <= 5, got n=" + std::to_string(n));
  auto check_p = [&](const Rational& p, const char* name) {
    detail::require(Rational(0) < p && p * Rational(t + 1) < Rational(1),
                    std::string(name) + "=" + p.str() +
                        " is outside the theorem hypothesis 0 < " + name + " < 1/(t+1) with t=" +
                        std::to_string(t));
  };
  check_p(p1, "p1");
  check_p(p2, "p2");
  detail::CubeTables tables(n, t);
  std::vector<std::uint64_t> words = detail::upset_words(n);
  std::vector<Rational> w1 = detail::biased_weights(n, p1);
  std::vector<Rational> w2 = detail::biased_weights(n, p2);
  detail::TieMax acc =
      detail::scan_range(words.size(), workers, [&](std::uint64_t i, detail::TieMax& a) {
        std::uint64_t u = words[i];
        std::uint64_t d = tables.dual_word(u);
        a.offer(detail::word_measure(tables, u, w1) * detail::word_measure(tables, d, w2), u, d);
      });
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [u, d] : acc.args)
    witnesses.push_back(detail::pair_witness(serialize(detail::family_from_word(n, u)),
                                             serialize(detail::family_from_word(n, d))));
  bool conjectural =
      t == 2 && p1 != p2 && (p1 >= Rational(50, 169) || p2 >= Rational(50, 169));
  return detail::make_report(
      TheoremId::TM1,
      {{"n", std::to_string(n)}, {"t", std::to_string(t)}, {"p1", p1.str()}, {"p2", p2.str()}},
      SearchMode::kExhaustive, acc.best, (p1 * p2).pow(t), std::move(witnesses), conjectural,
      std::nullopt, std::nullopt);
}

// Minimum-measure bound: min(μ_p(F1), μ_p(F2)) ≤ μ_p(K(n,t)) for p ≥ 1/2.
inline VerificationReport verify_tm3(int n, int t, const Rational& p, int workers = 1) {
  detail::require(t >= 1 && t <= n, "tm3 requires 1 <= t <= n, got t=" + std::to_string(t) +
                                        ", n=" + std::to_string(n));
  detail::require(n <= 5, "tm3 search supports n <= 5, got n=" + std::to_string(n));
  detail::require(Rational(1, 2) <= p && p < Rational(1),
                  "p=" + p.str() + " is outside the theorem hypothesis 1/2 <= p < 1");
  detail::CubeTables tables(n, t);
  std::vector<std::uint64_t> words = detail::upset_words(n);
  std::vector<Rational> w = detail::biased_weights(n, p);
  detail::TieMax acc =
      detail::scan_range(words.size(), workers, [&](std::uint64_t i, detail::TieMax& a) {
        std::uint64_t u = words[i];
        std::uint64_t d = tables.dual_word(u);
        Rational m1 = detail::word_measure(tables, u, w);
        Rational m2 = detail::word_measure(tables, d, w);
        a.offer(m1 < m2 ? m1 : m2, u, d);
      });
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [u, d] : acc.args)
    witnesses.push_back(detail::pair_witness(serialize(detail::family_from_word(n, u)),
                                             serialize(detail::family_from_word(n, d))));
  return detail::make_report(
      TheoremId::TM3,
      {{"n", std::to_string(n)}, {"t", std::to_string(t)}, {"p", p.str()}},
      SearchMode::kExhaustive, acc.best, measure(katona_family(n, t), p), std::move(witnesses),
      false, std::nullopt, std::nullopt);
}

// Single-family size bound: a t-intersecting family on [n] has at most
// |K(n,t)| members.  Up-sets suffice since up-closure preserves the
// property and never shrinks a family.
inline VerificationReport verify_katona_single(int n, int t, int workers = 1) {
  detail::require(t >= 1 && t <= n, "katona requires 1 <= t <= n, got t=" + std::to_string(t) +
                                        ", n=" + std::to_string(n));
  detail::require(n <= 5, "katona search supports n <= 5, got n=" + std::to_string(n));
  detail::CubeTables tables(n, t);
  std::vector<std::uint64_t> words = detail::upset_words(n);
  detail::TieMax acc =
      detail::scan_range(words.size(), workers, [&](std::uint64_t i, detail::TieMax& a) {
        std::uint64_t u = words[i];
        if ((u & ~tables.dual_word(u)) != 0) return;  // not t-intersecting
        a.offer(Rational(std::popcount(u)), u, 0);
      });
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [u, d] : acc.args) witnesses.push_back(serialize(detail::family_from_word(n, u)));
  return detail::make_report(TheoremId::KATONA,
                             {{"n", std::to_string(n)}, {"t", std::to_string(t)}},
                             SearchMode::kExhaustive, acc.best,
                             Rational(BigInt(katona_family(n, t).size())), std::move(witnesses),
                             false, std::nullopt, std::nullopt);
}

// Cross-t-intersecting sequence families: |H1| |H2| ≤ (m^{n-t})^2.
inline VerificationReport verify_tm2(int m, int n, int t, SearchMode mode, long long trials = 0,
                                     std::uint64_t seed = 0, int workers = 1) {
  detail::require(m >= 2, "tm2 requires alphabet size m >= 2, got m=" + std::to_string(m));
  detail::require(t >= 1 && t <= n, "tm2 requires 1 <= t <= n, got t=" + std::to_string(t) +
                                        ", n=" + std::to_string(n));
  detail::require(m >= t + 1, "tm2 requires m >= t+1, got m=" + std::to_string(m) +
                                  ", t=" + std::to_string(t));
  std::uint64_t cap = mode == SearchMode::kExhaustive ? 16 : 27;
  const char* label = mode == SearchMode::kExhaustive ? "tm2 exhaustive mode: universe m^n"
                                                      : "tm2 sampled mode: universe m^n";
  std::uint32_t k = static_cast<std::uint32_t>(detail::checked_power(m, n, cap, label));
  if (mode == SearchMode::kSampled)
    detail::require(trials >= 1, "sampled mode requires trials >= 1");
  std::vector<std::uint64_t> bad = detail::seq_bad_table(k, [&](std::uint32_t x, std::uint32_t y) {
    return detail::agreement_total(m, n, x, y) < t;
  });
  // First coordinate is the most significant digit, so the cylinder pinning
  // the first t coordinates to symbol 1 is exactly the first m^{n-t} indices.
  std::uint64_t structured = (std::uint64_t{1} << detail::checked_power(m, n - t, 63, label)) - 1;
  detail::TieMax acc = detail::seq_pair_extremum(bad, k, mode, trials, seed, structured, workers);
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [h, d] : acc.args)
    witnesses.push_back(detail::pair_witness(serialize(detail::seq_family_from_word(m, n, k, h)),
                                             serialize(detail::seq_family_from_word(m, n, k, d))));
  BigInt side = boost::multiprecision::pow(BigInt(m), n - t);
  bool conjectural = m == t + 1 && t >= 3 && t <= 13;
  bool sampled = mode == SearchMode::kSampled;
  return detail::make_report(
      TheoremId::TM2,
      {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"t", std::to_string(t)}},
      mode, acc.best, Rational(BigInt(side * side)), std::move(witnesses), conjectural,
      sampled ? std::optional<long long>(trials) : std::nullopt,
      sampled ? std::optional<std::uint64_t>(seed) : std::nullopt);
}

// Per-symbol thresholds: cross-(t_1,...,t_m)-intersecting families satisfy
// |H1| |H2| ≤ (m^{n-Σt})^2.  The binary (1,1) instance is the classical
// intersecting-union condition with bound 2^{2n-4}.
inline VerificationReport verify_tm4(int m, int n, const std::vector<int>& tvec, SearchMode mode,
                                     long long trials = 0, std::uint64_t seed = 0,
                                     int workers = 1) {
  detail::require(m >= 2, "tm4 requires alphabet size m >= 2, got m=" + std::to_string(m));
  detail::require_tvec(tvec, m, n);
  int total_t = 0;
  for (int i = 0; i < m; ++i) {
    detail::require(m >= tvec[i] + 1, "tm4 requires m >= t_i+1 for every symbol, got m=" +
                                          std::to_string(m) + ", t_" + std::to_string(i + 1) +
                                          "=" + std::to_string(tvec[i]));
    total_t += tvec[i];
  }
  std::uint64_t cap = mode == SearchMode::kExhaustive ? 16 : 27;
  const char* label = mode == SearchMode::kExhaustive ? "tm4 exhaustive mode: universe m^n"
                                                      : "tm4 sampled mode: universe m^n";
  std::uint32_t k = static_cast<std::uint32_t>(detail::checked_power(m, n, cap, label));
  if (mode == SearchMode::kSampled)
    detail::require(trials >= 1, "sampled mode requires trials >= 1");
  std::vector<std::uint64_t> bad = detail::seq_bad_table(k, [&](std::uint32_t x, std::uint32_t y) {
    return !detail::agreement_meets(m, n, x, y, tvec);
  });
  // Structured candidate: t_1 leading 1s, then t_2 2s, and so on, remaining
  // coordinates free.
  std::vector<int> prefix;
  for (int sym = 1; sym <= m; ++sym)
    for (int c = 0; c < tvec[sym - 1]; ++c) prefix.push_back(sym);
  SeqFamily probe = SeqFamily::empty_family(m, n);
  std::uint64_t structured = 0;
  for (std::uint32_t x = 0; x < k; ++x) {
    std::vector<int> digits = probe.decode(x);
    if (std::equal(prefix.begin(), prefix.end(), digits.begin()))
      structured |= std::uint64_t{1} << x;
  }
  detail::TieMax acc = detail::seq_pair_extremum(bad, k, mode, trials, seed, structured, workers);
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [h, d] : acc.args)
    witnesses.push_back(detail::pair_witness(serialize(detail::seq_family_from_word(m, n, k, h)),
                                             serialize(detail::seq_family_from_word(m, n, k, d))));
  BigInt side = boost::multiprecision::pow(BigInt(m), n - total_t);
  bool conjectural = false;
  for (int ti : tvec) conjectural |= m == ti + 1 && ti >= 3 && ti <= 13;
  std::string tvec_text;
  for (int i = 0; i < m; ++i) tvec_text += (i ? "," : "") + std::to_string(tvec[i]);
  bool iu = m == 2 && tvec == std::vector<int>{1, 1};
  bool sampled = mode == SearchMode::kSampled;
  return detail::make_report(
      iu ? TheoremId::IU : TheoremId::TM4,
      {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"tvec", "(" + tvec_text + ")"}},
      mode, acc.best, Rational(BigInt(side * side)), std::move(witnesses), conjectural,
      sampled ? std::optional<long long>(trials) : std::nullopt,
      sampled ? std::optional<std::uint64_t>(seed) : std::nullopt);
}

// Single t-intersecting sequence family: |H| ≤ m^{n-t} for m ≥ t+1.
inline VerificationReport verify_af(int m, int n, int t, int workers = 1) {
  detail::require(t >= 1 && t <= n, "af requires 1 <= t <= n, got t=" + std::to_string(t) +
                                        ", n=" + std::to_string(n));
  detail::require(m >= t + 1, "af requires m >= t+1, got m=" + std::to_string(m) +
                                  ", t=" + std::to_string(t));
  std::uint32_t k = static_cast<std::uint32_t>(
      detail::checked_power(m, n, 16, "af exhaustive search: universe m^n"));
  std::vector<std::uint64_t> bad = detail::seq_bad_table(k, [&](std::uint32_t x, std::uint32_t y) {
    return detail::agreement_total(m, n, x, y) < t;
  });
  detail::TieMax acc =
      detail::scan_range(std::uint64_t{1} << k, workers, [&](std::uint64_t h, detail::TieMax& a) {
        if ((h & ~detail::seq_dual_word(bad, h)) != 0) return;  // not t-intersecting
        a.offer(Rational(std::popcount(h)), h, 0);
      });
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [h, d] : acc.args)
    witnesses.push_back(serialize(detail::seq_family_from_word(m, n, k, h)));
  return detail::make_report(
      TheoremId::AF,
      {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"t", std::to_string(t)}},
      SearchMode::kExhaustive, acc.best,
      Rational(BigInt(boost::multiprecision::pow(BigInt(m), n - t))), std::move(witnesses), false,
      std::nullopt, std::nullopt);
}

// Cross-t-intersecting uniform layers: A in the k-layer, partner in the
// l-layer, |A| |B| ≤ C(n-t, k-t) C(n-t, l-t) under the le1 hypothesis.
inline VerificationReport verify_uniform_cross(int n, int k, int l, int t, SearchMode mode,
                                               long long trials = 0, std::uint64_t seed = 0,
                                               int workers = 1) {
  detail::require(t >= 3 && l >= t && k >= l,
                  "le1 requires k >= l >= t >= 3, got k=" + std::to_string(k) +
                      ", l=" + std::to_string(l) + ", t=" + std::to_string(t));
  detail::require(n >= (t + 1) * (k - t + 1),
                  "le1 requires n >= (t+1)(k-t+1), got n=" + std::to_string(n) +
                      " < " + std::to_string((t + 1) * (k - t + 1)));
  detail::require(n <= SetFamily::kMaxGround, "le1: n exceeds the ground-set limit");
  std::uint64_t layer_size = binomial(n, k);
  if (mode == SearchMode::kExhaustive)
    detail::require(layer_size <= 16, "le1 exhaustive mode requires (n choose k) <= 16, got " +
                                          std::to_string(layer_size) + "; use sampled");
  else
    detail::require(layer_size <= 64, "le1 sampled mode supports (n choose k) <= 64, got " +
                                          std::to_string(layer_size));
  if (mode == SearchMode::kSampled)
    detail::require(trials >= 1, "sampled mode requires trials >= 1");
  std::vector<Mask> ksets, lsets;
  for_each_subset_of_size(n, k, [&](Mask m) { ksets.push_back(m); });
  for_each_subset_of_size(n, l, [&](Mask m) { lsets.push_back(m); });
  std::vector<std::uint64_t> bad(lsets.size(), 0);
  for (std::size_t j = 0; j < lsets.size(); ++j)
    for (std::size_t i = 0; i < ksets.size(); ++i)
      if (popcount(ksets[i] & lsets[j]) < t) bad[j] |= std::uint64_t{1} << i;
  auto evaluate = [&](std::uint64_t a, detail::TieMax& acc) {
    std::uint64_t bw = 0;
    for (std::size_t j = 0; j < lsets.size(); ++j)
      if ((a & bad[j]) == 0) bw |= std::uint64_t{1} << j;
    std::uint64_t value = static_cast<std::uint64_t>(std::popcount(a)) *
                          static_cast<std::uint64_t>(std::popcount(bw));
    acc.offer(Rational(BigInt(value)), a, bw);
  };
  detail::TieMax acc;
  if (mode == SearchMode::kExhaustive) {
    acc = detail::scan_range(std::uint64_t{1} << layer_size, workers, evaluate);
  } else {
    std::uint64_t kmask =
        layer_size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << layer_size) - 1;
    std::uint64_t structured = 0;
    Mask core = full_mask(t);
    for (std::size_t i = 0; i < ksets.size(); ++i)
      if ((ksets[i] & core) == core) structured |= std::uint64_t{1} << i;
    acc = detail::scan_range(static_cast<std::uint64_t>(trials) + 1, workers,
                             [&](std::uint64_t i, detail::TieMax& a) {
                               std::uint64_t w =
                                   i == 0 ? structured : splitmix64_at(seed, i - 1) & kmask;
                               evaluate(w, a);
                             });
  }
  auto layer_family = [&](const std::vector<Mask>& sets, std::uint64_t word) {
    std::vector<Mask> members;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if ((word >> i) & 1) members.push_back(sets[i]);
    return SetFamily(n, std::move(members));
  };
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [a, bw] : acc.args)
    witnesses.push_back(detail::pair_witness(serialize(layer_family(ksets, a)),
                                             serialize(layer_family(lsets, bw))));
  bool sampled = mode == SearchMode::kSampled;
  return detail::make_report(
      TheoremId::LE1,
      {{"n", std::to_string(n)},
       {"k", std::to_string(k)},
       {"l", std::to_string(l)},
       {"t", std::to_string(t)}},
      mode, acc.best, Rational(BigInt(binomial(n - t, k - t) * binomial(n - t, l - t))),
      std::move(witnesses), false,
      sampled ? std::optional<long long>(trials) : std::nullopt,
      sampled ? std::optional<std::uint64_t>(seed) : std::nullopt);
}

// Daykin-style layered bound: if A in the a-layer and B in the b-layer are
// cross intersecting and |A| ≥ C(n-1, a-1), then |B| ≤ C(n-1, b-1).  Checks
// the maximal partner of every qualifying A.
inline VerificationReport verify_daykin(int n, int a, int b, int workers = 1) {
  detail::require(a >= 1 && b >= 1, "le8 requires a, b >= 1");
  detail::require(n >= a + b, "le8 requires n >= a+b, got n=" + std::to_string(n) + ", a=" +
                                  std::to_string(a) + ", b=" + std::to_string(b));
  std::uint64_t layer_size = binomial(n, a);
  detail::require(layer_size <= 16, "le8 requires (n choose a) <= 16, got " +
                                        std::to_string(layer_size));
  std::vector<Mask> asets, bsets;
  for_each_subset_of_size(n, a, [&](Mask m) { asets.push_back(m); });
  for_each_subset_of_size(n, b, [&](Mask m) { bsets.push_back(m); });
  std::vector<std::uint64_t> bad(bsets.size(), 0);
  for (std::size_t j = 0; j < bsets.size(); ++j)
    for (std::size_t i = 0; i < asets.size(); ++i)
      if ((asets[i] & bsets[j]) == 0) bad[j] |= std::uint64_t{1} << i;
  std::uint64_t qualifier = binomial(n - 1, a - 1);
  detail::TieMax acc = detail::scan_range(
      std::uint64_t{1} << layer_size, workers, [&](std::uint64_t aw, detail::TieMax& accw) {
        if (static_cast<std::uint64_t>(std::popcount(aw)) < qualifier) return;
        std::uint64_t bw = 0;
        for (std::size_t j = 0; j < bsets.size(); ++j)
          if ((aw & bad[j]) == 0) bw |= std::uint64_t{1} << j;
        accw.offer(Rational(std::popcount(bw)), aw, bw);
      });
  auto layer_family = [&](const std::vector<Mask>& sets, std::uint64_t word) {
    std::vector<Mask> members;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if ((word >> i) & 1) members.push_back(sets[i]);
    return SetFamily(n, std::move(members));
  };
  std::vector<std::string> witnesses;
  witnesses.reserve(acc.args.size());
  for (auto [aw, bw] : acc.args)
    witnesses.push_back(detail::pair_witness(serialize(layer_family(asets, aw)),
                                             serialize(layer_family(bsets, bw))));
  return detail::make_report(
      TheoremId::LE8,
      {{"n", std::to_string(n)}, {"a", std::to_string(a)}, {"b", std::to_string(b)}},
      SearchMode::kExhaustive, acc.best, Rational(BigInt(binomial(n - 1, b - 1))),
      std::move(witnesses), false, std::nullopt, std::nullopt);
}

// Reduction from sequence products to biased set-family products:
// max |H1| |H2| ≤ m^{2n} max μ_{1/m}(F1) μ_{1/m}(F2), both sides computed
// exhaustively.
inline VerificationReport verify_le3_reduction(int m, int n, int t, int workers = 1) {
  detail::require(m >= 2, "le3 requires alphabet size m >= 2, got m=" + std::to_string(m));
  detail::require(t >= 1 && t <= n, "le3 requires 1 <= t <= n, got t=" + std::to_string(t) +
                                        ", n=" + std::to_string(n));
  detail::require(n <= 5, "le3 requires n <= 5, got n=" + std::to_string(n));
  std::uint32_t k = static_cast<std::uint32_t>(
      detail::checked_power(m, n, 16, "le3 exhaustive search: universe m^n"));
  std::vector<std::uint64_t> bad = detail::seq_bad_table(k, [&](std::uint32_t x, std::uint32_t y) {
    return detail::agreement_total(m, n, x, y) < t;
  });
  detail::TieMax lhs =
      detail::seq_pair_extremum(bad, k, SearchMode::kExhaustive, 0, 0, 0, workers);
  detail::CubeTables tables(n, t);
  std::vector<std::uint64_t> words = detail::upset_words(n);
  std::vector<Rational> w = detail::biased_weights(n, Rational(1, m));
  detail::TieMax rhs =
      detail::scan_range(words.size(), workers, [&](std::uint64_t i, detail::TieMax& a) {
        std::uint64_t u = words[i];
        std::uint64_t d = tables.dual_word(u);
        a.offer(detail::word_measure(tables, u, w) * detail::word_measure(tables, d, w), u, d);
      });
  std::vector<std::string> witnesses;
  witnesses.reserve(lhs.args.size());
  for (auto [h, d] : lhs.args)
    witnesses.push_back(detail::pair_witness(serialize(detail::seq_family_from_word(m, n, k, h)),
                                             serialize(detail::seq_family_from_word(m, n, k, d))));
  Rational bound = Rational(BigInt(m)).pow(2 * n) * rhs.best;
  return detail::make_report(
      TheoremId::LE3,
      {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"t", std::to_string(t)}},
      SearchMode::kExhaustive, lhs.best, bound, std::move(witnesses), false, std::nullopt,
      std::nullopt);
}

// The full desk-scale verification grid, in a fixed order.  Every entry is
// exact; the whole sweep is CI-sized.
inline std::vector<VerificationReport> run_desk_suite(int workers = 1) {
  std::vector<VerificationReport> out;
  for (int t : {1, 3})
    for (int n = t; n <= 5; ++n) {
      std::vector<Rational> grid{Rational(1, 8), Rational(1, 6), Rational(1, 5),
                                 Rational(1, t + 2)};
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      for (const Rational& p1 : grid)
        for (const Rational& p2 : grid) out.push_back(verify_tm1(n, t, p1, p2, workers));
    }
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= n; ++t)
      for (const Rational& p : {Rational(1, 2), Rational(2, 3), Rational(3, 4)})
        out.push_back(verify_tm3(n, t, p, workers));
  out.push_back(verify_tm2(3, 2, 1, SearchMode::kExhaustive, 0, 0, workers));
  out.push_back(verify_tm2(4, 2, 1, SearchMode::kExhaustive, 0, 0, workers));
  out.push_back(verify_tm2(4, 2, 2, SearchMode::kExhaustive, 0, 0, workers));
  out.push_back(verify_tm4(3, 2, {1, 1, 0}, SearchMode::kExhaustive, 0, 0, workers));
  out.push_back(verify_tm4(2, 3, {1, 1}, SearchMode::kExhaustive, 0, 0, workers));
  out.push_back(verify_tm4(2, 4, {1, 1}, SearchMode::kExhaustive, 0, 0, workers));
  out.push_back(verify_af(3, 2, 1, workers));
  out.push_back(verify_af(4, 2, 2, workers));
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= n; ++t) out.push_back(verify_katona_single(n, t, workers));
  for (int m = 2; m <= 16; ++m)
    for (int n = 1; n <= 5; ++n) {
      std::uint64_t universe = 1;
      bool fits = true;
      for (int i = 0; i < n; ++i) {
        universe *= static_cast<std::uint64_t>(m);
        if (universe > 16) fits = false;
      }
      if (!fits) continue;
      for (int t = 1; t <= n; ++t) out.push_back(verify_le3_reduction(m, n, t, workers));
    }
  out.push_back(verify_daykin(4, 2, 2, workers));
  out.push_back(verify_daykin(5, 2, 3, workers));
  out.push_back(verify_uniform_cross(4, 3, 3, 3, SearchMode::kExhaustive, 0, 0, workers));
  out.push_back(verify_uniform_cross(5, 3, 3, 3, SearchMode::kExhaustive, 0, 0, workers));
  return out;
}

}  // namespace xfam
