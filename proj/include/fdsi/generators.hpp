#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fdsi/brute_force.hpp"
#include "fdsi/instance.hpp"
#include "fdsi/notion.hpp"
#include "fdsi/rational.hpp"

namespace fdsi {

// Source-problem oracles enumerate exhaustively; anything above this is
// refused rather than left to run for hours.
inline constexpr std::size_t kMaxSourceEll = 10;

// ---------------------------------------------------------------------------
// Source problems

struct PartitionInput {
  std::vector<Value> weights;

  Value total() const { return std::accumulate(weights.begin(), weights.end(), Value{0}); }
  Value target() const { return total() / 2; }  // t

  // Partition gadgets need positive weights with an even sum. The hardness
  // argument also assumes every weight is below t; that part is optional
  // because small hand examples routinely break it.
  std::vector<std::string> validate_partition(bool require_below_t = false) const {
    std::vector<std::string> problems;
    if (weights.empty()) problems.push_back("weights must not be empty");
    for (Value w : weights)
      if (w < 1) problems.push_back("weight " + std::to_string(w) + " is not positive");
    if (total() % 2 != 0) problems.push_back("weight sum " + std::to_string(total()) + " is odd");
    for (Value w : weights)
      if (require_below_t && w >= target()) {
        problems.push_back("weight " + std::to_string(w) + " is not below t = " + std::to_string(target()));
        break;
      }
    return problems;
  }

  // Equitable variant: |W| = 2l with l > 4, and every subset of fewer than
  // l weights sums below t. The binding subsets are the l-1 largest weights.
  std::vector<std::string> validate_equitable() const {
    std::vector<std::string> problems;
    for (Value w : weights)
      if (w < 1) problems.push_back("weight " + std::to_string(w) + " is not positive");
    if (weights.size() % 2 != 0) problems.push_back("equitable partition needs an even number of weights");
    const std::size_t ell = weights.size() / 2;
    if (ell <= 4) problems.push_back("equitable partition gadget needs l > 4, got l = " + std::to_string(ell));
    if (total() % 2 != 0) problems.push_back("weight sum " + std::to_string(total()) + " is odd");
    if (problems.empty()) {
      std::vector<Value> sorted = weights;
      std::sort(sorted.rbegin(), sorted.rend());
      const Value largest = std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(ell - 1),
                                            Value{0});
      if (largest >= target())
        problems.push_back("the " + std::to_string(ell - 1) + " largest weights sum to " + std::to_string(largest) +
                           ", not below t = " + std::to_string(target()));
    }
    return problems;
  }
};

// Restricted exact cover by 3-sets: 3l elements (0-based), 3l triples.
struct RX3CInput {
  std::size_t ell = 0;
  std::vector<std::array<std::size_t, 3>> triples;

  enum class Mode {
    Strict,   // each element in exactly three triples, pairwise intersections <= 1
    Relaxed,  // as Strict, but only requires the triples to be distinct
    Regular,  // shape and degree only
  };

  std::size_t num_elements() const noexcept { return 3 * ell; }

  std::vector<std::string> validate(Mode mode = Mode::Strict) const {
    std::vector<std::string> problems;
    if (ell == 0) problems.push_back("l must be positive");
    if (triples.size() != 3 * ell)
      problems.push_back("expected " + std::to_string(3 * ell) + " triples, got " + std::to_string(triples.size()));
    std::vector<std::size_t> degree(num_elements(), 0);
    for (std::size_t k = 0; k < triples.size(); ++k) {
      const auto& s = triples[k];
      if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
        problems.push_back("triple " + std::to_string(k) + " repeats an element");
      for (std::size_t e : s) {
        if (e >= num_elements()) {
          problems.push_back("triple " + std::to_string(k) + " names element " + std::to_string(e) +
                             " outside the universe");
          continue;
        }
        ++degree[e];
      }
    }
    for (std::size_t e = 0; e < degree.size(); ++e)
      if (degree[e] != 3)
        problems.push_back("element " + std::to_string(e) + " lies in " + std::to_string(degree[e]) +
                           " triples, expected 3");
    if (mode == Mode::Regular) return problems;
    for (std::size_t a = 0; a < triples.size(); ++a)
      for (std::size_t b = a + 1; b < triples.size(); ++b) {
        std::size_t common = 0;
        for (std::size_t x : triples[a])
          for (std::size_t y : triples[b]) common += x == y ? 1 : 0;
        if (mode == Mode::Strict && common > 1)
          problems.push_back("triples " + std::to_string(a) + " and " + std::to_string(b) + " share " +
                             std::to_string(common) + " elements");
        if (mode == Mode::Relaxed && common == 3)
          problems.push_back("triples " + std::to_string(a) + " and " + std::to_string(b) + " are identical");
      }
    return problems;
  }
};

// ---------------------------------------------------------------------------
// Source oracles

/// Indices J with sum(W_J) = t, or nullopt. Exhaustive over subsets.
inline std::optional<std::vector<std::size_t>> solve_partition(const PartitionInput& in) {
  const std::size_t ell = in.weights.size();
  if (ell > kMaxSourceEll) throw BudgetExceeded("partition oracle is capped at l <= 10");
  if (in.total() % 2 != 0) return std::nullopt;
  for (std::uint32_t mask = 0; mask < (1u << ell); ++mask) {
    Value sum = 0;
    for (std::size_t j = 0; j < ell; ++j)
      if (mask >> j & 1u) sum += in.weights[j];
    if (sum != in.target()) continue;
    std::vector<std::size_t> J;
    for (std::size_t j = 0; j < ell; ++j)
      if (mask >> j & 1u) J.push_back(j);
    return J;
  }
  return std::nullopt;
}

/// As solve_partition, with |J| = |W| / 2.
inline std::optional<std::vector<std::size_t>> solve_equitable_partition(const PartitionInput& in) {
  const std::size_t size = in.weights.size();
  if (size > 2 * kMaxSourceEll) throw BudgetExceeded("equitable partition oracle is capped at l <= 10");
  if (size % 2 != 0 || in.total() % 2 != 0) return std::nullopt;
  for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != size / 2) continue;
    Value sum = 0;
    for (std::size_t j = 0; j < size; ++j)
      if (mask >> j & 1u) sum += in.weights[j];
    if (sum != in.target()) continue;
    std::vector<std::size_t> J;
    for (std::size_t j = 0; j < size; ++j)
      if (mask >> j & 1u) J.push_back(j);
    return J;
  }
  return std::nullopt;
}

/// l pairwise disjoint triples covering the universe, or nullopt.
inline std::optional<std::vector<std::size_t>> solve_exact_cover(const RX3CInput& in) {
  if (in.ell > kMaxSourceEll) throw BudgetExceeded("exact cover oracle is capped at l <= 10");
  std::vector<bool> covered(in.num_elements(), false);
  std::vector<std::size_t> chosen;
  // Branch on the lowest uncovered element.
  std::function<bool()> search = [&]() -> bool {
    std::size_t e = 0;
    while (e < covered.size() && covered[e]) ++e;
    if (e == covered.size()) return true;
    for (std::size_t k = 0; k < in.triples.size(); ++k) {
      const auto& s = in.triples[k];
      if (s[0] != e && s[1] != e && s[2] != e) continue;
      if (covered[s[0]] || covered[s[1]] || covered[s[2]]) continue;
      for (std::size_t x : s) covered[x] = true;
      chosen.push_back(k);
      if (search()) return true;
      chosen.pop_back();
      for (std::size_t x : s) covered[x] = false;
    }
    return false;
  };
  if (!search()) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

/// Whether a complete envy-free allocation exists (no SIM restriction).
inline bool ef_allocation_exists(const Instance& source) {
  if (source.num_items() > kMaxSourceEll) throw BudgetExceeded("EF oracle is capped at 10 items");
  return brute_force_solve(source, Notion::plain(Base::EF), AwarenessProfile::uniform(source.num_agents(), false),
                           /*require_sim=*/false)
      .has_value();
}

// ---------------------------------------------------------------------------
// Gadgets

namespace detail {

inline Instance two_agent_frame() {
  Instance inst;
  inst.agents = {"a1", "a2"};
  inst.valuations.assign(2, {});
  inst.impacts.assign(2, {});
  inst.weights = {1, 1};
  inst.aware = {true, true};
  return inst;
}

inline void add_item(Instance& inst, std::string id, std::vector<Value> values, std::vector<Value> impacts) {
  inst.items.push_back(std::move(id));
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    inst.valuations[i].push_back(values[i]);
    inst.impacts[i].push_back(impacts[i]);
  }
}

inline void add_small_items(Instance& inst, const std::vector<Value>& weights, Value impact = 1) {
  for (std::size_t j = 0; j < weights.size(); ++j)
    add_item(inst, "g" + std::to_string(j + 1), {weights[j], weights[j]}, {impact, impact});
}

inline void require_partition(const PartitionInput& in) {
  auto problems = in.validate_partition();
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

}  // namespace detail

/// Two agents; G1 only a1 maximizes (worth 0 to a1, t to a2), G2 mirrored,
/// small items g_j worth w_j to both and maximized by both. With
/// duplicate_large every large item appears twice (the tEF1 variant).
inline Instance gen_partition_ef1(const PartitionInput& in, bool duplicate_large = false) {
  detail::require_partition(in);
  const Value t = in.target();
  Instance inst = detail::two_agent_frame();
  detail::add_item(inst, "G1", {0, t}, {1, 0});
  if (duplicate_large) detail::add_item(inst, "G1b", {0, t}, {1, 0});
  detail::add_item(inst, "G2", {t, 0}, {0, 1});
  if (duplicate_large) detail::add_item(inst, "G2b", {t, 0}, {0, 1});
  detail::add_small_items(inst, in.weights);
  return inst;
}

/// a1 unaware, a2 aware. G1, G2: a1 (s=0, v=t), a2 (s=1, v=0); G3 both
/// (s=1, v=t); small items s=1, v=w_j for both.
inline Instance gen_mixed_awareness(const PartitionInput& in) {
  detail::require_partition(in);
  const Value t = in.target();
  Instance inst = detail::two_agent_frame();
  inst.aware = {false, true};
  detail::add_item(inst, "G1", {t, 0}, {0, 1});
  detail::add_item(inst, "G2", {t, 0}, {0, 1});
  detail::add_item(inst, "G3", {t, t}, {1, 1});
  detail::add_small_items(inst, in.weights);
  return inst;
}

struct AlphaGadgetScale {
  Value x = 0;       // a1's impact on G1, G2
  Value y = 0;       // a2's impact on G3
  Value factor = 1;  // common multiplier applied to every impact
};

/// x = 2l/alpha and y = l/alpha for alpha = p/q, made integral by
/// multiplying all impacts by p / gcd(p, l q).
inline AlphaGadgetScale alpha_gadget_scale(std::size_t ell, const Rational& alpha) {
  if (alpha <= Rational(0) || alpha > Rational(1))
    throw ValidationError("alpha gadget needs 0 < alpha <= 1, got " + alpha.to_string());
  const Value p = alpha.numerator();
  const Value lq = static_cast<Value>(ell) * alpha.denominator();
  AlphaGadgetScale s;
  s.factor = p / std::gcd(p, lq);
  s.y = lq * s.factor / p;
  s.x = 2 * s.y;
  return s;
}

/// Both agents aware. G1, G2: a1 (s=x, v=0), a2 (s=0, v=0); G3: a1 (s=0, v=t),
/// a2 (s=y, v=t); small items s=1, v=w_j; all impacts times the scale factor.
inline Instance gen_alpha_sa(const PartitionInput& in, const Rational& alpha) {
  detail::require_partition(in);
  const Value t = in.target();
  const auto s = alpha_gadget_scale(in.weights.size(), alpha);
  Instance inst = detail::two_agent_frame();
  detail::add_item(inst, "G1", {0, 0}, {s.x, 0});
  detail::add_item(inst, "G2", {0, 0}, {s.x, 0});
  detail::add_item(inst, "G3", {t, t}, {0, s.y});
  detail::add_small_items(inst, in.weights, s.factor);
  return inst;
}

/// Alternative alpha-SA gadget whose overrides cannot fire on an unbalanced
/// split: G1, G2 impact 1 for a1 (a2 values them t), G3 impact 1 for a2, and
/// small items impact K = ceil(2p / (q - p)) for both. The reason it exists is
/// in README.md ("alpha-SA gadget").
inline Instance gen_alpha_sa_repaired(const PartitionInput& in, const Rational& alpha) {
  detail::require_partition(in);
  if (alpha < Rational(0) || alpha >= Rational(1))
    throw ValidationError("repaired alpha gadget needs 0 <= alpha < 1, got " + alpha.to_string());
  const Value p = alpha.numerator();
  const Value q = alpha.denominator();
  const Value k = std::max<Value>(1, (2 * p + (q - p) - 1) / (q - p));
  const Value t = in.target();
  Instance inst = detail::two_agent_frame();
  detail::add_item(inst, "G1", {0, t}, {1, 0});
  detail::add_item(inst, "G2", {0, t}, {1, 0});
  detail::add_item(inst, "G3", {t, t}, {0, 1});
  detail::add_small_items(inst, in.weights, k);
  return inst;
}

/// Both agents aware. G1: a1 (s=1, v=0), a2 (s=0, v=t); G2 mirrored; 2l small
/// items s=1, v=w_j. duplicate_large doubles G1 and G2 (needed for tEF1).
inline Instance gen_wsa(const PartitionInput& in, bool duplicate_large = false) {
  auto problems = in.validate_equitable();
  if (!problems.empty()) throw ValidationError(std::move(problems));
  const Value t = in.target();
  Instance inst = detail::two_agent_frame();
  detail::add_item(inst, "G1", {0, t}, {1, 0});
  if (duplicate_large) detail::add_item(inst, "G1b", {0, t}, {1, 0});
  detail::add_item(inst, "G2", {t, 0}, {0, 1});
  if (duplicate_large) detail::add_item(inst, "G2b", {t, 0}, {0, 1});
  detail::add_small_items(inst, in.weights);
  return inst;
}

/// 3l set agents S1.. and two guards; element items u1.. and l dummies d1..;
/// every value 1. Set agent j has impact 1 on its three elements and on every
/// dummy, guards have impact 1 on every element; all else 0.
inline Instance gen_x3c_sa_empty(const RX3CInput& in, RX3CInput::Mode mode = RX3CInput::Mode::Strict) {
  auto problems = in.validate(mode);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  const std::size_t sets = in.triples.size();
  const std::size_t elements = in.num_elements();
  Instance inst;
  for (std::size_t j = 0; j < sets; ++j) inst.agents.push_back("S" + std::to_string(j + 1));
  inst.agents.push_back("guard1");
  inst.agents.push_back("guard2");
  for (std::size_t e = 0; e < elements; ++e) inst.items.push_back("u" + std::to_string(e + 1));
  for (std::size_t d = 0; d < in.ell; ++d) inst.items.push_back("d" + std::to_string(d + 1));
  const std::size_t n = inst.agents.size();
  const std::size_t m = inst.items.size();
  inst.valuations.assign(n, std::vector<Value>(m, 1));
  inst.impacts.assign(n, std::vector<Value>(m, 0));
  for (std::size_t j = 0; j < sets; ++j) {
    for (std::size_t e : in.triples[j]) inst.impacts[j][e] = 1;
    for (std::size_t d = 0; d < in.ell; ++d) inst.impacts[j][elements + d] = 1;
  }
  for (std::size_t guard = sets; guard < n; ++guard)
    for (std::size_t e = 0; e < elements; ++e) inst.impacts[guard][e] = 1;
  inst.weights.assign(n, 1);
  inst.aware.assign(n, true);
  return inst;
}

/// Embeds a binary-valuation EF instance. Source items keep their values and
/// get impact 1 for everyone; each agent i gains a special item (or two with
/// tef1_mode) worth 0 to i and 1 to others, maximized only by i.
inline Instance gen_ef_embedding(const Instance& source, bool tef1_mode = false) {
  require_valid(source);
  for (const auto& row : source.valuations)
    for (Value v : row)
      if (v != 0 && v != 1) throw ValidationError("EF embedding needs a binary-valuation source");
  const std::size_t n = source.num_agents();
  Instance inst;
  inst.agents = source.agents;
  inst.items = source.items;
  inst.valuations = source.valuations;
  inst.impacts.assign(n, std::vector<Value>(source.num_items(), 1));
  inst.weights.assign(n, 1);
  inst.aware.assign(n, true);
  const int copies = tef1_mode ? 2 : 1;
  for (AgentId owner = 0; owner < n; ++owner)
    for (int c = 1; c <= copies; ++c) {
      inst.items.push_back("x_" + source.agents[owner] + (tef1_mode ? "_" + std::to_string(c) : ""));
      for (AgentId i = 0; i < n; ++i) {
        inst.valuations[i].push_back(i == owner ? 0 : 1);
        inst.impacts[i].push_back(i == owner ? 1 : 0);
      }
    }
  return inst;
}

// ---------------------------------------------------------------------------
// Canned instances

struct CannedInstance {
  Instance instance;
  std::optional<Allocation> reference;
};

inline const std::vector<std::string>& canned_names() {
  static const std::vector<std::string> names = {"bill-joe",          "unaware-nonexistence", "alpha-nonexistence",
                                                 "wsa-nonexistence",  "tef1-vs-ef1",          "sim-unfair",
                                                 "chores-roundrobin"};
  return names;
}

/// a1 must take both unit-valued items: s_a1 = q, s_a2 = p for alpha = p/q.
inline CannedInstance canned_alpha_nonexistence(const Rational& alpha) {
  if (alpha < Rational(0) || alpha >= Rational(1))
    throw ValidationError("alpha-nonexistence needs 0 <= alpha < 1, got " + alpha.to_string());
  const Value p = alpha.numerator();
  const Value q = alpha.denominator();
  Instance inst = Instance::make({{1, 1}, {1, 1}}, {{q, q}, {p, p}});
  return {inst, Allocation::from_owners(2, std::vector<AgentId>{0, 0})};
}

/// Throws ValidationError for unknown names. "alpha-nonexistence" uses
/// alpha = 1/2; see canned_alpha_nonexistence for other values.
inline CannedInstance canned(const std::string& name) {
  if (name == "bill-joe") {
    Instance inst = Instance::make({{1, 1}, {1, 1}}, {{10, 10}, {1, 1}});
    inst.agents = {"Bill", "Joe"};
    inst.aware = {false, false};
    return {inst, Allocation::from_owners(2, std::vector<AgentId>{0, 0})};
  }
  if (name == "unaware-nonexistence") {
    Instance inst = Instance::make({{10, 10}, {10, 10}}, {{0, 0}, {1, 1}});
    inst.aware = {false, true};
    return {inst, Allocation::from_owners(2, std::vector<AgentId>{1, 1})};
  }
  if (name == "alpha-nonexistence") return canned_alpha_nonexistence(Rational(1, 2));
  if (name == "wsa-nonexistence") {
    Instance inst = Instance::make({{1, 5, 5}, {5, 5, 1}}, {{1, 1, 0}, {0, 1, 1}});
    Allocation ref(2);
    ref[0] = {0};
    ref[1] = {2, 1};
    return {inst, ref};
  }
  if (name == "tef1-vs-ef1") {
    Instance inst = Instance::make({{1, 1}, {1, 1}}, {{1, 1}, {1, 1}});
    return {inst, Allocation::from_owners(2, std::vector<AgentId>{1, 1})};
  }
  if (name == "sim-unfair") {
    Instance inst = Instance::make({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    return {inst, Allocation::from_owners(3, std::vector<AgentId>{0, 0, 0})};
  }
  if (name == "chores-roundrobin") {
    Instance inst = Instance::make({{-100, -100, -1, -1, -1}, {-100, -100, -1, -1, -1}},
                                   {{1, 1, 0, 0, 0}, {1, 1, 1, 1, 1}});
    return {inst, Allocation::from_owners(2, std::vector<AgentId>{0, 0, 1, 1, 1})};
  }
  throw ValidationError("unknown canned instance '" + name + "'");
}

// ---------------------------------------------------------------------------
// Random instances

struct RandomSpec {
  std::size_t n = 2;
  std::size_t m = 4;
  Value v_max = 9;
  Value s_max = 9;
  Value w_max = 1;
  std::uint64_t seed = 0;
};

namespace detail {

// Reduction by modulo keeps the stream identical across standard libraries.
inline Value uniform(std::mt19937_64& rng, Value lo, Value hi) {
  return lo + static_cast<Value>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace detail

/// Independent uniform entries: values in [0, v_max], impacts in [0, s_max],
/// weights in [1, w_max]; every agent aware.
inline Instance gen_random(const RandomSpec& spec) {
  if (spec.n == 0) throw ValidationError("random instance needs at least one agent");
  if (spec.v_max < 0 || spec.s_max < 0 || spec.w_max < 1)
    throw ValidationError("random instance bounds must satisfy v_max >= 0, s_max >= 0, w_max >= 1");
  std::mt19937_64 rng(spec.seed);
  Instance inst = Instance::make(std::vector<std::vector<Value>>(spec.n, std::vector<Value>(spec.m, 0)),
                                 std::vector<std::vector<Value>>(spec.n, std::vector<Value>(spec.m, 0)));
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t g = 0; g < spec.m; ++g) {
      inst.valuations[i][g] = detail::uniform(rng, 0, spec.v_max);
      inst.impacts[i][g] = detail::uniform(rng, 0, spec.s_max);
    }
  for (std::size_t i = 0; i < spec.n; ++i) inst.weights[i] = detail::uniform(rng, 1, spec.w_max);
  return inst;
}

inline Instance gen_random(std::size_t n, std::size_t m, Value v_max, Value s_max, Value w_max, std::uint64_t seed) {
  return gen_random(RandomSpec{n, m, v_max, s_max, w_max, seed});
}

}  // namespace fdsi
