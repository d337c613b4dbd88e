#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fdsi/instance.hpp"
#include "fdsi/rational.hpp"

namespace fdsi {

enum class Base { EF, EF1, sEF1, wEF1, swEF1, EFL, tEF1, SAEmpty };

enum class Awareness { None, SA, AlphaSA, WSA };

inline constexpr std::array<Base, 7> kEnvyNotions = {Base::EF,    Base::EF1,  Base::sEF1, Base::wEF1,
                                                     Base::swEF1, Base::EFL,  Base::tEF1};

constexpr bool is_weighted(Base b) noexcept { return b == Base::wEF1 || b == Base::swEF1; }
constexpr bool is_target_based(Base b) noexcept { return b == Base::sEF1 || b == Base::swEF1; }

inline std::string to_string(Base b) {
  switch (b) {
    case Base::EF: return "EF";
    case Base::EF1: return "EF1";
    case Base::sEF1: return "sEF1";
    case Base::wEF1: return "wEF1";
    case Base::swEF1: return "swEF1";
    case Base::EFL: return "EFL";
    case Base::tEF1: return "tEF1";
    case Base::SAEmpty: return "SA-empty";
  }
  return "?";
}

// A fairness notion: a base envy criterion plus how observers may excuse envy.
// SA-empty is standalone and ignores the awareness fields.
struct Notion {
  Base base = Base::EF1;
  Awareness awareness = Awareness::None;
  Rational alpha{1};

  static Notion plain(Base b) { return {b, Awareness::None, Rational(1)}; }
  static Notion sa(Base b) { return {b, Awareness::SA, Rational(1)}; }
  static Notion alpha_sa(Base b, Rational a) { return {b, Awareness::AlphaSA, a}; }
  static Notion wsa(Base b) { return {b, Awareness::WSA, Rational(1)}; }
  static Notion sa_empty() { return {Base::SAEmpty, Awareness::None, Rational(1)}; }

  void validate() const {
    if (awareness == Awareness::AlphaSA && (alpha < Rational(0) || alpha > Rational(1)))
      throw std::invalid_argument("alpha must lie in [0, 1], got " + alpha.to_string());
  }

  std::string name() const {
    if (base == Base::SAEmpty) return "SA-empty";
    switch (awareness) {
      case Awareness::None: return to_string(base);
      case Awareness::SA: return "SA-" + to_string(base);
      case Awareness::AlphaSA: return alpha.to_string() + "-SA-" + to_string(base);
      case Awareness::WSA: return "WSA-" + to_string(base);
    }
    return to_string(base);
  }

  friend bool operator==(const Notion&, const Notion&) = default;
};

// Which agents apply their social-awareness override. Defaults to the
// instance's per-agent flags.
struct AwarenessProfile {
  std::vector<bool> aware;

  static AwarenessProfile from(const Instance& inst) {
    AwarenessProfile p;
    for (AgentId i = 0; i < inst.num_agents(); ++i) p.aware.push_back(inst.is_aware(i));
    return p;
  }
  static AwarenessProfile uniform(std::size_t n, bool value) { return {std::vector<bool>(n, value)}; }

  bool is_aware(AgentId i) const { return i < aware.size() && aware[i]; }
};

// Why an allocation failed. For pairwise notions (observer, target) is the
// lexicographically first failing ordered pair; for SIM, item and
// better_agent identify a misplaced item.
struct Witness {
  std::string condition;
  std::optional<AgentId> observer;
  std::optional<AgentId> target;
  std::optional<ItemId> item;
  std::optional<AgentId> better_agent;
  std::size_t candidates_examined = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Verdict {
  bool fair = true;
  std::optional<Witness> witness;

  static Verdict ok() { return {}; }
  static Verdict fail(Witness w) { return {false, std::move(w)}; }
  explicit operator bool() const noexcept { return fair; }
};

}  // namespace fdsi
