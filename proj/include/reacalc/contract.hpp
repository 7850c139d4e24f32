#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reacalc/rel.hpp"

namespace rc {

// A declared channel, optionally carrying data drawn from a finite domain.
struct Channel {
  std::string name;
  std::optional<Domain> dom;
};

struct Alphabet {
  std::vector<Channel> chans;

  void add(const std::string& name, std::optional<Domain> dom);
  const Channel* find(const std::string& name) const;
  const Channel& require(const std::string& name) const;
};

bool operator==(const Alphabet& a, const Alphabet& b);
// Every concrete event over the declared channels, sorted.
std::vector<EventVal> alphabet_events(const Alphabet& a);

bool same_space(const StateSpace& a, const StateSpace& b);

// A reactive contract: divergence-freedom assumption, quiescent observations,
// and terminated observations over a shared state space and alphabet.
// `bounded` marks a contract whose calculation truncated an iteration, making
// it exact only up to the configured unrolling depth.
struct Contract {
  StateSpace space;
  Alphabet alpha;
  PreRel pre;
  PeriRel peri;
  PostRel post;
  bool bounded = false;
};

// Normalizes all three parts, collapses a false precondition to the canonical
// chaotic contract, and checks scoping.
Contract mk_contract(StateSpace space, Alphabet alpha, PreRel pre, PeriRel peri, PostRel post,
                     bool bounded = false);

bool operator==(const Contract& a, const Contract& b);
std::string show(const Contract& c);

Contract ct_skip(const StateSpace& sp, const Alphabet& al);
Contract ct_stop(const StateSpace& sp, const Alphabet& al);
Contract ct_chaos(const StateSpace& sp, const Alphabet& al);
Contract ct_miracle(const StateSpace& sp, const Alphabet& al);
Contract ct_do(const StateSpace& sp, const Alphabet& al, const EventExpr& e);
Contract ct_assign(const StateSpace& sp, const Alphabet& al, const Subst& sg);
// Always quiescent, accepting every event; used as a specification operand.
Contract ct_accept(const StateSpace& sp, const Alphabet& al);

Contract seq_contract(const Contract& a, const Contract& b);
Contract intchoice_contract(const std::vector<Contract>& cs);
Contract cond_contract(const Contract& a, const Expr& b, const Contract& c);
Contract guard_contract(const Expr& g, const Contract& p);
Contract extchoice_contract(const std::vector<Contract>& cs);

struct HealthFlags {
  bool productive = false;
  bool instantaneous = false;
  bool cacc = false;
  bool cdc = true;
};

HealthFlags health_flags(const Contract& c);

// Loop calculation, unrolled to star_bound iterations.
Contract while_contract(const Expr& b, const Contract& body, int star_bound);
// Bounded Kleene iteration of a whole contract.
Contract iterate_contract(const Contract& c, int star_bound);

}  // namespace rc
