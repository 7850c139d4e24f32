#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reacalc/proc.hpp"

namespace rc {

struct Bounds {
  int trace_len = 4;
  int star_bound = 3;
  unsigned long long state_limit = kDefaultStateLimit;
};

using CTrace = std::vector<EventVal>;

int ctrace_cmp(const CTrace& a, const CTrace& b);
std::string show_ctrace(const CTrace& t);

// A single bounded-semantics observation: a stable waiting point with its
// offered events, a termination with its final state, or a divergence prefix.
struct Observation {
  enum class Kind { Quiescent, Terminated, Divergence };
  Kind kind = Kind::Quiescent;
  CTrace trace;
  std::vector<EventVal> accepts;  // Quiescent
  State final;                    // Terminated
};

Observation obs_q(CTrace t, std::vector<EventVal> accepts);
Observation obs_t(CTrace t, State final);
Observation obs_d(CTrace t);
int obs_cmp(const Observation& a, const Observation& b);
bool operator==(const Observation& a, const Observation& b);
std::string show(const Observation& o);

// Sorted, duplicate-free.
using ObsSet = std::vector<Observation>;
ObsSet obs_normalize(std::vector<Observation> v);

// Reads a contract pointwise at `init`: quiescent observations from enabled
// acceptance entries, terminations from finaliser images, divergences (with
// all in-bound extensions) from violated assumption terms. Disjuncts whose
// condition, trace, or update cannot be evaluated at `init`, or whose trace
// leaves the declared alphabet, contribute nothing.
ObsSet denote_bounded(const Contract& c, const State& init, const Bounds& b);

// Small-step execution configurations. External choice and parallel branches
// carry their own state copies; the choice resolves on visible events or
// termination, never on internal steps.
struct Conf;
using ConfPtr = std::shared_ptr<const Conf>;

ConfPtr conf_start(const StateSpace& sp, const ProcPtr& p, State st);
int conf_cmp(const ConfPtr& a, const ConfPtr& b);
std::string show(const ConfPtr& c);

struct StepLabel {
  enum class Kind { Event, Tau, Tick };
  Kind kind = Kind::Tau;
  EventVal ev;  // Event only
};

std::vector<std::pair<StepLabel, ConfPtr>> step(const StateSpace& sp, const Alphabet& al,
                                                const ConfPtr& c);

ObsSet explore_bounded(const StateSpace& sp, const Alphabet& al, const ProcPtr& p,
                       const State& init, const Bounds& b);

// Drops observations shadowed by a divergence prefix and keeps only
// prefix-minimal divergences, so two observation sets can be compared up to
// divergence closure.
ObsSet close_divergence(const ObsSet& s);

struct StateMismatch {
  State init;
  ObsSet only_denoted;
  ObsSet only_explored;
};

struct CrossCheckReport {
  bool ok = true;
  int states_checked = 0;
  std::vector<StateMismatch> mismatches;
};

CrossCheckReport cross_check(const StateSpace& sp, const Alphabet& al, const ProcPtr& p,
                             const Contract& c, const Bounds& b);

}  // namespace rc
