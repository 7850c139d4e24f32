#pragma once

#include "reacalc/oracle.hpp"

namespace rc {

// A specification contract: each side either keeps a calculated normal form
// (the corresponding predicate is null) or escapes to a boolean expression
// evaluated on one concrete observation. An observation predicate sees the
// initial state through the unprimed variable names, plus pseudo-variables:
//
//   tt    the observation trace, a sequence of event values
//   acc   a waiting observation's acceptance set, a sorted event sequence
//   x'    the final value of state variable x, in terminated observations
//
// Predicates must evaluate to a boolean on every in-bound observation.
struct SpecContract {
  Contract base;
  Expr pre_pred;   // over (state, tt): where divergence freedom is demanded
  Expr peri_pred;  // over (state, tt, acc)
  Expr post_pred;  // over (state, tt, primed state)
};

// Wraps a calculated contract unchanged.
SpecContract spec_exact(Contract c);

// Deadlock freedom: every waiting observation accepts at least one event,
// divergence is never allowed, and termination is unconstrained.
SpecContract spec_deadlock_free(const StateSpace& sp, const Alphabet& al);

struct Verdict {
  bool holds = true;
  // True when the conclusion rests on bounded enumeration (or on a clipped
  // input contract) rather than a structural argument.
  bool bounded = false;
  ObsSet witnesses;  // nonempty whenever holds is false
  // Human-readable caveats: which quantifier a bound truncated, feasibility
  // and prefix-closure lints.
  std::vector<std::string> notes;
};

// Checks spec [P1 |- P2 | P3] refined by impl [Q1 |- Q2 | Q3] through the
// three obligations: P1 => Q1, (Q2 and P1) => P2, (Q3 and P1) => P3.
// Structural per-disjunct subsumption is tried first; obligations it cannot
// settle fall back to enumerating impl observations over every initial
// state within the bounds. Raises AlphabetMismatch when the operands
// disagree on state space or alphabet.
Verdict refines_contract(const SpecContract& spec, const Contract& impl, const Bounds& b);

// refines_contract against the deadlock-freedom specification.
Verdict deadlock_check(const Contract& c, const Bounds& b);

// Proof rule for `while b_cond do body` against an invariant contract
// [I1 |- I2 | I3], body contract [Q1 |- Q2 | Q3]:
//   (1) the body is productive (else raises NonProductiveBody);
//   (2) I1 implies the loop's weakest divergence-freedom assumption;
//   (3) I2 holds after guarded body waiting, and is maintained across one
//       guarded body termination followed by an I2 point;
//   (4) I3 holds when the guard fails immediately, and is maintained across
//       one guarded body termination followed by an I3 point.
// A passing verdict certifies the invariant for every iteration count; only
// the trace length and the per-obligation state quantifiers are bounded,
// and the notes say which bound was binding.
Verdict loop_invariant_check(const Expr& b_cond, const Contract& body, const SpecContract& inv,
                             const Bounds& b);

// Mutual refinement; structurally equal contracts short-circuit.
Verdict equal_contracts(const Contract& c1, const Contract& c2, const Bounds& b);

}  // namespace rc
