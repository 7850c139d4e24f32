#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reacalc/expr.hpp"
#include "reacalc/state.hpp"

namespace rc {

// An event with an optional data expression: `a` or `a.x+1`.
struct EventExpr {
  std::string chan;
  std::optional<Expr> data;
};

EventExpr ev_pure(std::string chan);
EventExpr ev_data(std::string chan, Expr data);
int event_expr_cmp(const EventExpr& a, const EventExpr& b);
bool operator==(const EventExpr& a, const EventExpr& b);
std::string show(const EventExpr& e);
EventExpr subst_event(const Subst& sg, const EventExpr& e);
// Evaluates the data position; throws on evaluation failure.
EventVal inst_event(const StateSpace& sp, const State& st, const EventExpr& e);

// A symbolic trace: a finite list of event expressions.
struct TraceExpr {
  std::vector<EventExpr> items;
};

TraceExpr tr_empty();
TraceExpr tr_of(std::vector<EventExpr> items);
TraceExpr tr_concat(const TraceExpr& a, const TraceExpr& b);
TraceExpr subst_trace(const Subst& sg, const TraceExpr& t);
int trace_expr_cmp(const TraceExpr& a, const TraceExpr& b);
bool operator==(const TraceExpr& a, const TraceExpr& b);
std::string show(const TraceExpr& t);
std::vector<EventVal> inst_trace(const StateSpace& sp, const State& st, const TraceExpr& t);

// One guarded element of an acceptance set: the event belongs to the set in
// states where the guard holds.
struct AcceptEntry {
  Expr guard;
  std::string chan;
  std::optional<Expr> data;
};

struct AcceptSpec {
  std::vector<AcceptEntry> entries;
};

AcceptSpec acc_of(std::vector<EventExpr> events);
AcceptSpec acc_guarded(Expr guard, std::vector<EventExpr> events);
AcceptSpec acc_union(const AcceptSpec& a, const AcceptSpec& b);
AcceptSpec subst_accept(const Subst& sg, const AcceptSpec& a);
int accept_cmp(const AcceptSpec& a, const AcceptSpec& b);
bool operator==(const AcceptSpec& a, const AcceptSpec& b);
std::string show(const AcceptSpec& a);
// Concrete event set at one state, sorted and deduplicated. An entry whose
// guard or data fails to evaluate contributes nothing (the bounded model
// cannot represent it).
std::vector<EventVal> inst_accept(const StateSpace& sp, const State& st, const AcceptSpec& a);

// Assumption term C(s | t): violated by an observation whose trace extends t
// from an initial state satisfying s.
struct ITerm {
  Expr cond;
  TraceExpr trace;
};

// Quiescence term E(s, t, E): from a state satisfying s, trace t has been
// performed and exactly the events in E are accepted.
struct ETerm {
  Expr cond;
  TraceExpr trace;
  AcceptSpec accept;
};

// Finalisation term Phi(s, sg, t): from a state satisfying s, trace t has been
// performed and the state is updated by sg.
struct PhiTerm {
  Expr cond;
  Subst update;
  TraceExpr trace;
};

ITerm mk_iterm(Expr cond, TraceExpr trace);
ETerm mk_eterm(Expr cond, TraceExpr trace, AcceptSpec accept);
PhiTerm mk_phi(Expr cond, Subst update, TraceExpr trace);
PhiTerm phi_id();

int iterm_cmp(const ITerm& a, const ITerm& b);
int eterm_cmp(const ETerm& a, const ETerm& b);
int phi_cmp(const PhiTerm& a, const PhiTerm& b);
bool operator==(const ITerm& a, const ITerm& b);
bool operator==(const ETerm& a, const ETerm& b);
bool operator==(const PhiTerm& a, const PhiTerm& b);
std::string show(const ITerm& t);
std::string show(const ETerm& t);
std::string show(const PhiTerm& t);

// Precondition: a conjunction of assumption terms. Empty = true_r. The
// canonical false value is the single term C(true | <>).
struct PreRel {
  std::vector<ITerm> terms;
};

// Pericondition: a disjunction of quiescence terms. Empty = false.
struct PeriRel {
  std::vector<ETerm> terms;
};

// Postcondition: a disjunction of finalisation terms. Empty = false.
struct PostRel {
  std::vector<PhiTerm> terms;
};

PreRel pre_true();
PreRel pre_false();
PeriRel peri_false();
PostRel post_false();
bool operator==(const PreRel& a, const PreRel& b);
bool operator==(const PeriRel& a, const PeriRel& b);
bool operator==(const PostRel& a, const PostRel& b);
std::string show(const PreRel& r);
std::string show(const PeriRel& r);
std::string show(const PostRel& r);

// Fold conditions, drop unsatisfiable disjuncts, deduplicate structurally.
PeriRel norm_peri(PeriRel r);
PostRel norm_post(PostRel r);

// Drops false-condition terms, merges same-trace terms by disjoining their
// conditions, and collapses to the canonical false once a valid empty-trace
// assumption appears.
PreRel normalize_pre(const StateSpace& sp, PreRel r);
bool pre_is_false(const StateSpace& sp, const PreRel& r);

// Transport a relation through a preceding state update.
PreRel subst_pre(const Subst& sg, const PreRel& r);

// Sequential composition of finalisers with a following relation, distributed
// over the disjunct sets.
PhiTerm seq_phi_phi(const PhiTerm& a, const PhiTerm& b);
ETerm seq_phi_e(const PhiTerm& a, const ETerm& b);
PostRel seq_compose_rel(const PostRel& p, const PostRel& q);
PeriRel seq_compose_rel(const PostRel& p, const PeriRel& q);

// Conditional between two relations of the same kind. Quiescence terms over
// the same trace merge into a single term with guard-conditional accept
// entries; everything else splits into guarded disjuncts.
PostRel cond_distribute(const PostRel& p, const Expr& c, const PostRel& q);
PeriRel cond_distribute(const PeriRel& p, const Expr& c, const PeriRel& q);
PreRel cond_distribute(const PreRel& p, const Expr& c, const PreRel& q);

// Same-trace conjunction: conjoined conditions, union of accept sets.
ETerm conj_quiescent(const std::vector<ETerm>& terms);
// Same-trace disjunction: disjoined conditions, intersection of accept sets.
ETerm disj_quiescent(const std::vector<ETerm>& terms);

// Bounded reflexive-transitive closure of a finaliser set: all n-fold
// self-compositions for n up to the bound. `exact` reports whether the layers
// saturated within the bound.
struct StarResult {
  PostRel rel;
  bool exact = false;
};
StarResult star_finaliser_ex(const PostRel& p, int n_max);
PostRel star_finaliser(const PostRel& p, int n_max);

// Weakest reactive precondition of a finaliser against one assumption term
// (or against false when `q` is absent).
ITerm wp_finaliser(const PhiTerm& p);
ITerm wp_finaliser(const PhiTerm& p, const ITerm& q);
// Lifted over the disjunction/conjunction sets; q = pre_false() recovers the
// plain divergence-freedom form.
PreRel wp_rel(const StateSpace& sp, const PostRel& p, const PreRel& q);

// Keep only terms whose trace is nonempty (resp. empty); the dropped side of
// a disjunction is false.
enum class TraceFilter { NonemptyOnly, EmptyOnly };
std::optional<ETerm> filter_trace(TraceFilter mode, const ETerm& t);
std::optional<PhiTerm> filter_trace(TraceFilter mode, const PhiTerm& t);
PeriRel filter_trace(TraceFilter mode, const PeriRel& r);
PostRel filter_trace(TraceFilter mode, const PostRel& r);

// Refinement of one quiescent observation against another over structurally
// equal traces; inapplicable otherwise.
enum class Tri { False, True, Unknown };
Tri refines_quiescent(const StateSpace& sp, const ETerm& spec, const ETerm& impl);

// Scoping well-formedness: every variable mentioned anywhere in the relation
// is declared in the space, and updates target declared variables.
void check_wf(const StateSpace& sp, const PreRel& r);
void check_wf(const StateSpace& sp, const PeriRel& r);
void check_wf(const StateSpace& sp, const PostRel& r);

}  // namespace rc
