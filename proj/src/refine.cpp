#include "reacalc/refine.hpp"

#include <algorithm>

namespace rc {

namespace {

Value seq_of_events(const std::vector<EventVal>& evs) {
  Value::Seq xs;
  xs.reserve(evs.size());
  for (const auto& e : evs) xs.push_back(Value(e));
  return Value(std::move(xs));
}

Bindings obs_bindings(const StateSpace& sp, const Observation& o) {
  Bindings bs;
  bs["tt"] = seq_of_events(o.trace);
  if (o.kind == Observation::Kind::Quiescent) bs["acc"] = seq_of_events(o.accepts);
  if (o.kind == Observation::Kind::Terminated)
    for (std::size_t i = 0; i < sp.names.size(); ++i)
      bs[sp.names[i] + "'"] = o.final.store[i];
  return bs;
}

bool eval_obs_pred(const StateSpace& sp, const State& init, const Expr& pred,
                   const Observation& o) {
  Bindings bs = obs_bindings(sp, o);
  return eval_bool(sp, init, pred, &bs);
}

bool eval_trace_pred(const StateSpace& sp, const State& init, const Expr& pred,
                     const CTrace& tt) {
  Bindings bs;
  bs["tt"] = seq_of_events(tt);
  return eval_bool(sp, init, pred, &bs);
}

bool ctrace_is_prefix(const CTrace& a, const CTrace& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool event_subset(const std::vector<EventVal>& a, const std::vector<EventVal>& b) {
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b)
      if (x == y) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// --- structural subsumption fast paths ----------------------------------
// Each returns true only when the obligation is settled without looking at
// any concrete state; inconclusive cases fall to bounded enumeration.

bool cond_weaker(const Expr& weak, const Expr& strong) {
  return is_lit_true(weak) || expr_cmp(weak, strong) == 0;
}

bool trace_syn_prefix(const TraceExpr& a, const TraceExpr& b) {
  if (a.items.size() > b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i)
    if (event_expr_cmp(a.items[i], b.items[i]) != 0) return false;
  return true;
}

bool accept_entry_sub(const AcceptSpec& small, const AcceptSpec& big) {
  for (const auto& e : small.entries) {
    bool found = false;
    for (const auto& f : big.entries) {
      if (e.chan != f.chan) continue;
      if (e.data.has_value() != f.data.has_value()) continue;
      if (e.data && expr_cmp(*e.data, *f.data) != 0) continue;
      if (expr_cmp(e.guard, f.guard) != 0 && !is_lit_true(f.guard)) continue;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

bool fast_pre_holds(const SpecContract& spec, const Contract& impl) {
  if (spec.pre_pred) return false;
  // spec.pre implies impl.pre: every violation the implementation admits
  // must already be a violation of the specification's assumption.
  for (const ITerm& q : impl.pre.terms) {
    bool covered = false;
    for (const ITerm& p : spec.base.pre.terms)
      if (cond_weaker(p.cond, q.cond) && trace_syn_prefix(p.trace, q.trace)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool fast_peri_holds(const SpecContract& spec, const Contract& impl) {
  if (spec.peri_pred) return false;
  for (const ETerm& q : impl.peri.terms) {
    bool covered = false;
    for (const ETerm& p : spec.base.peri.terms)
      if (trace_expr_cmp(p.trace, q.trace) == 0 && cond_weaker(p.cond, q.cond) &&
          accept_entry_sub(p.accept, q.accept)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool fast_post_holds(const SpecContract& spec, const Contract& impl) {
  if (spec.post_pred) return false;
  for (const PhiTerm& q : impl.post.terms) {
    bool covered = false;
    for (const PhiTerm& p : spec.base.post.terms)
      if (trace_expr_cmp(p.trace, q.trace) == 0 && cond_weaker(p.cond, q.cond) &&
          p.update == q.update) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

// --- bounded membership in a specification side -------------------------

std::vector<CTrace> divergence_traces(const ObsSet& so) {
  std::vector<CTrace> out;
  for (const auto& o : so)
    if (o.kind == Observation::Kind::Divergence) out.push_back(o.trace);
  return out;
}

bool spec_quiescent_admits(const ObsSet& so, const Observation& q) {
  for (const auto& o : so) {
    if (o.kind != Observation::Kind::Quiescent) continue;
    if (ctrace_cmp(o.trace, q.trace) != 0) continue;
    if (event_subset(o.accepts, q.accepts)) return true;
  }
  return false;
}

bool spec_terminated_admits(const ObsSet& so, const Observation& t) {
  for (const auto& o : so) {
    if (o.kind != Observation::Kind::Terminated) continue;
    if (ctrace_cmp(o.trace, t.trace) == 0 && o.final == t.final) return true;
  }
  return false;
}

void add_prefix_closure_lint(const SpecContract& spec, std::vector<std::string>& notes) {
  if (spec.peri_pred) return;
  for (const ETerm& p : spec.base.peri.terms) {
    if (p.trace.items.empty()) continue;
    TraceExpr shorter;
    shorter.items.assign(p.trace.items.begin(), p.trace.items.end() - 1);
    bool found = false;
    for (const ETerm& o : spec.base.peri.terms)
      if (trace_expr_cmp(o.trace, shorter) == 0) {
        found = true;
        break;
      }
    if (!found) {
      notes.push_back("specification waiting relation is not prefix-closed near " +
                      show(p.trace));
      return;
    }
  }
}

}  // namespace

SpecContract spec_exact(Contract c) {
  SpecContract s;
  s.base = std::move(c);
  return s;
}

SpecContract spec_deadlock_free(const StateSpace& sp, const Alphabet& al) {
  SpecContract s;
  s.base = mk_contract(sp, al, pre_true(), peri_false(), post_false());
  s.peri_pred = ex_lt(ex_int(0), ex_len(ex_var("acc")));
  s.post_pred = ex_true();
  return s;
}

Verdict refines_contract(const SpecContract& spec, const Contract& impl, const Bounds& b) {
  if (!same_space(spec.base.space, impl.space) || !(spec.base.alpha == impl.alpha))
    raise("AlphabetMismatch", "refinement operands must share one state space and alphabet");

  Verdict v;
  v.bounded = spec.base.bounded || impl.bounded;

  if (impl.peri.terms.empty() && impl.post.terms.empty() &&
      !pre_is_false(impl.space, impl.pre))
    v.notes.push_back(
        "implementation admits no waiting or terminating observation; any refinement "
        "of it holds only by infeasibility");
  add_prefix_closure_lint(spec, v.notes);

  bool pre_ok = fast_pre_holds(spec, impl);
  bool peri_ok = fast_peri_holds(spec, impl);
  bool post_ok = fast_post_holds(spec, impl);
  if (pre_ok && peri_ok && post_ok) return v;

  v.bounded = true;
  const StateSpace& sp = impl.space;
  bool need_spec_obs = !spec.pre_pred || (!peri_ok && !spec.peri_pred) ||
                       (!post_ok && !spec.post_pred);
  std::vector<Observation> bad;
  for (const State& init : sp.enumerate(b.state_limit)) {
    ObsSet io = close_divergence(denote_bounded(impl, init, b));
    ObsSet so;
    if (need_spec_obs) so = close_divergence(denote_bounded(spec.base, init, b));
    std::vector<CTrace> sdivs = divergence_traces(so);
    auto assumed = [&](const CTrace& tt) {
      if (spec.pre_pred) return eval_trace_pred(sp, init, spec.pre_pred, tt);
      for (const auto& d : sdivs)
        if (ctrace_is_prefix(d, tt)) return false;
      return true;
    };
    for (const Observation& o : io) {
      switch (o.kind) {
        case Observation::Kind::Divergence:
          if (!pre_ok && assumed(o.trace)) bad.push_back(o);
          break;
        case Observation::Kind::Quiescent: {
          if (peri_ok || !assumed(o.trace)) break;
          bool ok = spec.peri_pred ? eval_obs_pred(sp, init, spec.peri_pred, o)
                                   : spec_quiescent_admits(so, o);
          if (!ok) bad.push_back(o);
          break;
        }
        case Observation::Kind::Terminated: {
          if (post_ok || !assumed(o.trace)) break;
          bool ok = spec.post_pred ? eval_obs_pred(sp, init, spec.post_pred, o)
                                   : spec_terminated_admits(so, o);
          if (!ok) bad.push_back(o);
          break;
        }
      }
    }
  }
  v.witnesses = obs_normalize(std::move(bad));
  v.holds = v.witnesses.empty();
  return v;
}

Verdict deadlock_check(const Contract& c, const Bounds& b) {
  // Settled without enumeration when the contract assumes nothing (no
  // divergence anywhere) and every waiting disjunct offers at least one
  // unconditioned event.
  if (c.pre.terms.empty()) {
    bool fast = true;
    for (const ETerm& t : c.peri.terms) {
      bool offered = false;
      for (const auto& e : t.accept.entries)
        if (is_lit_true(e.guard)) {
          offered = true;
          break;
        }
      if (!offered) {
        fast = false;
        break;
      }
    }
    if (fast) {
      Verdict v;
      v.bounded = c.bounded;
      return v;
    }
  }
  return refines_contract(spec_deadlock_free(c.space, c.alpha), c, b);
}

Verdict equal_contracts(const Contract& c1, const Contract& c2, const Bounds& b) {
  if (c1 == c2) {
    Verdict v;
    v.bounded = c1.bounded || c2.bounded;
    return v;
  }
  Verdict fwd = refines_contract(spec_exact(c1), c2, b);
  Verdict bwd = refines_contract(spec_exact(c2), c1, b);
  Verdict v;
  v.holds = fwd.holds && bwd.holds;
  v.bounded = fwd.bounded || bwd.bounded;
  ObsSet w = fwd.witnesses;
  w.insert(w.end(), bwd.witnesses.begin(), bwd.witnesses.end());
  v.witnesses = obs_normalize(std::move(w));
  v.notes = fwd.notes;
  v.notes.insert(v.notes.end(), bwd.notes.begin(), bwd.notes.end());
  return v;
}

namespace {

// Candidate continuation traces for the inductive invariant obligations:
// every event sequence over the declared alphabet up to the length cap.
std::vector<CTrace> bounded_traces(const Alphabet& al, int maxlen, unsigned long long limit) {
  std::vector<EventVal> evs = alphabet_events(al);
  std::vector<CTrace> out = {{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= maxlen; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const auto& e : evs) {
        CTrace t = out[i];
        t.push_back(e);
        out.push_back(std::move(t));
        if (out.size() > limit)
          raise("StateSpaceLimit", "candidate trace enumeration exceeds the state limit");
      }
    level_begin = level_end;
  }
  return out;
}

bool pred_mentions(const Expr& e, const std::string& name) {
  for (const auto& vn : free_vars(e))
    if (vn == name) return true;
  return false;
}

// Does the invariant's waiting side hold of one concrete observation?
bool inv_peri_holds(const StateSpace& sp, const SpecContract& inv, const State& init,
                    const Observation& q) {
  if (inv.peri_pred) return eval_obs_pred(sp, init, inv.peri_pred, q);
  for (const ETerm& t : inv.base.peri.terms) {
    try {
      if (!eval_bool(sp, init, t.cond)) continue;
      if (ctrace_cmp(inst_trace(sp, init, t.trace), q.trace) != 0) continue;
      if (event_subset(inst_accept(sp, init, t.accept), q.accepts)) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

bool inv_post_holds(const StateSpace& sp, const SpecContract& inv, const State& init,
                    const Observation& t) {
  if (inv.post_pred) return eval_obs_pred(sp, init, inv.post_pred, t);
  for (const PhiTerm& p : inv.base.post.terms) {
    try {
      if (!eval_bool(sp, init, p.cond)) continue;
      if (ctrace_cmp(inst_trace(sp, init, p.trace), t.trace) != 0) continue;
      if (subst_image(sp, p.update, init) == t.final) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

bool inv_pre_holds(const StateSpace& sp, const SpecContract& inv, const State& init,
                   const CTrace& tt) {
  if (inv.pre_pred) return eval_trace_pred(sp, init, inv.pre_pred, tt);
  for (const ITerm& t : inv.base.pre.terms) {
    try {
      if (!eval_bool(sp, init, t.cond)) continue;
      if (ctrace_is_prefix(inst_trace(sp, init, t.trace), tt)) return false;
    } catch (const Error&) {
    }
  }
  return true;
}

// The waiting observations the invariant admits from one state: evaluated
// disjuncts for a calculated relation, an enumeration of candidate traces
// (and acceptance sets when the predicate reads them) for an opaque one.
std::vector<Observation> inv_peri_points(const StateSpace& sp, const Alphabet& al,
                                         const SpecContract& inv, const State& mid,
                                         int maxlen, unsigned long long limit) {
  std::vector<Observation> out;
  if (!inv.peri_pred) {
    for (const ETerm& t : inv.base.peri.terms) {
      try {
        if (!eval_bool(sp, mid, t.cond)) continue;
        out.push_back(obs_q(inst_trace(sp, mid, t.trace), inst_accept(sp, mid, t.accept)));
      } catch (const Error&) {
      }
    }
    return out;
  }
  bool wants_acc = pred_mentions(inv.peri_pred, "acc");
  std::vector<std::vector<EventVal>> accs;
  if (wants_acc) {
    std::vector<EventVal> evs = alphabet_events(al);
    if (evs.size() > 16)
      raise("StateSpaceLimit", "acceptance-set enumeration needs 16 or fewer events");
    for (unsigned long long m = 0; m < (1ull << evs.size()); ++m) {
      std::vector<EventVal> a;
      for (std::size_t i = 0; i < evs.size(); ++i)
        if (m & (1ull << i)) a.push_back(evs[i]);
      accs.push_back(std::move(a));
    }
  } else {
    accs.push_back({});
  }
  for (const CTrace& t : bounded_traces(al, maxlen, limit))
    for (const auto& a : accs) {
      Observation q = obs_q(t, a);
      if (eval_obs_pred(sp, mid, inv.peri_pred, q)) out.push_back(std::move(q));
    }
  return out;
}

std::vector<Observation> inv_post_points(const StateSpace& sp, const Alphabet& al,
                                         const SpecContract& inv, const State& mid,
                                         int maxlen, unsigned long long limit) {
  std::vector<Observation> out;
  if (!inv.post_pred) {
    for (const PhiTerm& p : inv.base.post.terms) {
      try {
        if (!eval_bool(sp, mid, p.cond)) continue;
        out.push_back(obs_t(inst_trace(sp, mid, p.trace), subst_image(sp, p.update, mid)));
      } catch (const Error&) {
      }
    }
    return out;
  }
  std::vector<State> finals = sp.enumerate(limit);
  for (const CTrace& t : bounded_traces(al, maxlen, limit))
    for (const auto& f : finals) {
      Observation ob = obs_t(t, f);
      if (eval_obs_pred(sp, mid, inv.post_pred, ob)) out.push_back(std::move(ob));
    }
  return out;
}

CTrace cat(CTrace a, const CTrace& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

Verdict loop_invariant_check(const Expr& b_cond, const Contract& body, const SpecContract& inv,
                             const Bounds& b) {
  if (!health_flags(body).productive)
    raise("NonProductiveBody", "the loop body may terminate without extending the trace");
  if (!same_space(inv.base.space, body.space) || !(inv.base.alpha == body.alpha))
    raise("AlphabetMismatch", "invariant and body must share one state space and alphabet");

  Verdict v;
  v.bounded = true;
  v.notes.push_back("continuation traces enumerated to length " +
                    std::to_string(b.trace_len) + " only");
  const StateSpace& sp = body.space;
  const Alphabet& al = body.alpha;
  std::vector<Observation> bad;

  // (2) the invariant assumption implies the loop's weakest assumption,
  // checked on the loop's divergence points.
  Contract loop = while_contract(b_cond, body, b.star_bound);
  if (loop.bounded)
    v.notes.push_back("iteration count explored to the star bound " +
                      std::to_string(b.star_bound) + " only");
  for (const State& init : sp.enumerate(b.state_limit)) {
    for (const Observation& o : close_divergence(denote_bounded(loop, init, b)))
      if (o.kind == Observation::Kind::Divergence && inv_pre_holds(sp, inv, init, o.trace))
        bad.push_back(o);
  }

  // (3) and (4): base and inductive step for the waiting and final sides.
  for (const State& init : sp.enumerate(b.state_limit)) {
    bool guard_on = eval_bool(sp, init, b_cond);
    if (!guard_on) {
      Observation stay = obs_t({}, init);
      if (!inv_post_holds(sp, inv, init, stay)) bad.push_back(stay);
      continue;
    }
    ObsSet body_obs = denote_bounded(body, init, b);
    for (const Observation& o : body_obs) {
      if (o.kind == Observation::Kind::Quiescent && !inv_peri_holds(sp, inv, init, o))
        bad.push_back(o);
      if (o.kind != Observation::Kind::Terminated) continue;
      int rest = b.trace_len - static_cast<int>(o.trace.size());
      if (rest < 0) continue;
      for (const Observation& q :
           inv_peri_points(sp, al, inv, o.final, rest, b.state_limit)) {
        Observation whole = obs_q(cat(o.trace, q.trace), q.accepts);
        if (!inv_peri_holds(sp, inv, init, whole)) bad.push_back(whole);
      }
      for (const Observation& t :
           inv_post_points(sp, al, inv, o.final, rest, b.state_limit)) {
        Observation whole = obs_t(cat(o.trace, t.trace), t.final);
        if (!inv_post_holds(sp, inv, init, whole)) bad.push_back(whole);
      }
    }
  }

  v.witnesses = obs_normalize(std::move(bad));
  v.holds = v.witnesses.empty();
  return v;
}

}  // namespace rc
