#include "reacalc/rel.hpp"

#include <algorithm>
#include <sstream>

namespace rc {

namespace {

int cmp3(int a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

int opt_expr_cmp(const std::optional<Expr>& a, const std::optional<Expr>& b) {
  if (a.has_value() != b.has_value()) return a.has_value() ? 1 : -1;
  if (!a) return 0;
  return expr_cmp(*a, *b);
}

}  // namespace

EventExpr ev_pure(std::string chan) { return EventExpr{std::move(chan), std::nullopt}; }

EventExpr ev_data(std::string chan, Expr data) {
  return EventExpr{std::move(chan), fold(data)};
}

int event_expr_cmp(const EventExpr& a, const EventExpr& b) {
  if (int c = cmp3(a.chan.compare(b.chan))) return c;
  return opt_expr_cmp(a.data, b.data);
}

bool operator==(const EventExpr& a, const EventExpr& b) { return event_expr_cmp(a, b) == 0; }

std::string show(const EventExpr& e) {
  if (!e.data) return e.chan;
  return e.chan + "." + show(*e.data);
}

EventExpr subst_event(const Subst& sg, const EventExpr& e) {
  if (!e.data) return e;
  return EventExpr{e.chan, subst_apply(sg, *e.data)};
}

EventVal inst_event(const StateSpace& sp, const State& st, const EventExpr& e) {
  EventVal out;
  out.chan = e.chan;
  if (e.data) out.data.push_back(eval_expr(sp, st, *e.data));
  return out;
}

TraceExpr tr_empty() { return TraceExpr{}; }

TraceExpr tr_of(std::vector<EventExpr> items) { return TraceExpr{std::move(items)}; }

TraceExpr tr_concat(const TraceExpr& a, const TraceExpr& b) {
  TraceExpr out = a;
  out.items.insert(out.items.end(), b.items.begin(), b.items.end());
  return out;
}

TraceExpr subst_trace(const Subst& sg, const TraceExpr& t) {
  TraceExpr out;
  out.items.reserve(t.items.size());
  for (const auto& e : t.items) out.items.push_back(subst_event(sg, e));
  return out;
}

int trace_expr_cmp(const TraceExpr& a, const TraceExpr& b) {
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size() ? -1 : 1;
  for (size_t i = 0; i < a.items.size(); ++i)
    if (int c = event_expr_cmp(a.items[i], b.items[i])) return c;
  return 0;
}

bool operator==(const TraceExpr& a, const TraceExpr& b) { return trace_expr_cmp(a, b) == 0; }

std::string show(const TraceExpr& t) {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < t.items.size(); ++i) {
    if (i) os << ", ";
    os << show(t.items[i]);
  }
  os << ">";
  return os.str();
}

std::vector<EventVal> inst_trace(const StateSpace& sp, const State& st, const TraceExpr& t) {
  std::vector<EventVal> out;
  out.reserve(t.items.size());
  for (const auto& e : t.items) out.push_back(inst_event(sp, st, e));
  return out;
}

AcceptSpec acc_of(std::vector<EventExpr> events) {
  return acc_guarded(ex_true(), std::move(events));
}

AcceptSpec acc_guarded(Expr guard, std::vector<EventExpr> events) {
  AcceptSpec out;
  Expr g = fold(guard);
  if (is_lit_false(g)) return out;
  out.entries.reserve(events.size());
  for (auto& e : events) out.entries.push_back(AcceptEntry{g, e.chan, e.data});
  return out;
}

namespace {

int accept_entry_cmp(const AcceptEntry& a, const AcceptEntry& b) {
  if (int c = cmp3(a.chan.compare(b.chan))) return c;
  if (int c = opt_expr_cmp(a.data, b.data)) return c;
  return expr_cmp(a.guard, b.guard);
}

// Append entries, disjoining guards of entries for the same event expression.
void acc_push(AcceptSpec& acc, const AcceptEntry& e) {
  Expr g = fold(e.guard);
  if (is_lit_false(g)) return;
  for (auto& have : acc.entries) {
    if (have.chan == e.chan && opt_expr_cmp(have.data, e.data) == 0) {
      if (expr_cmp(have.guard, g) != 0) have.guard = fold(ex_or(have.guard, g));
      return;
    }
  }
  acc.entries.push_back(AcceptEntry{g, e.chan, e.data});
}

}  // namespace

AcceptSpec acc_union(const AcceptSpec& a, const AcceptSpec& b) {
  AcceptSpec out;
  for (const auto& e : a.entries) acc_push(out, e);
  for (const auto& e : b.entries) acc_push(out, e);
  return out;
}

AcceptSpec subst_accept(const Subst& sg, const AcceptSpec& a) {
  AcceptSpec out;
  for (const auto& e : a.entries) {
    AcceptEntry n{subst_apply(sg, e.guard), e.chan,
                  e.data ? std::optional<Expr>(subst_apply(sg, *e.data)) : std::nullopt};
    acc_push(out, n);
  }
  return out;
}

int accept_cmp(const AcceptSpec& a, const AcceptSpec& b) {
  if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size() ? -1 : 1;
  for (size_t i = 0; i < a.entries.size(); ++i)
    if (int c = accept_entry_cmp(a.entries[i], b.entries[i])) return c;
  return 0;
}

bool operator==(const AcceptSpec& a, const AcceptSpec& b) { return accept_cmp(a, b) == 0; }

std::string show(const AcceptSpec& a) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (i) os << ", ";
    const auto& e = a.entries[i];
    os << show(EventExpr{e.chan, e.data});
    if (!is_lit_true(e.guard)) os << " if " << show(e.guard);
  }
  os << "}";
  return os.str();
}

std::vector<EventVal> inst_accept(const StateSpace& sp, const State& st, const AcceptSpec& a) {
  std::vector<EventVal> out;
  for (const auto& e : a.entries) {
    try {
      Value g = eval_expr(sp, st, e.guard);
      if (!g.is_bool() || !g.as_bool()) continue;
      EventVal ev;
      ev.chan = e.chan;
      if (e.data) ev.data.push_back(eval_expr(sp, st, *e.data));
      out.push_back(std::move(ev));
    } catch (const Error&) {
      continue;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EventVal& x, const EventVal& y) { return value_cmp(Value(x), Value(y)) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ITerm mk_iterm(Expr cond, TraceExpr trace) { return ITerm{fold(cond), std::move(trace)}; }

ETerm mk_eterm(Expr cond, TraceExpr trace, AcceptSpec accept) {
  return ETerm{fold(cond), std::move(trace), std::move(accept)};
}

PhiTerm mk_phi(Expr cond, Subst update, TraceExpr trace) {
  return PhiTerm{fold(cond), std::move(update), std::move(trace)};
}

PhiTerm phi_id() { return PhiTerm{ex_true(), subst_id(), tr_empty()}; }

int iterm_cmp(const ITerm& a, const ITerm& b) {
  if (int c = trace_expr_cmp(a.trace, b.trace)) return c;
  return expr_cmp(a.cond, b.cond);
}

int eterm_cmp(const ETerm& a, const ETerm& b) {
  if (int c = trace_expr_cmp(a.trace, b.trace)) return c;
  if (int c = expr_cmp(a.cond, b.cond)) return c;
  return accept_cmp(a.accept, b.accept);
}

int phi_cmp(const PhiTerm& a, const PhiTerm& b) {
  if (int c = trace_expr_cmp(a.trace, b.trace)) return c;
  if (int c = expr_cmp(a.cond, b.cond)) return c;
  if (a.update.entries.size() != b.update.entries.size())
    return a.update.entries.size() < b.update.entries.size() ? -1 : 1;
  for (size_t i = 0; i < a.update.entries.size(); ++i) {
    if (int c = cmp3(a.update.entries[i].first.compare(b.update.entries[i].first))) return c;
    if (int c = expr_cmp(a.update.entries[i].second, b.update.entries[i].second)) return c;
  }
  return 0;
}

bool operator==(const ITerm& a, const ITerm& b) { return iterm_cmp(a, b) == 0; }
bool operator==(const ETerm& a, const ETerm& b) { return eterm_cmp(a, b) == 0; }
bool operator==(const PhiTerm& a, const PhiTerm& b) { return phi_cmp(a, b) == 0; }

std::string show(const ITerm& t) {
  return "C(" + show(t.cond) + " | " + show(t.trace) + ")";
}

std::string show(const ETerm& t) {
  return "E(" + show(t.cond) + ", " + show(t.trace) + ", " + show(t.accept) + ")";
}

std::string show(const PhiTerm& t) {
  return "Phi(" + show(t.cond) + ", " + show(t.update) + ", " + show(t.trace) + ")";
}

PreRel pre_true() { return PreRel{}; }

PreRel pre_false() { return PreRel{{mk_iterm(ex_true(), tr_empty())}}; }

PeriRel peri_false() { return PeriRel{}; }

PostRel post_false() { return PostRel{}; }

bool operator==(const PreRel& a, const PreRel& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i] == b.terms[i])) return false;
  return true;
}

bool operator==(const PeriRel& a, const PeriRel& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i] == b.terms[i])) return false;
  return true;
}

bool operator==(const PostRel& a, const PostRel& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i] == b.terms[i])) return false;
  return true;
}

namespace {

template <typename T>
std::string show_joined(const std::vector<T>& ts, const char* sep, const char* empty) {
  if (ts.empty()) return empty;
  std::ostringstream os;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (i) os << sep;
    os << show(ts[i]);
  }
  return os.str();
}

}  // namespace

std::string show(const PreRel& r) { return show_joined(r.terms, " /\\ ", "true_r"); }
std::string show(const PeriRel& r) { return show_joined(r.terms, " \\/ ", "false"); }
std::string show(const PostRel& r) { return show_joined(r.terms, " \\/ ", "false"); }

PeriRel norm_peri(PeriRel r) {
  PeriRel out;
  for (auto& t : r.terms) {
    t.cond = fold(t.cond);
    if (is_lit_false(t.cond)) continue;
    bool dup = false;
    for (const auto& have : out.terms)
      if (eterm_cmp(have, t) == 0) {
        dup = true;
        break;
      }
    if (!dup) out.terms.push_back(std::move(t));
  }
  return out;
}

PostRel norm_post(PostRel r) {
  PostRel out;
  for (auto& t : r.terms) {
    t.cond = fold(t.cond);
    if (is_lit_false(t.cond)) continue;
    bool dup = false;
    for (const auto& have : out.terms)
      if (phi_cmp(have, t) == 0) {
        dup = true;
        break;
      }
    if (!dup) out.terms.push_back(std::move(t));
  }
  return out;
}

PreRel normalize_pre(const StateSpace& sp, PreRel r) {
  // Conjoin same-trace terms by disjoining their violation conditions.
  std::vector<ITerm> merged;
  for (auto& t : r.terms) {
    t.cond = fold(t.cond);
    if (is_lit_false(t.cond)) continue;
    bool hit = false;
    for (auto& have : merged) {
      if (trace_expr_cmp(have.trace, t.trace) == 0) {
        if (expr_cmp(have.cond, t.cond) != 0) have.cond = fold(ex_or(have.cond, t.cond));
        hit = true;
        break;
      }
    }
    if (!hit) merged.push_back(std::move(t));
  }
  for (auto& t : merged) {
    if (t.trace.items.empty() && cond_valid_bounded(sp, t.cond)) return pre_false();
  }
  // A term over a prefix trace with a weaker condition subsumes the longer one.
  PreRel out;
  for (size_t i = 0; i < merged.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < merged.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& shorter = merged[j];
      const auto& longer = merged[i];
      if (shorter.trace.items.size() > longer.trace.items.size()) continue;
      if (shorter.trace.items.size() == longer.trace.items.size() && j > i) continue;
      bool prefix = true;
      for (size_t k = 0; k < shorter.trace.items.size(); ++k)
        if (event_expr_cmp(shorter.trace.items[k], longer.trace.items[k]) != 0) {
          prefix = false;
          break;
        }
      if (prefix && cond_implies_bounded(sp, longer.cond, shorter.cond)) redundant = true;
    }
    if (!redundant) out.terms.push_back(merged[i]);
  }
  return out;
}

bool pre_is_false(const StateSpace& sp, const PreRel& r) {
  PreRel n = normalize_pre(sp, r);
  return n.terms.size() == 1 && n.terms[0].trace.items.empty() &&
         cond_valid_bounded(sp, n.terms[0].cond);
}

PreRel subst_pre(const Subst& sg, const PreRel& r) {
  PreRel out;
  out.terms.reserve(r.terms.size());
  for (const auto& t : r.terms)
    out.terms.push_back(mk_iterm(subst_apply(sg, t.cond), subst_trace(sg, t.trace)));
  return out;
}

PhiTerm seq_phi_phi(const PhiTerm& a, const PhiTerm& b) {
  return mk_phi(ex_and(a.cond, subst_apply(a.update, b.cond)),
                subst_compose(b.update, a.update),
                tr_concat(a.trace, subst_trace(a.update, b.trace)));
}

ETerm seq_phi_e(const PhiTerm& a, const ETerm& b) {
  return mk_eterm(ex_and(a.cond, subst_apply(a.update, b.cond)),
                  tr_concat(a.trace, subst_trace(a.update, b.trace)),
                  subst_accept(a.update, b.accept));
}

PostRel seq_compose_rel(const PostRel& p, const PostRel& q) {
  PostRel out;
  for (const auto& a : p.terms)
    for (const auto& b : q.terms) out.terms.push_back(seq_phi_phi(a, b));
  return norm_post(std::move(out));
}

PeriRel seq_compose_rel(const PostRel& p, const PeriRel& q) {
  PeriRel out;
  for (const auto& a : p.terms)
    for (const auto& b : q.terms) out.terms.push_back(seq_phi_e(a, b));
  return norm_peri(std::move(out));
}

PostRel cond_distribute(const PostRel& p, const Expr& c, const PostRel& q) {
  Expr nc = fold(ex_not(c));
  PostRel out;
  for (const auto& t : p.terms)
    out.terms.push_back(mk_phi(ex_and(c, t.cond), t.update, t.trace));
  for (const auto& t : q.terms)
    out.terms.push_back(mk_phi(ex_and(nc, t.cond), t.update, t.trace));
  return norm_post(std::move(out));
}

PeriRel cond_distribute(const PeriRel& p, const Expr& c, const PeriRel& q) {
  Expr nc = fold(ex_not(c));
  auto sole_with_trace = [](const PeriRel& r, const TraceExpr& tr) -> const ETerm* {
    const ETerm* found = nullptr;
    for (const auto& t : r.terms) {
      if (trace_expr_cmp(t.trace, tr) == 0) {
        if (found) return nullptr;
        found = &t;
      }
    }
    return found;
  };
  PeriRel out;
  std::vector<const ETerm*> consumed;
  for (const auto& t : p.terms) {
    const ETerm* mine = sole_with_trace(p, t.trace);
    const ETerm* other = sole_with_trace(q, t.trace);
    if (mine == &t && other) {
      // One term each side over the same trace: a single conditional term with
      // guard-conditional accept entries.
      AcceptSpec acc;
      for (const auto& e : mine->accept.entries)
        acc_push(acc, AcceptEntry{ex_and(c, e.guard), e.chan, e.data});
      for (const auto& e : other->accept.entries)
        acc_push(acc, AcceptEntry{ex_and(nc, e.guard), e.chan, e.data});
      out.terms.push_back(mk_eterm(ex_cond(c, mine->cond, other->cond), t.trace, std::move(acc)));
      consumed.push_back(other);
    } else {
      out.terms.push_back(mk_eterm(ex_and(c, t.cond), t.trace, t.accept));
    }
  }
  for (const auto& t : q.terms) {
    if (std::find(consumed.begin(), consumed.end(), &t) != consumed.end()) continue;
    out.terms.push_back(mk_eterm(ex_and(nc, t.cond), t.trace, t.accept));
  }
  return norm_peri(std::move(out));
}

PreRel cond_distribute(const PreRel& p, const Expr& c, const PreRel& q) {
  Expr nc = fold(ex_not(c));
  PreRel out;
  for (const auto& t : p.terms) out.terms.push_back(mk_iterm(ex_and(c, t.cond), t.trace));
  for (const auto& t : q.terms) out.terms.push_back(mk_iterm(ex_and(nc, t.cond), t.trace));
  return out;
}

ETerm conj_quiescent(const std::vector<ETerm>& terms) {
  if (terms.empty()) raise("TraceMismatch", "conjunction of no quiescence terms");
  Expr cond = terms[0].cond;
  AcceptSpec acc = terms[0].accept;
  for (size_t i = 1; i < terms.size(); ++i) {
    if (trace_expr_cmp(terms[i].trace, terms[0].trace) != 0)
      raise("TraceMismatch", "quiescence conjunction over differing traces");
    cond = ex_and(cond, terms[i].cond);
    acc = acc_union(acc, terms[i].accept);
  }
  return mk_eterm(std::move(cond), terms[0].trace, std::move(acc));
}

ETerm disj_quiescent(const std::vector<ETerm>& terms) {
  if (terms.empty()) raise("TraceMismatch", "disjunction of no quiescence terms");
  Expr cond = terms[0].cond;
  for (size_t i = 1; i < terms.size(); ++i) {
    if (trace_expr_cmp(terms[i].trace, terms[0].trace) != 0)
      raise("TraceMismatch", "quiescence disjunction over differing traces");
    cond = ex_or(cond, terms[i].cond);
  }
  AcceptSpec acc;
  for (const auto& e : terms[0].accept.entries) {
    Expr g = e.guard;
    bool everywhere = true;
    for (size_t i = 1; i < terms.size() && everywhere; ++i) {
      bool found = false;
      for (const auto& o : terms[i].accept.entries) {
        if (o.chan == e.chan && opt_expr_cmp(o.data, e.data) == 0) {
          g = ex_and(g, o.guard);
          found = true;
          break;
        }
      }
      everywhere = found;
    }
    if (everywhere) acc_push(acc, AcceptEntry{g, e.chan, e.data});
  }
  return mk_eterm(std::move(cond), terms[0].trace, std::move(acc));
}

StarResult star_finaliser_ex(const PostRel& p, int n_max) {
  StarResult res;
  res.rel.terms.push_back(phi_id());
  auto contains = [](const PostRel& r, const PhiTerm& t) {
    for (const auto& have : r.terms)
      if (phi_cmp(have, t) == 0) return true;
    return false;
  };
  PostRel layer;
  layer.terms.push_back(phi_id());
  for (int n = 0; n < n_max + 1; ++n) {
    PostRel next = seq_compose_rel(layer, p);
    bool fresh = false;
    for (const auto& t : next.terms)
      if (!contains(res.rel, t)) fresh = true;
    if (!fresh) {
      res.exact = true;
      return res;
    }
    if (n == n_max) break;
    for (const auto& t : next.terms)
      if (!contains(res.rel, t)) res.rel.terms.push_back(t);
    layer = std::move(next);
  }
  res.exact = false;
  return res;
}

PostRel star_finaliser(const PostRel& p, int n_max) { return star_finaliser_ex(p, n_max).rel; }

ITerm wp_finaliser(const PhiTerm& p) { return mk_iterm(p.cond, p.trace); }

ITerm wp_finaliser(const PhiTerm& p, const ITerm& q) {
  return mk_iterm(ex_and(p.cond, subst_apply(p.update, q.cond)),
                  tr_concat(p.trace, subst_trace(p.update, q.trace)));
}

PreRel wp_rel(const StateSpace& sp, const PostRel& p, const PreRel& q) {
  if (q.terms.empty()) return pre_true();
  PreRel out;
  for (const auto& a : p.terms)
    for (const auto& b : q.terms) out.terms.push_back(wp_finaliser(a, b));
  return normalize_pre(sp, std::move(out));
}

std::optional<ETerm> filter_trace(TraceFilter mode, const ETerm& t) {
  bool empty = t.trace.items.empty();
  if ((mode == TraceFilter::NonemptyOnly) == empty) return std::nullopt;
  return t;
}

std::optional<PhiTerm> filter_trace(TraceFilter mode, const PhiTerm& t) {
  bool empty = t.trace.items.empty();
  if ((mode == TraceFilter::NonemptyOnly) == empty) return std::nullopt;
  return t;
}

PeriRel filter_trace(TraceFilter mode, const PeriRel& r) {
  PeriRel out;
  for (const auto& t : r.terms)
    if (auto kept = filter_trace(mode, t)) out.terms.push_back(*kept);
  return out;
}

PostRel filter_trace(TraceFilter mode, const PostRel& r) {
  PostRel out;
  for (const auto& t : r.terms)
    if (auto kept = filter_trace(mode, t)) out.terms.push_back(*kept);
  return out;
}

Tri refines_quiescent(const StateSpace& sp, const ETerm& spec, const ETerm& impl) {
  if (trace_expr_cmp(spec.trace, impl.trace) != 0) return Tri::Unknown;
  if (!cond_implies_bounded(sp, spec.cond, impl.cond)) return Tri::False;
  for (const auto& st : sp.enumerate()) {
    bool holds;
    try {
      Value v = eval_expr(sp, st, spec.cond);
      holds = v.is_bool() && v.as_bool();
    } catch (const Error&) {
      continue;
    }
    if (!holds) continue;
    auto e1 = inst_accept(sp, st, spec.accept);
    auto e2 = inst_accept(sp, st, impl.accept);
    for (const auto& ev : e1)
      if (std::find(e2.begin(), e2.end(), ev) == e2.end()) return Tri::False;
  }
  return Tri::True;
}

namespace {

void check_expr_scope(const StateSpace& sp, const Expr& e) {
  for (const auto& v : free_vars(e))
    if (sp.find(v) < 0) raise("Scope", "undeclared variable " + v);
}

void check_trace_scope(const StateSpace& sp, const TraceExpr& t) {
  for (const auto& ev : t.items)
    if (ev.data) check_expr_scope(sp, *ev.data);
}

}  // namespace

void check_wf(const StateSpace& sp, const PreRel& r) {
  for (const auto& t : r.terms) {
    check_expr_scope(sp, t.cond);
    check_trace_scope(sp, t.trace);
  }
}

void check_wf(const StateSpace& sp, const PeriRel& r) {
  for (const auto& t : r.terms) {
    check_expr_scope(sp, t.cond);
    check_trace_scope(sp, t.trace);
    for (const auto& e : t.accept.entries) {
      check_expr_scope(sp, e.guard);
      if (e.data) check_expr_scope(sp, *e.data);
    }
  }
}

void check_wf(const StateSpace& sp, const PostRel& r) {
  for (const auto& t : r.terms) {
    check_expr_scope(sp, t.cond);
    check_trace_scope(sp, t.trace);
    for (const auto& [name, e] : t.update.entries) {
      if (sp.find(name) < 0) raise("Scope", "update targets undeclared variable " + name);
      check_expr_scope(sp, e);
    }
  }
}

}  // namespace rc
