#include "reacalc/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rc {

namespace {

int ev_cmp(const EventVal& a, const EventVal& b) { return value_cmp(Value(a), Value(b)); }

int state_cmp(const State& a, const State& b) {
  if (a.store.size() != b.store.size()) return a.store.size() < b.store.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.store.size(); ++i)
    if (int c = value_cmp(a.store[i], b.store[i])) return c;
  return 0;
}

std::vector<EventVal> sort_events(std::vector<EventVal> v) {
  std::sort(v.begin(), v.end(), [](const EventVal& a, const EventVal& b) {
    return ev_cmp(a, b) < 0;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool valid_event(const Alphabet& al, const EventVal& ev) {
  const Channel* ch = al.find(ev.chan);
  if (!ch) return false;
  if (!ch->dom) return ev.data.empty();
  return ev.data.size() == 1 && ch->dom->contains(ev.data[0]);
}

bool valid_trace(const Alphabet& al, const CTrace& t) {
  for (const auto& ev : t)
    if (!valid_event(al, ev)) return false;
  return true;
}

bool is_prefix(const CTrace& p, const CTrace& t) {
  if (p.size() > t.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] == t[i])) return false;
  return true;
}

}  // namespace

int ctrace_cmp(const CTrace& a, const CTrace& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = ev_cmp(a[i], b[i])) return c;
  return 0;
}

std::string show_ctrace(const CTrace& t) {
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += show(t[i]);
  }
  return out + ">";
}

Observation obs_q(CTrace t, std::vector<EventVal> accepts) {
  Observation o;
  o.kind = Observation::Kind::Quiescent;
  o.trace = std::move(t);
  o.accepts = sort_events(std::move(accepts));
  return o;
}

Observation obs_t(CTrace t, State final) {
  Observation o;
  o.kind = Observation::Kind::Terminated;
  o.trace = std::move(t);
  o.final = std::move(final);
  return o;
}

Observation obs_d(CTrace t) {
  Observation o;
  o.kind = Observation::Kind::Divergence;
  o.trace = std::move(t);
  return o;
}

int obs_cmp(const Observation& a, const Observation& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (int c = ctrace_cmp(a.trace, b.trace)) return c;
  if (a.kind == Observation::Kind::Quiescent) {
    if (a.accepts.size() != b.accepts.size()) return a.accepts.size() < b.accepts.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.accepts.size(); ++i)
      if (int c = ev_cmp(a.accepts[i], b.accepts[i])) return c;
    return 0;
  }
  if (a.kind == Observation::Kind::Terminated) return state_cmp(a.final, b.final);
  return 0;
}

bool operator==(const Observation& a, const Observation& b) { return obs_cmp(a, b) == 0; }

std::string show(const Observation& o) {
  std::ostringstream os;
  switch (o.kind) {
    case Observation::Kind::Quiescent: {
      os << "Q(" << show_ctrace(o.trace) << ", {";
      for (std::size_t i = 0; i < o.accepts.size(); ++i) {
        if (i) os << ", ";
        os << show(o.accepts[i]);
      }
      os << "})";
      break;
    }
    case Observation::Kind::Terminated: {
      os << "T(" << show_ctrace(o.trace) << ", [";
      for (std::size_t i = 0; i < o.final.store.size(); ++i) {
        if (i) os << ", ";
        os << show(o.final.store[i]);
      }
      os << "])";
      break;
    }
    case Observation::Kind::Divergence:
      os << "D(" << show_ctrace(o.trace) << ")";
      break;
  }
  return os.str();
}

ObsSet obs_normalize(std::vector<Observation> v) {
  std::sort(v.begin(), v.end(),
            [](const Observation& a, const Observation& b) { return obs_cmp(a, b) < 0; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

ObsSet denote_bounded(const Contract& c, const State& init, const Bounds& b) {
  std::vector<Observation> out;
  const std::vector<EventVal> evs = alphabet_events(c.alpha);

  auto cond_holds = [&](const Expr& e) -> std::optional<bool> {
    try {
      return eval_expr(c.space, init, e).as_bool();
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  for (const auto& t : c.peri.terms) {
    auto ok = cond_holds(t.cond);
    if (!ok || !*ok) continue;
    CTrace tr;
    try {
      tr = inst_trace(c.space, init, t.trace);
    } catch (const Error&) {
      continue;
    }
    if (static_cast<int>(tr.size()) > b.trace_len || !valid_trace(c.alpha, tr)) continue;
    std::vector<EventVal> acc;
    for (auto& ev : inst_accept(c.space, init, t.accept))
      if (valid_event(c.alpha, ev)) acc.push_back(std::move(ev));
    out.push_back(obs_q(std::move(tr), std::move(acc)));
  }

  for (const auto& t : c.post.terms) {
    auto ok = cond_holds(t.cond);
    if (!ok || !*ok) continue;
    CTrace tr;
    State fin;
    try {
      tr = inst_trace(c.space, init, t.trace);
      fin = subst_image(c.space, t.update, init);
    } catch (const Error&) {
      continue;
    }
    if (static_cast<int>(tr.size()) > b.trace_len || !valid_trace(c.alpha, tr)) continue;
    out.push_back(obs_t(std::move(tr), std::move(fin)));
  }

  for (const auto& t : c.pre.terms) {
    auto ok = cond_holds(t.cond);
    if (!ok || !*ok) continue;
    CTrace tr;
    try {
      tr = inst_trace(c.space, init, t.trace);
    } catch (const Error&) {
      continue;
    }
    if (static_cast<int>(tr.size()) > b.trace_len || !valid_trace(c.alpha, tr)) continue;
    // A violated assumption diverges at its trace and at every in-bound
    // extension of it.
    std::vector<CTrace> frontier{tr};
    while (!frontier.empty()) {
      CTrace cur = std::move(frontier.back());
      frontier.pop_back();
      out.push_back(obs_d(cur));
      if (out.size() > b.state_limit) raise("BoundExceeded", "divergence closure too large");
      if (static_cast<int>(cur.size()) < b.trace_len) {
        for (const auto& ev : evs) {
          CTrace ext = cur;
          ext.push_back(ev);
          frontier.push_back(std::move(ext));
        }
      }
    }
  }

  ObsSet res = obs_normalize(std::move(out));

  // The divergence set must be closed under in-bound extension.
  for (const auto& o : res) {
    if (o.kind != Observation::Kind::Divergence) continue;
    if (static_cast<int>(o.trace.size()) >= b.trace_len) continue;
    for (const auto& ev : evs) {
      CTrace ext = o.trace;
      ext.push_back(ev);
      Observation probe = obs_d(ext);
      if (!std::binary_search(res.begin(), res.end(), probe, [](const Observation& x,
                                                                const Observation& y) {
            return obs_cmp(x, y) < 0;
          }))
        raise("Internal", "divergence set not extension-closed");
    }
  }
  return res;
}

// Small-step machinery. Runtime nodes mirror the elaborated syntax; external
// choice and parallel keep per-branch states so internal progress on one side
// cannot leak into the other before the choice resolves.

namespace {

enum class RKind { Done, Skip, Stop, Chaos, Miracle, Assign, Prefix, If, While, Seq, Int, Ext, Par };

struct RNode;
using RPtr = std::shared_ptr<const RNode>;

struct RNode {
  RKind kind = RKind::Skip;
  Subst sg;                  // Assign
  std::string chan;          // Prefix
  Expr data;                 // Prefix payload, may be null
  Expr cond;                 // If / While
  ProcPtr pa, pb;            // surface children (If branches, While body, Int operands, Seq rest)
  ProcPtr self;              // While: the loop itself, for re-entry
  RPtr first;                // Seq
  std::vector<std::pair<RPtr, State>> branches;  // Ext
  RPtr pl, pr;               // Par
  State sl, sr;              // Par branch states
  LensSet ns2;               // Par right frame, for the terminal merge
  std::vector<std::string> cs;
};

RPtr rnode(RNode n) { return std::make_shared<const RNode>(std::move(n)); }

RPtr r_leaf(RKind k) {
  RNode n;
  n.kind = k;
  return rnode(std::move(n));
}

RPtr start_r(const StateSpace& sp, const ProcPtr& p, const State& st) {
  switch (p->kind) {
    case PKind::Skip: return r_leaf(RKind::Skip);
    case PKind::Stop: return r_leaf(RKind::Stop);
    case PKind::Chaos: return r_leaf(RKind::Chaos);
    case PKind::Miracle: return r_leaf(RKind::Miracle);
    case PKind::Assign: {
      RNode n;
      n.kind = RKind::Assign;
      n.sg = subst_single(p->name, p->e);
      return rnode(std::move(n));
    }
    case PKind::Prefix: {
      RNode n;
      n.kind = RKind::Prefix;
      n.chan = p->name;
      n.data = p->e;
      n.pa = p->a;
      return rnode(std::move(n));
    }
    case PKind::Guard: {
      RNode n;
      n.kind = RKind::If;
      n.cond = p->e;
      n.pa = p->a;
      n.pb = p_stop();
      return rnode(std::move(n));
    }
    case PKind::If: {
      RNode n;
      n.kind = RKind::If;
      n.cond = p->e;
      n.pa = p->a;
      n.pb = p->b;
      return rnode(std::move(n));
    }
    case PKind::While: {
      RNode n;
      n.kind = RKind::While;
      n.cond = p->e;
      n.pa = p->a;
      n.self = p;
      return rnode(std::move(n));
    }
    case PKind::Seq: {
      RNode n;
      n.kind = RKind::Seq;
      n.first = start_r(sp, p->a, st);
      n.pb = p->b;
      return rnode(std::move(n));
    }
    case PKind::Int: {
      RNode n;
      n.kind = RKind::Int;
      n.pa = p->a;
      n.pb = p->b;
      return rnode(std::move(n));
    }
    case PKind::Ext: {
      RNode n;
      n.kind = RKind::Ext;
      n.branches = {{start_r(sp, p->a, st), st}, {start_r(sp, p->b, st), st}};
      return rnode(std::move(n));
    }
    case PKind::Par: {
      RNode n;
      n.kind = RKind::Par;
      n.pl = start_r(sp, p->a, st);
      n.pr = start_r(sp, p->b, st);
      n.sl = st;
      n.sr = st;
      n.ns2 = p->ns2;
      n.cs = p->cs;
      return rnode(std::move(n));
    }
    case PKind::Input:
    case PKind::Ref:
      raise("Unelaborated", "input prefixes and references must be elaborated before execution");
  }
  raise("Internal", "unhandled process kind");
}

int rt_cmp(const RPtr& a, const RPtr& b);

int rt_state_cmp(const std::pair<RPtr, State>& a, const std::pair<RPtr, State>& b) {
  if (int c = rt_cmp(a.first, b.first)) return c;
  return state_cmp(a.second, b.second);
}

int subst_cmp(const Subst& a, const Subst& b) {
  if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (int c = a.entries[i].first.compare(b.entries[i].first)) return c < 0 ? -1 : 1;
    if (int c = expr_cmp(a.entries[i].second, b.entries[i].second)) return c;
  }
  return 0;
}

int nexpr_cmp(const Expr& a, const Expr& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  return expr_cmp(a, b);
}

int rt_cmp(const RPtr& a, const RPtr& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  if (int c = subst_cmp(a->sg, b->sg)) return c;
  if (int c = a->chan.compare(b->chan)) return c < 0 ? -1 : 1;
  if (int c = nexpr_cmp(a->data, b->data)) return c;
  if (int c = nexpr_cmp(a->cond, b->cond)) return c;
  if (int c = proc_cmp(a->pa, b->pa)) return c;
  if (int c = proc_cmp(a->pb, b->pb)) return c;
  if (int c = rt_cmp(a->first, b->first)) return c;
  if (a->branches.size() != b->branches.size())
    return a->branches.size() < b->branches.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->branches.size(); ++i)
    if (int c = rt_state_cmp(a->branches[i], b->branches[i])) return c;
  if (int c = rt_cmp(a->pl, b->pl)) return c;
  if (int c = rt_cmp(a->pr, b->pr)) return c;
  if (int c = state_cmp(a->sl, b->sl)) return c;
  if (int c = state_cmp(a->sr, b->sr)) return c;
  if (a->ns2 != b->ns2) return a->ns2 < b->ns2 ? -1 : 1;
  if (a->cs != b->cs) return a->cs < b->cs ? -1 : 1;
  return 0;
}

struct Steps {
  std::vector<std::pair<EventVal, std::pair<RPtr, State>>> visible;
  std::vector<std::pair<RPtr, State>> taus;
  std::vector<State> term;
  bool unstable = false;
  bool stuck = false;
  bool diverges = false;
};

void add_term(Steps& s, State st) {
  for (const auto& t : s.term)
    if (t == st) return;
  s.term.push_back(std::move(st));
}

Steps transitions(const StateSpace& sp, const Alphabet& al, const RPtr& rt, const State& st) {
  Steps out;
  switch (rt->kind) {
    case RKind::Done:
    case RKind::Stop:
      break;
    case RKind::Skip:
      out.term.push_back(st);
      break;
    case RKind::Chaos:
      out.unstable = true;
      out.diverges = true;
      break;
    case RKind::Miracle:
      out.stuck = true;
      break;
    case RKind::Assign: {
      out.unstable = true;
      try {
        State next = subst_image(sp, rt->sg, st);
        out.taus.push_back({r_leaf(RKind::Skip), std::move(next)});
      } catch (const Error&) {
        // the internal step is impossible; the branch contributes nothing
      }
      break;
    }
    case RKind::Prefix: {
      EventVal ev{rt->chan, {}};
      bool ok = true;
      if (rt->data) {
        try {
          ev.data.push_back(eval_expr(sp, st, rt->data));
        } catch (const Error&) {
          ok = false;
        }
      }
      if (ok && valid_event(al, ev))
        out.visible.push_back({std::move(ev), {start_r(sp, rt->pa, st), st}});
      break;
    }
    case RKind::If: {
      bool cond;
      try {
        cond = eval_expr(sp, st, rt->cond).as_bool();
      } catch (const Error&) {
        break;  // blocked: stable with nothing on offer
      }
      out.unstable = true;
      out.taus.push_back({start_r(sp, cond ? rt->pa : rt->pb, st), st});
      break;
    }
    case RKind::While: {
      bool cond;
      try {
        cond = eval_expr(sp, st, rt->cond).as_bool();
      } catch (const Error&) {
        break;
      }
      out.unstable = true;
      if (!cond) {
        out.taus.push_back({r_leaf(RKind::Skip), st});
      } else {
        RNode n;
        n.kind = RKind::Seq;
        n.first = start_r(sp, rt->pa, st);
        n.pb = rt->self;
        out.taus.push_back({rnode(std::move(n)), st});
      }
      break;
    }
    case RKind::Seq: {
      Steps inner = transitions(sp, al, rt->first, st);
      out.stuck = inner.stuck;
      out.diverges = inner.diverges;
      out.unstable = inner.unstable || !inner.term.empty();
      for (auto& [ev, next] : inner.visible) {
        RNode n;
        n.kind = RKind::Seq;
        n.first = next.first;
        n.pb = rt->pb;
        out.visible.push_back({ev, {rnode(std::move(n)), next.second}});
      }
      for (auto& next : inner.taus) {
        RNode n;
        n.kind = RKind::Seq;
        n.first = next.first;
        n.pb = rt->pb;
        out.taus.push_back({rnode(std::move(n)), next.second});
      }
      for (auto& ts : inner.term) out.taus.push_back({start_r(sp, rt->pb, ts), ts});
      break;
    }
    case RKind::Int:
      out.unstable = true;
      out.taus.push_back({start_r(sp, rt->pa, st), st});
      out.taus.push_back({start_r(sp, rt->pb, st), st});
      break;
    case RKind::Ext: {
      for (std::size_t i = 0; i < rt->branches.size(); ++i) {
        Steps bs = transitions(sp, al, rt->branches[i].first, rt->branches[i].second);
        out.stuck = out.stuck || bs.stuck;
        out.diverges = out.diverges || bs.diverges;
        out.unstable = out.unstable || bs.unstable;
        for (auto& [ev, next] : bs.visible) out.visible.push_back({ev, next});
        for (auto& next : bs.taus) {
          RNode n;
          n.kind = RKind::Ext;
          n.branches = rt->branches;
          n.branches[i] = next;
          out.taus.push_back({rnode(std::move(n)), st});
        }
        for (auto& ts : bs.term) add_term(out, ts);
      }
      break;
    }
    case RKind::Par: {
      Steps ls = transitions(sp, al, rt->pl, rt->sl);
      Steps rs = transitions(sp, al, rt->pr, rt->sr);
      if (ls.stuck || rs.stuck) {
        out.stuck = true;
        break;
      }
      out.diverges = ls.diverges || rs.diverges;
      out.unstable = ls.unstable || rs.unstable;
      auto re_left = [&](const RPtr& l, const State& s) {
        RNode n;
        n.kind = RKind::Par;
        n.pl = l;
        n.sl = s;
        n.pr = rt->pr;
        n.sr = rt->sr;
        n.ns2 = rt->ns2;
        n.cs = rt->cs;
        return rnode(std::move(n));
      };
      auto re_right = [&](const RPtr& r, const State& s) {
        RNode n;
        n.kind = RKind::Par;
        n.pl = rt->pl;
        n.sl = rt->sl;
        n.pr = r;
        n.sr = s;
        n.ns2 = rt->ns2;
        n.cs = rt->cs;
        return rnode(std::move(n));
      };
      auto re_both = [&](const RPtr& l, const State& a, const RPtr& r, const State& b) {
        RNode n;
        n.kind = RKind::Par;
        n.pl = l;
        n.sl = a;
        n.pr = r;
        n.sr = b;
        n.ns2 = rt->ns2;
        n.cs = rt->cs;
        return rnode(std::move(n));
      };
      auto in_cs = [&](const EventVal& ev) {
        return std::binary_search(rt->cs.begin(), rt->cs.end(), ev.chan);
      };
      for (auto& next : ls.taus) out.taus.push_back({re_left(next.first, next.second), st});
      for (auto& next : rs.taus) out.taus.push_back({re_right(next.first, next.second), st});
      for (auto& [ev, next] : ls.visible)
        if (!in_cs(ev)) out.visible.push_back({ev, {re_left(next.first, next.second), st}});
      for (auto& [ev, next] : rs.visible)
        if (!in_cs(ev)) out.visible.push_back({ev, {re_right(next.first, next.second), st}});
      for (auto& [evl, nl] : ls.visible) {
        if (!in_cs(evl)) continue;
        for (auto& [evr, nr] : rs.visible) {
          if (!(evl == evr)) continue;
          out.visible.push_back({evl, {re_both(nl.first, nl.second, nr.first, nr.second), st}});
        }
      }
      // Termination is joint: it fires only when both sides are ready,
      // merging the branch states through the right frame.  A side that is
      // ready while its partner is not commits on its own through an
      // internal step into a terminated leaf that refuses everything; the
      // composite then waits for the partner (or deadlocks with it).
      bool l_done = rt->pl->kind == RKind::Done;
      bool r_done = rt->pr->kind == RKind::Done;
      for (const auto& lf : ls.term)
        for (const auto& rf : rs.term) add_term(out, lens_override(sp, lf, rf, rt->ns2));
      if (l_done)
        for (const auto& rf : rs.term) add_term(out, lens_override(sp, rt->sl, rf, rt->ns2));
      if (r_done)
        for (const auto& lf : ls.term) add_term(out, lens_override(sp, lf, rt->sr, rt->ns2));
      if (l_done && r_done) add_term(out, lens_override(sp, rt->sl, rt->sr, rt->ns2));
      bool l_ready = l_done || !ls.term.empty();
      bool r_ready = r_done || !rs.term.empty();
      if (!ls.term.empty() && !r_ready) {
        out.unstable = true;
        for (const auto& lf : ls.term)
          out.taus.push_back({re_left(r_leaf(RKind::Done), lf), st});
      }
      if (!rs.term.empty() && !l_ready) {
        out.unstable = true;
        for (const auto& rf : rs.term)
          out.taus.push_back({re_right(r_leaf(RKind::Done), rf), st});
      }
      break;
    }
  }
  return out;
}

}  // namespace

struct Conf {
  RPtr rt;
  State st;
};

ConfPtr conf_start(const StateSpace& sp, const ProcPtr& p, State st) {
  RPtr rt = start_r(sp, p, st);
  return std::make_shared<const Conf>(Conf{std::move(rt), std::move(st)});
}

int conf_cmp(const ConfPtr& a, const ConfPtr& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  if (int c = rt_cmp(a->rt, b->rt)) return c;
  return state_cmp(a->st, b->st);
}

static std::string show_r(const RPtr& rt) {
  if (!rt) return "<null>";
  switch (rt->kind) {
    case RKind::Done: return "done";
    case RKind::Skip: return "skip";
    case RKind::Stop: return "stop";
    case RKind::Chaos: return "chaos";
    case RKind::Miracle: return "miracle";
    case RKind::Assign: return "assign " + show(rt->sg);
    case RKind::Prefix:
      return rt->chan + (rt->data ? "!" + show(rt->data) : "") + " -> " + show(rt->pa);
    case RKind::If: return "if " + show(rt->cond) + " then " + show(rt->pa) + " else " + show(rt->pb);
    case RKind::While: return "while " + show(rt->cond) + " do " + show(rt->pa);
    case RKind::Seq: return "(" + show_r(rt->first) + " ; " + show(rt->pb) + ")";
    case RKind::Int: return "(" + show(rt->pa) + " |~| " + show(rt->pb) + ")";
    case RKind::Ext: {
      std::string s = "(";
      for (std::size_t i = 0; i < rt->branches.size(); ++i) {
        if (i) s += " [] ";
        s += show_r(rt->branches[i].first);
      }
      return s + ")";
    }
    case RKind::Par:
      return "(" + show_r(rt->pl) + " || " + show_r(rt->pr) + ")";
  }
  return "?";
}

std::string show(const ConfPtr& c) {
  if (!c) return "<null>";
  return show_r(c->rt);
}

std::vector<std::pair<StepLabel, ConfPtr>> step(const StateSpace& sp, const Alphabet& al,
                                                const ConfPtr& c) {
  std::vector<std::pair<StepLabel, ConfPtr>> out;
  Steps s = transitions(sp, al, c->rt, c->st);
  for (auto& [ev, next] : s.visible) {
    StepLabel l;
    l.kind = StepLabel::Kind::Event;
    l.ev = ev;
    out.push_back({l, std::make_shared<const Conf>(Conf{next.first, next.second})});
  }
  for (auto& next : s.taus) {
    StepLabel l;
    l.kind = StepLabel::Kind::Tau;
    out.push_back({l, std::make_shared<const Conf>(Conf{next.first, next.second})});
  }
  for (auto& ts : s.term) {
    StepLabel l;
    l.kind = StepLabel::Kind::Tick;
    out.push_back({l, std::make_shared<const Conf>(Conf{r_leaf(RKind::Done), ts})});
  }
  return out;
}

namespace {

struct ExploreKey {
  RPtr rt;
  State st;
  CTrace trace;
};

struct ExploreKeyLess {
  bool operator()(const ExploreKey& a, const ExploreKey& b) const {
    if (int c = rt_cmp(a.rt, b.rt)) return c < 0;
    if (int c = state_cmp(a.st, b.st)) return c < 0;
    return ctrace_cmp(a.trace, b.trace) < 0;
  }
};

struct Explorer {
  const StateSpace& sp;
  const Alphabet& al;
  const Bounds& b;
  std::vector<Observation> obs;
  std::map<ExploreKey, int, ExploreKeyLess> status;  // 1 = on stack, 2 = done

  void visit(const RPtr& rt, const State& st, const CTrace& trace) {
    ExploreKey key{rt, st, trace};
    auto it = status.find(key);
    if (it != status.end()) {
      // Revisiting a configuration still on the stack closes an internal
      // cycle: the process can refuse to ever stabilise.
      if (it->second == 1) obs.push_back(obs_d(trace));
      return;
    }
    if (status.size() >= b.state_limit) raise("BoundExceeded", "exploration exceeded state limit");
    status[key] = 1;
    Steps s = transitions(sp, al, rt, st);
    if (s.diverges) {
      obs.push_back(obs_d(trace));
    } else {
      for (auto& ts : s.term) obs.push_back(obs_t(trace, ts));
      if (!s.unstable && !s.stuck && s.term.empty()) {
        std::vector<EventVal> acc;
        for (const auto& [ev, next] : s.visible) acc.push_back(ev);
        obs.push_back(obs_q(trace, std::move(acc)));
      }
      for (auto& next : s.taus) visit(next.first, next.second, trace);
      if (static_cast<int>(trace.size()) < b.trace_len) {
        for (auto& [ev, next] : s.visible) {
          CTrace ext = trace;
          ext.push_back(ev);
          visit(next.first, next.second, ext);
        }
      }
    }
    status[key] = 2;
  }
};

}  // namespace

ObsSet explore_bounded(const StateSpace& sp, const Alphabet& al, const ProcPtr& p,
                       const State& init, const Bounds& b) {
  Explorer ex{sp, al, b, {}, {}};
  ex.visit(start_r(sp, p, init), init, {});
  return obs_normalize(std::move(ex.obs));
}

ObsSet close_divergence(const ObsSet& s) {
  std::vector<CTrace> divs;
  for (const auto& o : s)
    if (o.kind == Observation::Kind::Divergence) divs.push_back(o.trace);
  std::sort(divs.begin(), divs.end(),
            [](const CTrace& a, const CTrace& b) { return ctrace_cmp(a, b) < 0; });
  std::vector<CTrace> minimal;
  for (const auto& d : divs) {
    bool covered = false;
    for (const auto& m : minimal)
      if (is_prefix(m, d)) {
        covered = true;
        break;
      }
    if (!covered) minimal.push_back(d);
  }
  std::vector<Observation> out;
  for (const auto& o : s) {
    if (o.kind == Observation::Kind::Divergence) continue;
    bool shadowed = false;
    for (const auto& m : minimal)
      if (is_prefix(m, o.trace)) {
        shadowed = true;
        break;
      }
    if (!shadowed) out.push_back(o);
  }
  for (const auto& m : minimal) out.push_back(obs_d(m));
  return obs_normalize(std::move(out));
}

CrossCheckReport cross_check(const StateSpace& sp, const Alphabet& al, const ProcPtr& p,
                             const Contract& c, const Bounds& b) {
  CrossCheckReport rep;
  for (const auto& init : sp.enumerate(b.state_limit)) {
    ++rep.states_checked;
    ObsSet denoted = close_divergence(denote_bounded(c, init, b));
    ObsSet explored = close_divergence(explore_bounded(sp, al, p, init, b));
    StateMismatch mm;
    mm.init = init;
    std::set_difference(denoted.begin(), denoted.end(), explored.begin(), explored.end(),
                        std::back_inserter(mm.only_denoted),
                        [](const Observation& a, const Observation& b) {
                          return obs_cmp(a, b) < 0;
                        });
    std::set_difference(explored.begin(), explored.end(), denoted.begin(), denoted.end(),
                        std::back_inserter(mm.only_explored),
                        [](const Observation& a, const Observation& b) {
                          return obs_cmp(a, b) < 0;
                        });
    if (!mm.only_denoted.empty() || !mm.only_explored.empty()) {
      rep.ok = false;
      rep.mismatches.push_back(std::move(mm));
    }
  }
  return rep;
}

}  // namespace rc
