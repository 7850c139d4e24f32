#include "reacalc/parallel.hpp"

#include <algorithm>
#include <sstream>

namespace rc {

namespace {

using CTrace = std::vector<EventVal>;

int cev_cmp(const EventVal& a, const EventVal& b) { return value_cmp(Value(a), Value(b)); }

int ctr_cmp(const CTrace& a, const CTrace& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cev_cmp(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::vector<CTrace> prepend(const EventVal& e, std::vector<CTrace> ts) {
  for (auto& t : ts) t.insert(t.begin(), e);
  return ts;
}

std::vector<CTrace> concat(std::vector<CTrace> a, std::vector<CTrace> b) {
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  return a;
}

std::vector<CTrace> cmerge(const CTrace& a, size_t i, const CTrace& b, size_t j,
                           const ChannelSet& cs) {
  if (i == a.size() && j == b.size()) return {CTrace{}};
  if (i == a.size()) {
    if (cs_member(cs, b[j].chan)) return {CTrace{}};
    return prepend(b[j], cmerge(a, i, b, j + 1, cs));
  }
  if (j == b.size()) {
    if (cs_member(cs, a[i].chan)) return {CTrace{}};
    return prepend(a[i], cmerge(a, i + 1, b, j, cs));
  }
  const EventVal& e1 = a[i];
  const EventVal& e2 = b[j];
  bool in1 = cs_member(cs, e1.chan);
  bool in2 = cs_member(cs, e2.chan);
  if (cev_cmp(e1, e2) == 0) {
    if (in1) return prepend(e1, cmerge(a, i + 1, b, j + 1, cs));
    return concat(prepend(e1, cmerge(a, i + 1, b, j, cs)),
                  prepend(e2, cmerge(a, i, b, j + 1, cs)));
  }
  if (in1 && in2) return {CTrace{}};
  if (in1) return prepend(e2, cmerge(a, i, b, j + 1, cs));
  if (in2) return prepend(e1, cmerge(a, i + 1, b, j, cs));
  return concat(prepend(e1, cmerge(a, i + 1, b, j, cs)),
                prepend(e2, cmerge(a, i, b, j + 1, cs)));
}

}  // namespace

ChannelSet cs_of(std::vector<std::string> channels) {
  std::sort(channels.begin(), channels.end());
  channels.erase(std::unique(channels.begin(), channels.end()), channels.end());
  return ChannelSet{std::move(channels)};
}

bool cs_member(const ChannelSet& cs, const std::string& chan) {
  return std::binary_search(cs.channels.begin(), cs.channels.end(), chan);
}

std::vector<std::vector<EventVal>> trace_merge_concrete(const std::vector<EventVal>& t1,
                                                        const std::vector<EventVal>& t2,
                                                        const ChannelSet& cs) {
  auto out = cmerge(t1, 0, t2, 0, cs);
  std::sort(out.begin(), out.end(),
            [](const CTrace& x, const CTrace& y) { return ctr_cmp(x, y) < 0; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const CTrace& x, const CTrace& y) { return ctr_cmp(x, y) == 0; }),
            out.end());
  return out;
}

bool operator==(const MergeResidual& a, const MergeResidual& b) {
  return expr_cmp(a.cond, b.cond) == 0 && trace_expr_cmp(a.trace, b.trace) == 0;
}

std::string show(const MergeResidual& r) {
  return "(" + show(r.cond) + ", " + show(r.trace) + ")";
}

namespace {

// Collects the data equality for one synchronized pair; identical expressions
// need no constraint. A data arity mismatch makes the pair unmergeable.
bool pair_eq(std::vector<Expr>& eqs, const EventExpr& x, const EventExpr& y) {
  if (x.data.has_value() != y.data.has_value()) return false;
  if (!x.data || expr_cmp(*x.data, *y.data) == 0) return true;
  eqs.push_back(ex_eq(*x.data, *y.data));
  return true;
}

void smerge(const std::vector<EventExpr>& a, size_t i, const std::vector<EventExpr>& b, size_t j,
            const ChannelSet& cs, std::vector<EventExpr>& acc, std::vector<TraceExpr>& out) {
  if (i == a.size() && j == b.size()) {
    out.push_back(tr_of(acc));
    return;
  }
  if (i < a.size() && !cs_member(cs, a[i].chan)) {
    acc.push_back(a[i]);
    smerge(a, i + 1, b, j, cs, acc, out);
    acc.pop_back();
  }
  if (j < b.size() && !cs_member(cs, b[j].chan)) {
    acc.push_back(b[j]);
    smerge(a, i, b, j + 1, cs, acc, out);
    acc.pop_back();
  }
  if (i < a.size() && j < b.size() && cs_member(cs, a[i].chan) && cs_member(cs, b[j].chan)) {
    // The projection precheck guarantees the channels match here; the second
    // operand's payload stands for both.
    acc.push_back(b[j]);
    smerge(a, i + 1, b, j + 1, cs, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<MergeResidual> trace_merge_symbolic(const TraceExpr& t1, const TraceExpr& t2,
                                                const ChannelSet& cs) {
  std::vector<const EventExpr*> pa, pb;
  for (const auto& e : t1.items)
    if (cs_member(cs, e.chan)) pa.push_back(&e);
  for (const auto& e : t2.items)
    if (cs_member(cs, e.chan)) pb.push_back(&e);
  if (pa.size() != pb.size()) return {};
  std::vector<Expr> eqs;
  for (size_t k = 0; k < pa.size(); ++k) {
    if (pa[k]->chan != pb[k]->chan) return {};
    if (!pair_eq(eqs, *pa[k], *pb[k])) return {};
  }
  Expr cond = ex_true();
  for (const auto& e : eqs) cond = ex_and(cond, e);
  cond = fold(cond);
  if (is_lit_false(cond)) return {};

  std::vector<TraceExpr> traces;
  std::vector<EventExpr> acc;
  smerge(t1.items, 0, t2.items, 0, cs, acc, traces);
  std::vector<MergeResidual> out;
  for (auto& t : traces) {
    bool seen = false;
    for (const auto& r : out)
      if (trace_expr_cmp(r.trace, t) == 0) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(MergeResidual{cond, std::move(t)});
  }
  return out;
}

Subst subst_par_merge(const Subst& sg1, const LensSet& ns1, const Subst& sg2, const LensSet& ns2) {
  if (!lens_independent(ns1, ns2)) {
    std::ostringstream os;
    os << "parallel frames overlap on";
    for (const auto& n : lens_inter(ns1, ns2)) os << " " << n;
    raise("LensOverlap", os.str());
  }
  Subst out = subst_id();
  for (const auto& [name, e] : sg1.entries)
    if (lens_member(ns1, name)) out = subst_update(out, name, e);
  for (const auto& [name, e] : sg2.entries)
    if (lens_member(ns2, name)) out = subst_update(out, name, e);
  return out;
}

PostRel merge_finalisers(const PhiTerm& p, const PhiTerm& q, const LensSet& ns1,
                         const ChannelSet& cs, const LensSet& ns2) {
  Subst upd = subst_par_merge(p.update, ns1, q.update, ns2);
  PostRel out;
  for (const auto& r : trace_merge_symbolic(p.trace, q.trace, cs))
    out.terms.push_back(mk_phi(ex_and(ex_and(p.cond, q.cond), r.cond), upd, r.trace));
  return norm_post(std::move(out));
}

namespace {

// Synchronized offers need agreement from both sides: same channel in cs,
// both guards, and equal payloads.
AcceptSpec accept_join(const AcceptSpec& e1, const AcceptSpec& e2, const ChannelSet& cs) {
  AcceptSpec out;
  for (const auto& x : e1.entries)
    for (const auto& y : e2.entries) {
      if (x.chan != y.chan || !cs_member(cs, x.chan)) continue;
      if (x.data.has_value() != y.data.has_value()) continue;
      Expr g = ex_and(x.guard, y.guard);
      if (x.data && expr_cmp(*x.data, *y.data) != 0) g = ex_and(g, ex_eq(*x.data, *y.data));
      out = acc_union(out, AcceptSpec{{AcceptEntry{fold(g), x.chan, x.data}}});
    }
  return out;
}

AcceptSpec accept_outside(const AcceptSpec& e, const ChannelSet& cs) {
  AcceptSpec out;
  for (const auto& x : e.entries)
    if (!cs_member(cs, x.chan)) out = acc_union(out, AcceptSpec{{x}});
  return out;
}

}  // namespace

PeriRel merge_quiescent(const ETerm& p, const ETerm& q, const ChannelSet& cs) {
  AcceptSpec acc = acc_union(accept_join(p.accept, q.accept, cs),
                             acc_union(accept_outside(p.accept, cs), accept_outside(q.accept, cs)));
  PeriRel out;
  for (const auto& r : trace_merge_symbolic(p.trace, q.trace, cs))
    out.terms.push_back(mk_eterm(ex_and(ex_and(p.cond, q.cond), r.cond), r.trace, acc));
  return norm_peri(std::move(out));
}

PeriRel merge_quiescent(const ETerm& p, const PhiTerm& q, const ChannelSet& cs) {
  AcceptSpec acc = accept_outside(p.accept, cs);
  PeriRel out;
  for (const auto& r : trace_merge_symbolic(p.trace, q.trace, cs))
    out.terms.push_back(mk_eterm(ex_and(ex_and(p.cond, q.cond), r.cond), r.trace, acc));
  return norm_peri(std::move(out));
}

namespace {

// Boundary traces past which the partner's assumption q is exhausted: q's
// trace, extended just far enough to discharge the synchronizations that the
// observed trace t1 demands, merged against t1 itself.
std::vector<ITerm> wrely_terms(const Expr& s1, const TraceExpr& t1, const ITerm& q,
                               const ChannelSet& cs, int ext_bound) {
  const TraceExpr& t2 = q.trace;
  size_t bound =
      ext_bound >= 0 ? size_t(ext_bound) : t1.items.size() + t2.items.size();
  std::vector<const EventExpr*> p1, p2;
  for (const auto& e : t1.items)
    if (cs_member(cs, e.chan)) p1.push_back(&e);
  for (const auto& e : t2.items)
    if (cs_member(cs, e.chan)) p2.push_back(&e);
  if (p2.size() > p1.size()) return {};
  for (size_t k = 0; k < p2.size(); ++k)
    if (p2[k]->chan != p1[k]->chan) return {};
  TraceExpr ext = t2;
  for (size_t k = p2.size(); k < p1.size(); ++k) ext.items.push_back(*p1[k]);

  std::vector<ITerm> out;
  for (const auto& r : trace_merge_symbolic(ext, t1, cs)) {
    if (r.trace.items.size() > bound)
      raise("ExtensionBoundExceeded",
            "boundary trace " + show(r.trace) + " exceeds the extension bound " +
                std::to_string(bound));
    Expr c = fold(ex_and(ex_and(s1, q.cond), r.cond));
    if (is_lit_false(c)) continue;
    bool seen = false;
    for (const auto& have : out)
      if (iterm_cmp(have, ITerm{c, r.trace}) == 0) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(mk_iterm(c, r.trace));
  }
  return out;
}

}  // namespace

PreRel wrely(const PhiTerm& p, const ITerm& q, const ChannelSet& cs, int ext_bound) {
  return PreRel{wrely_terms(p.cond, p.trace, q, cs, ext_bound)};
}

PreRel wrely(const ETerm& p, const ITerm& q, const ChannelSet& cs, int ext_bound) {
  return PreRel{wrely_terms(p.cond, p.trace, q, cs, ext_bound)};
}

Contract par_contract(const Contract& c1, const LensSet& ns1, const ChannelSet& cs,
                      const LensSet& ns2, const Contract& c2) {
  if (!same_space(c1.space, c2.space) || !(c1.alpha == c2.alpha))
    raise("AlphabetMismatch", "parallel operands must share one state space and alphabet");
  if (!lens_independent(ns1, ns2)) {
    std::ostringstream os;
    os << "parallel frames overlap on";
    for (const auto& n : lens_inter(ns1, ns2)) os << " " << n;
    raise("LensOverlap", os.str());
  }
  for (const auto& ch : cs.channels) c1.alpha.require(ch);

  // One assumption block per direction and observation kind. Each peri/post
  // disjunct of one side is weighed against every assumption term of the
  // other; a side whose own assumption can fail also exposes its failure
  // traces, since behaviour past them is unconstrained.
  struct Piece {
    Expr cond;
    TraceExpr trace;
  };
  auto pieces = [](const std::vector<Piece>& base, const PreRel& own) {
    std::vector<Piece> out = base;
    for (const auto& t : own.terms) out.push_back(Piece{t.cond, t.trace});
    return out;
  };
  auto of_peri = [](const PeriRel& r) {
    std::vector<Piece> out;
    for (const auto& t : r.terms) out.push_back(Piece{t.cond, t.trace});
    return out;
  };
  auto of_post = [](const PostRel& r) {
    std::vector<Piece> out;
    for (const auto& t : r.terms) out.push_back(Piece{t.cond, t.trace});
    return out;
  };

  bool clipped = false;
  PreRel pre;
  auto block = [&](const std::vector<Piece>& ops, const PreRel& against) {
    for (const auto& q : against.terms)
      for (const auto& p : ops) {
        try {
          auto ts = wrely_terms(p.cond, p.trace, q, cs, -1);
          pre.terms.insert(pre.terms.end(), ts.begin(), ts.end());
        } catch (const Error& err) {
          if (err.kind != "ExtensionBoundExceeded") throw;
          clipped = true;
        }
      }
  };
  block(pieces(of_peri(c1.peri), c1.pre), c2.pre);
  block(pieces(of_post(c1.post), c1.pre), c2.pre);
  block(pieces(of_peri(c2.peri), c2.pre), c1.pre);
  block(pieces(of_post(c2.post), c2.pre), c1.pre);

  PeriRel peri;
  auto add_peri = [&peri](PeriRel r) {
    peri.terms.insert(peri.terms.end(), r.terms.begin(), r.terms.end());
  };
  for (const auto& p : c1.peri.terms)
    for (const auto& q : c2.peri.terms) add_peri(merge_quiescent(p, q, cs));
  for (const auto& f : c1.post.terms)
    for (const auto& q : c2.peri.terms) add_peri(merge_quiescent(q, f, cs));
  for (const auto& p : c1.peri.terms)
    for (const auto& f : c2.post.terms) add_peri(merge_quiescent(p, f, cs));

  PostRel post;
  for (const auto& f1 : c1.post.terms)
    for (const auto& f2 : c2.post.terms) {
      PostRel r = merge_finalisers(f1, f2, ns1, cs, ns2);
      post.terms.insert(post.terms.end(), r.terms.begin(), r.terms.end());
    }

  return mk_contract(c1.space, c1.alpha, std::move(pre), std::move(peri), std::move(post),
                     c1.bounded || c2.bounded || clipped);
}

}  // namespace rc
