#include "reacalc/contract.hpp"

#include <algorithm>
#include <sstream>

namespace rc {

void Alphabet::add(const std::string& name, std::optional<Domain> dom) {
  if (find(name)) raise("DuplicateName", "channel '" + name + "' declared twice");
  chans.push_back(Channel{name, std::move(dom)});
  std::sort(chans.begin(), chans.end(),
            [](const Channel& a, const Channel& b) { return a.name < b.name; });
}

const Channel* Alphabet::find(const std::string& name) const {
  for (const auto& c : chans)
    if (c.name == name) return &c;
  return nullptr;
}

const Channel& Alphabet::require(const std::string& name) const {
  const Channel* c = find(name);
  if (!c) raise("UnknownName", "channel '" + name + "' not declared");
  return *c;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.chans.size() != b.chans.size()) return false;
  for (std::size_t i = 0; i < a.chans.size(); ++i) {
    if (a.chans[i].name != b.chans[i].name) return false;
    if (a.chans[i].dom.has_value() != b.chans[i].dom.has_value()) return false;
    if (a.chans[i].dom && !(*a.chans[i].dom == *b.chans[i].dom)) return false;
  }
  return true;
}

std::vector<EventVal> alphabet_events(const Alphabet& a) {
  std::vector<EventVal> out;
  for (const auto& c : a.chans) {
    if (!c.dom) {
      out.push_back(EventVal{c.name, {}});
    } else {
      for (const auto& v : c.dom->enumerate()) out.push_back(EventVal{c.name, {v}});
    }
  }
  return out;
}

bool same_space(const StateSpace& a, const StateSpace& b) {
  if (a.names != b.names) return false;
  for (std::size_t i = 0; i < a.doms.size(); ++i)
    if (!(a.doms[i] == b.doms[i])) return false;
  return true;
}

Contract mk_contract(StateSpace space, Alphabet alpha, PreRel pre, PeriRel peri, PostRel post,
                     bool bounded) {
  pre = normalize_pre(space, std::move(pre));
  if (pre_is_false(space, pre))
    return Contract{std::move(space), std::move(alpha), pre_false(), peri_false(), post_false(),
                    bounded};
  peri = norm_peri(std::move(peri));
  post = norm_post(std::move(post));
  check_wf(space, pre);
  check_wf(space, peri);
  check_wf(space, post);
  return Contract{std::move(space), std::move(alpha), std::move(pre), std::move(peri),
                  std::move(post), bounded};
}

// Disjunct and conjunct lists keep their construction order for display, so
// contract identity compares them as multisets.
template <typename T, typename Cmp>
static bool same_terms(std::vector<T> a, std::vector<T> b, Cmp cmp) {
  if (a.size() != b.size()) return false;
  auto lt = [&](const T& x, const T& y) { return cmp(x, y) < 0; };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (cmp(a[i], b[i]) != 0) return false;
  return true;
}

bool operator==(const Contract& a, const Contract& b) {
  return same_space(a.space, b.space) && a.alpha == b.alpha && a.bounded == b.bounded &&
         same_terms(a.pre.terms, b.pre.terms, iterm_cmp) &&
         same_terms(a.peri.terms, b.peri.terms, eterm_cmp) &&
         same_terms(a.post.terms, b.post.terms, phi_cmp);
}

std::string show(const Contract& c) {
  std::ostringstream os;
  os << "pre: " << show(c.pre) << "\n";
  os << "peri: " << show(c.peri) << "\n";
  os << "post: " << show(c.post) << "\n";
  return os.str();
}

Contract ct_skip(const StateSpace& sp, const Alphabet& al) {
  return mk_contract(sp, al, pre_true(), peri_false(), PostRel{{phi_id()}});
}

Contract ct_stop(const StateSpace& sp, const Alphabet& al) {
  return mk_contract(sp, al, pre_true(), PeriRel{{mk_eterm(ex_true(), tr_empty(), acc_of({}))}},
                     post_false());
}

Contract ct_chaos(const StateSpace& sp, const Alphabet& al) {
  return mk_contract(sp, al, pre_false(), peri_false(), post_false());
}

Contract ct_miracle(const StateSpace& sp, const Alphabet& al) {
  return mk_contract(sp, al, pre_true(), peri_false(), post_false());
}

Contract ct_do(const StateSpace& sp, const Alphabet& al, const EventExpr& e) {
  const Channel& ch = al.require(e.chan);
  if (ch.dom.has_value() != e.data.has_value())
    raise("Type", "event '" + e.chan + "' " +
                      (ch.dom ? "requires a data value" : "carries no data"));
  return mk_contract(sp, al, pre_true(), PeriRel{{mk_eterm(ex_true(), tr_empty(), acc_of({e}))}},
                     PostRel{{mk_phi(ex_true(), subst_id(), tr_of({e}))}});
}

Contract ct_assign(const StateSpace& sp, const Alphabet& al, const Subst& sg) {
  return mk_contract(sp, al, pre_true(), peri_false(),
                     PostRel{{mk_phi(ex_true(), sg, tr_empty())}});
}

Contract ct_accept(const StateSpace& sp, const Alphabet& al) {
  std::vector<EventExpr> evs;
  for (const auto& c : al.chans) {
    if (!c.dom) {
      evs.push_back(ev_pure(c.name));
    } else {
      for (const auto& v : c.dom->enumerate()) evs.push_back(ev_data(c.name, ex_lit(v)));
    }
  }
  return mk_contract(sp, al, pre_true(), PeriRel{{mk_eterm(ex_true(), tr_empty(), acc_of(evs))}},
                     post_false());
}

static void require_compatible(const Contract& a, const Contract& b) {
  if (!same_space(a.space, b.space) || !(a.alpha == b.alpha))
    raise("AlphabetMismatch", "operands declare different state spaces or alphabets");
}

Contract seq_contract(const Contract& a, const Contract& b) {
  require_compatible(a, b);
  PreRel pre = a.pre;
  PreRel lifted = wp_rel(a.space, a.post, b.pre);
  pre.terms.insert(pre.terms.end(), lifted.terms.begin(), lifted.terms.end());
  PeriRel peri = a.peri;
  PeriRel through = seq_compose_rel(a.post, b.peri);
  peri.terms.insert(peri.terms.end(), through.terms.begin(), through.terms.end());
  PostRel post = seq_compose_rel(a.post, b.post);
  return mk_contract(a.space, a.alpha, std::move(pre), std::move(peri), std::move(post),
                     a.bounded || b.bounded);
}

Contract intchoice_contract(const std::vector<Contract>& cs) {
  if (cs.empty()) raise("EmptyChoice", "internal choice needs at least one operand");
  PreRel pre;
  PeriRel peri;
  PostRel post;
  bool bounded = false;
  for (const auto& c : cs) {
    require_compatible(cs.front(), c);
    pre.terms.insert(pre.terms.end(), c.pre.terms.begin(), c.pre.terms.end());
    peri.terms.insert(peri.terms.end(), c.peri.terms.begin(), c.peri.terms.end());
    post.terms.insert(post.terms.end(), c.post.terms.begin(), c.post.terms.end());
    bounded = bounded || c.bounded;
  }
  return mk_contract(cs.front().space, cs.front().alpha, std::move(pre), std::move(peri),
                     std::move(post), bounded);
}

Contract cond_contract(const Contract& a, const Expr& b, const Contract& c) {
  require_compatible(a, c);
  return mk_contract(a.space, a.alpha, cond_distribute(a.pre, b, c.pre),
                     cond_distribute(a.peri, b, c.peri), cond_distribute(a.post, b, c.post),
                     a.bounded || c.bounded);
}

Contract guard_contract(const Expr& g, const Contract& p) {
  return cond_contract(p, g, ct_stop(p.space, p.alpha));
}

Contract extchoice_contract(const std::vector<Contract>& cs) {
  if (cs.empty()) raise("EmptyChoice", "external choice needs at least one operand");
  PreRel pre;
  PostRel post;
  bool bounded = false;
  for (const auto& c : cs) {
    require_compatible(cs.front(), c);
    pre.terms.insert(pre.terms.end(), c.pre.terms.begin(), c.pre.terms.end());
    post.terms.insert(post.terms.end(), c.post.terms.begin(), c.post.terms.end());
    bounded = bounded || c.bounded;
  }
  // Quiescence before any visible progress is joint: every operand must agree
  // to wait, and the offers pool. One conjunct per combination of the
  // operands' initial disjuncts.
  PeriRel peri;
  std::vector<std::vector<ETerm>> initials;
  bool any_empty = false;
  for (const auto& c : cs) {
    PeriRel f = filter_trace(TraceFilter::EmptyOnly, c.peri);
    if (f.terms.empty()) any_empty = true;
    initials.push_back(std::move(f.terms));
  }
  if (!any_empty) {
    std::vector<std::size_t> idx(cs.size(), 0);
    bool more = true;
    while (more) {
      std::vector<ETerm> pick;
      for (std::size_t i = 0; i < idx.size(); ++i) pick.push_back(initials[i][idx[i]]);
      peri.terms.push_back(conj_quiescent(pick));
      std::size_t k = idx.size();
      more = false;
      while (k-- > 0) {
        if (++idx[k] < initials[k].size()) {
          more = true;
          break;
        }
        idx[k] = 0;
      }
    }
  }
  // After the first visible event the choice is resolved; the committed
  // operand's quiescent observations carry over unchanged.
  for (const auto& c : cs) {
    PeriRel f = filter_trace(TraceFilter::NonemptyOnly, c.peri);
    peri.terms.insert(peri.terms.end(), f.terms.begin(), f.terms.end());
  }
  return mk_contract(cs.front().space, cs.front().alpha, std::move(pre), std::move(peri),
                     std::move(post), bounded);
}

HealthFlags health_flags(const Contract& c) {
  HealthFlags h;
  h.productive = true;
  bool all_id_trace = true;
  for (const auto& t : c.post.terms) {
    if (t.trace.items.empty()) h.productive = false;
    if (!t.trace.items.empty()) all_id_trace = false;
  }
  h.instantaneous = c.peri.terms.empty() && all_id_trace;
  if (pre_is_false(c.space, c.pre)) {
    h.cacc = true;
  } else {
    Expr any = ex_false();
    for (const auto& t : c.peri.terms)
      if (t.trace.items.empty()) any = ex_or(any, t.cond);
    h.cacc = cond_valid_bounded(c.space, any);
  }
  h.cdc = true;
  return h;
}

static bool feasible_post(const StateSpace& sp, const PostRel& p) {
  for (const auto& t : p.terms)
    if (cond_sat_bounded(sp, t.cond)) return true;
  return false;
}

Contract while_contract(const Expr& b, const Contract& body, int star_bound) {
  Expr cond = fold(b);
  HealthFlags h = health_flags(body);
  if (!h.productive) {
    if (h.instantaneous && feasible_post(body.space, body.post) && is_lit_true(cond))
      return ct_chaos(body.space, body.alpha);
    raise("NonProductiveBody",
          "loop body can terminate without making visible progress; the loop would be unbounded");
  }
  PostRel enter{{mk_phi(cond, subst_id(), tr_empty())}};
  PostRel step = seq_compose_rel(enter, body.post);
  StarResult star = star_finaliser_ex(step, star_bound);
  PostRel star_enter = seq_compose_rel(star.rel, enter);
  PreRel pre = wp_rel(body.space, star_enter, body.pre);
  PeriRel peri = seq_compose_rel(star_enter, body.peri);
  PostRel exit{{mk_phi(ex_not(cond), subst_id(), tr_empty())}};
  PostRel post = seq_compose_rel(star.rel, exit);
  return mk_contract(body.space, body.alpha, std::move(pre), std::move(peri), std::move(post),
                     body.bounded || !star.exact);
}

Contract iterate_contract(const Contract& c, int star_bound) {
  StarResult star = star_finaliser_ex(c.post, star_bound);
  PreRel pre = wp_rel(c.space, star.rel, c.pre);
  PeriRel peri = seq_compose_rel(star.rel, c.peri);
  return mk_contract(c.space, c.alpha, std::move(pre), std::move(peri), star.rel,
                     c.bounded || !star.exact);
}

}  // namespace rc
