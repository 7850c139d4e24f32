#include "reacalc/expr.hpp"

#include <algorithm>

namespace rc {

namespace {

Expr mk(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

Expr mk_kids(Op op, std::vector<Expr> kids) {
  ExprNode n;
  n.op = op;
  n.kids = std::move(kids);
  return mk(std::move(n));
}

}  // namespace

Expr ex_lit(Value v) {
  ExprNode n;
  n.op = Op::Lit;
  n.lit = std::move(v);
  return mk(std::move(n));
}

Expr ex_bool(bool b) { return ex_lit(Value(b)); }

Expr ex_true() {
  static const Expr e = ex_bool(true);
  return e;
}

Expr ex_false() {
  static const Expr e = ex_bool(false);
  return e;
}

Expr ex_int(long long n) { return ex_lit(Value(n)); }

Expr ex_var(std::string name) {
  ExprNode n;
  n.op = Op::Var;
  n.name = std::move(name);
  return mk(std::move(n));
}

Expr ex_not(Expr a) { return mk_kids(Op::Not, {std::move(a)}); }
Expr ex_neg(Expr a) { return mk_kids(Op::Neg, {std::move(a)}); }
Expr ex_and(Expr a, Expr b) { return mk_kids(Op::And, {std::move(a), std::move(b)}); }
Expr ex_or(Expr a, Expr b) { return mk_kids(Op::Or, {std::move(a), std::move(b)}); }
Expr ex_imp(Expr a, Expr b) { return mk_kids(Op::Imp, {std::move(a), std::move(b)}); }
Expr ex_eq(Expr a, Expr b) { return mk_kids(Op::Eq, {std::move(a), std::move(b)}); }
Expr ex_ne(Expr a, Expr b) { return mk_kids(Op::Ne, {std::move(a), std::move(b)}); }
Expr ex_lt(Expr a, Expr b) { return mk_kids(Op::Lt, {std::move(a), std::move(b)}); }
Expr ex_le(Expr a, Expr b) { return mk_kids(Op::Le, {std::move(a), std::move(b)}); }
Expr ex_add(Expr a, Expr b) { return mk_kids(Op::Add, {std::move(a), std::move(b)}); }
Expr ex_sub(Expr a, Expr b) { return mk_kids(Op::Sub, {std::move(a), std::move(b)}); }
Expr ex_mul(Expr a, Expr b) { return mk_kids(Op::Mul, {std::move(a), std::move(b)}); }
Expr ex_concat(Expr a, Expr b) { return mk_kids(Op::Concat, {std::move(a), std::move(b)}); }
Expr ex_head(Expr a) { return mk_kids(Op::Head, {std::move(a)}); }
Expr ex_tail(Expr a) { return mk_kids(Op::Tail, {std::move(a)}); }
Expr ex_len(Expr a) { return mk_kids(Op::Len, {std::move(a)}); }
Expr ex_mkseq(std::vector<Expr> items) { return mk_kids(Op::MkSeq, std::move(items)); }

Expr ex_cond(Expr guard, Expr then_e, Expr else_e) {
  return mk_kids(Op::Cond, {std::move(guard), std::move(then_e), std::move(else_e)});
}

Expr ex_event(std::string chan, std::optional<Expr> data) {
  ExprNode n;
  n.op = Op::Event;
  n.name = std::move(chan);
  if (data) n.kids.push_back(std::move(*data));
  return mk(std::move(n));
}

Expr ex_filter(Expr trace, std::vector<std::string> chans) {
  ExprNode n;
  n.op = Op::Filter;
  n.chans = std::move(chans);
  std::sort(n.chans.begin(), n.chans.end());
  n.kids.push_back(std::move(trace));
  return mk(std::move(n));
}

Expr ex_proj(Expr trace, std::string chan) {
  ExprNode n;
  n.op = Op::Proj;
  n.name = std::move(chan);
  n.kids.push_back(std::move(trace));
  return mk(std::move(n));
}

int expr_cmp(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (a->op == Op::Lit)
    if (int c = value_cmp(a->lit, b->lit); c != 0) return c;
  if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
  if (a->chans != b->chans) return a->chans < b->chans ? -1 : 1;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (int c = expr_cmp(a->kids[i], b->kids[i]); c != 0) return c;
  return 0;
}

bool expr_eq(const Expr& a, const Expr& b) { return expr_cmp(a, b) == 0; }

std::size_t expr_hash(const Expr& e) {
  std::size_t h = static_cast<std::size_t>(e->op) * 31 + 7;
  auto mix = [](std::size_t h, std::size_t x) { return h * 1000003u ^ x; };
  if (e->op == Op::Lit) h = mix(h, value_hash(e->lit));
  h = mix(h, std::hash<std::string>{}(e->name));
  for (const auto& c : e->chans) h = mix(h, std::hash<std::string>{}(c));
  for (const auto& k : e->kids) h = mix(h, expr_hash(k));
  return h;
}

namespace {

long long checked_int(const Value& v) { return v.as_int(); }

}  // namespace

Value eval_expr(const StateSpace& space, const State& st, const Expr& e, const Bindings* extra) {
  auto ev = [&](const Expr& k) { return eval_expr(space, st, k, extra); };
  switch (e->op) {
    case Op::Lit: return e->lit;
    case Op::Var: {
      if (extra) {
        auto it = extra->find(e->name);
        if (it != extra->end()) return it->second;
      }
      return st.store[space.require(e->name)];
    }
    case Op::Not: return Value(!ev(e->kids[0]).as_bool());
    case Op::Neg: return Value(-checked_int(ev(e->kids[0])));
    case Op::And: return Value(ev(e->kids[0]).as_bool() && ev(e->kids[1]).as_bool());
    case Op::Or: return Value(ev(e->kids[0]).as_bool() || ev(e->kids[1]).as_bool());
    case Op::Imp: return Value(!ev(e->kids[0]).as_bool() || ev(e->kids[1]).as_bool());
    case Op::Eq: return Value(ev(e->kids[0]) == ev(e->kids[1]));
    case Op::Ne: return Value(ev(e->kids[0]) != ev(e->kids[1]));
    case Op::Lt:
    case Op::Le: {
      Value a = ev(e->kids[0]), b = ev(e->kids[1]);
      bool strict = e->op == Op::Lt;
      if (a.is_int() && b.is_int())
        return Value(strict ? a.as_int() < b.as_int() : a.as_int() <= b.as_int());
      if (a.is_seq() && b.is_seq()) {
        const auto& xs = a.as_seq();
        const auto& ys = b.as_seq();
        if (xs.size() > ys.size() || (strict && xs.size() == ys.size())) return Value(false);
        for (std::size_t i = 0; i < xs.size(); ++i)
          if (xs[i] != ys[i]) return Value(false);
        return Value(true);
      }
      raise("TypeError", "ordering needs two integers or two sequences");
    }
    case Op::Add: return Value(checked_int(ev(e->kids[0])) + checked_int(ev(e->kids[1])));
    case Op::Sub: return Value(checked_int(ev(e->kids[0])) - checked_int(ev(e->kids[1])));
    case Op::Mul: return Value(checked_int(ev(e->kids[0])) * checked_int(ev(e->kids[1])));
    case Op::Concat: {
      Value::Seq xs = ev(e->kids[0]).as_seq();
      const Value::Seq ys = ev(e->kids[1]).as_seq();
      xs.insert(xs.end(), ys.begin(), ys.end());
      return Value(std::move(xs));
    }
    case Op::Head: {
      Value v = ev(e->kids[0]);
      const auto& xs = v.as_seq();
      if (xs.empty()) raise("DomainError", "head of empty sequence");
      return xs.front();
    }
    case Op::Tail: {
      Value::Seq xs = ev(e->kids[0]).as_seq();
      if (xs.empty()) raise("DomainError", "tail of empty sequence");
      xs.erase(xs.begin());
      return Value(std::move(xs));
    }
    case Op::Len: return Value(static_cast<long long>(ev(e->kids[0]).as_seq().size()));
    case Op::MkSeq: {
      Value::Seq xs;
      xs.reserve(e->kids.size());
      for (const auto& k : e->kids) xs.push_back(ev(k));
      return Value(std::move(xs));
    }
    case Op::Cond:
      return ev(e->kids[0]).as_bool() ? ev(e->kids[1]) : ev(e->kids[2]);
    case Op::Event: {
      EventVal evt;
      evt.chan = e->name;
      if (!e->kids.empty()) evt.data.push_back(ev(e->kids[0]));
      return Value(std::move(evt));
    }
    case Op::Filter: {
      Value v = ev(e->kids[0]);
      Value::Seq out;
      for (const auto& x : v.as_seq()) {
        const auto& evt = x.as_event();
        if (std::binary_search(e->chans.begin(), e->chans.end(), evt.chan)) out.push_back(x);
      }
      return Value(std::move(out));
    }
    case Op::Proj: {
      Value v = ev(e->kids[0]);
      Value::Seq out;
      for (const auto& x : v.as_seq()) {
        const auto& evt = x.as_event();
        if (evt.chan != e->name) continue;
        if (evt.data.empty()) raise("TypeError", "projection on a channel without data");
        out.push_back(evt.data[0]);
      }
      return Value(std::move(out));
    }
  }
  raise("TypeError", "unreachable expression op");
}

bool eval_bool(const StateSpace& space, const State& st, const Expr& e, const Bindings* extra) {
  return eval_expr(space, st, e, extra).as_bool();
}

bool is_lit_true(const Expr& e) {
  return e->op == Op::Lit && e->lit.is_bool() && std::get<bool>(e->lit.v);
}

bool is_lit_false(const Expr& e) {
  return e->op == Op::Lit && e->lit.is_bool() && !std::get<bool>(e->lit.v);
}

namespace {

bool is_ground(const Expr& e) {
  if (e->op == Op::Var) return false;
  for (const auto& k : e->kids)
    if (!is_ground(k)) return false;
  return true;
}

// Total expressions never raise at evaluation time; head/tail are the only
// partial operators reachable from conditions.
bool is_total(const Expr& e) {
  if (e->op == Op::Head || e->op == Op::Tail) return false;
  for (const auto& k : e->kids)
    if (!is_total(k)) return false;
  return true;
}

bool is_lit_empty_seq(const Expr& e) {
  return e->op == Op::Lit && e->lit.is_seq() && e->lit.as_seq().empty();
}

Expr fold_node(const ExprNode& raw);

}  // namespace

Expr fold(const Expr& e) {
  ExprNode n;
  n.op = e->op;
  n.lit = e->lit;
  n.name = e->name;
  n.chans = e->chans;
  n.kids.reserve(e->kids.size());
  for (const auto& k : e->kids) n.kids.push_back(fold(k));
  return fold_node(n);
}

namespace {

Expr fold_node(const ExprNode& raw) {
  Expr e = mk(ExprNode(raw));
  const auto& kids = e->kids;

  // Ground subterms evaluate now; partial operators that raise stay symbolic.
  if (e->op != Op::Lit && is_ground(e)) {
    try {
      StateSpace empty;
      State none;
      return ex_lit(eval_expr(empty, none, e));
    } catch (const Error&) {
      return e;
    }
  }

  switch (e->op) {
    case Op::Not:
      if (kids[0]->op == Op::Not) return kids[0]->kids[0];
      break;
    case Op::And:
      if (is_lit_true(kids[0])) return kids[1];
      if (is_lit_true(kids[1])) return kids[0];
      if (is_lit_false(kids[0])) return ex_false();
      if (is_lit_false(kids[1]) && is_total(kids[0])) return ex_false();
      if (expr_eq(kids[0], kids[1])) return kids[0];
      break;
    case Op::Or:
      if (is_lit_false(kids[0])) return kids[1];
      if (is_lit_false(kids[1])) return kids[0];
      if (is_lit_true(kids[0])) return ex_true();
      if (is_lit_true(kids[1]) && is_total(kids[0])) return ex_true();
      if (expr_eq(kids[0], kids[1])) return kids[0];
      break;
    case Op::Imp:
      if (is_lit_true(kids[0])) return kids[1];
      if (is_lit_false(kids[0])) return ex_true();
      if (is_lit_true(kids[1]) && is_total(kids[0])) return ex_true();
      if (expr_eq(kids[0], kids[1]) && is_total(kids[0])) return ex_true();
      break;
    case Op::Eq:
      if (expr_eq(kids[0], kids[1]) && is_total(kids[0])) return ex_true();
      break;
    case Op::Ne:
      if (expr_eq(kids[0], kids[1]) && is_total(kids[0])) return ex_false();
      break;
    case Op::Le:
      if (expr_eq(kids[0], kids[1]) && is_total(kids[0])) return ex_true();
      break;
    case Op::Lt:
      if (expr_eq(kids[0], kids[1]) && is_total(kids[0])) return ex_false();
      break;
    case Op::Add:
      if (kids[0]->op == Op::Lit && kids[0]->lit.is_int() && kids[0]->lit.as_int() == 0)
        return kids[1];
      if (kids[1]->op == Op::Lit && kids[1]->lit.is_int() && kids[1]->lit.as_int() == 0)
        return kids[0];
      if (kids[0]->op == Op::Add && kids[0]->kids[1]->op == Op::Lit &&
          kids[0]->kids[1]->lit.is_int() && kids[1]->op == Op::Lit && kids[1]->lit.is_int())
        return fold_node(*ex_add(
            kids[0]->kids[0], ex_int(kids[0]->kids[1]->lit.as_int() + kids[1]->lit.as_int())));
      break;
    case Op::Sub:
      if (kids[1]->op == Op::Lit && kids[1]->lit.is_int() && kids[1]->lit.as_int() == 0)
        return kids[0];
      if (kids[0]->op == Op::Sub && kids[0]->kids[1]->op == Op::Lit &&
          kids[0]->kids[1]->lit.is_int() && kids[1]->op == Op::Lit && kids[1]->lit.is_int())
        return fold_node(*ex_sub(
            kids[0]->kids[0], ex_int(kids[0]->kids[1]->lit.as_int() + kids[1]->lit.as_int())));
      break;
    case Op::Mul:
      for (int i = 0; i < 2; ++i) {
        if (kids[i]->op != Op::Lit || !kids[i]->lit.is_int()) continue;
        long long v = kids[i]->lit.as_int();
        if (v == 1) return kids[1 - i];
        if (v == 0 && is_total(kids[1 - i])) return ex_int(0);
      }
      break;
    case Op::Concat: {
      if (is_lit_empty_seq(kids[0]) || (kids[0]->op == Op::MkSeq && kids[0]->kids.empty()))
        return kids[1];
      if (is_lit_empty_seq(kids[1]) || (kids[1]->op == Op::MkSeq && kids[1]->kids.empty()))
        return kids[0];
      auto display_items = [](const Expr& e) -> std::optional<std::vector<Expr>> {
        if (e->op == Op::MkSeq) return e->kids;
        if (e->op == Op::Lit && e->lit.is_seq()) {
          std::vector<Expr> items;
          for (const auto& v : e->lit.as_seq()) items.push_back(ex_lit(v));
          return items;
        }
        return std::nullopt;
      };
      auto rhs = display_items(kids[1]);
      if (rhs) {
        if (auto lhs = display_items(kids[0])) {
          std::vector<Expr> items = std::move(*lhs);
          items.insert(items.end(), rhs->begin(), rhs->end());
          return fold_node(*ex_mkseq(std::move(items)));
        }
        if (kids[0]->op == Op::Concat) {
          if (auto mid = display_items(kids[0]->kids[1])) {
            std::vector<Expr> items = std::move(*mid);
            items.insert(items.end(), rhs->begin(), rhs->end());
            return fold_node(*ex_concat(kids[0]->kids[0], ex_mkseq(std::move(items))));
          }
        }
      }
      break;
    }
    case Op::Head:
      // dropping the sibling items is only sound when none of them can raise
      if (kids[0]->op == Op::MkSeq && !kids[0]->kids.empty() && is_total(kids[0]))
        return kids[0]->kids[0];
      if (kids[0]->op == Op::Lit && kids[0]->lit.is_seq() && !kids[0]->lit.as_seq().empty())
        return ex_lit(kids[0]->lit.as_seq().front());
      break;
    case Op::Tail:
      if (kids[0]->op == Op::MkSeq && !kids[0]->kids.empty() && is_total(kids[0]->kids[0]))
        return fold_node(*ex_mkseq({kids[0]->kids.begin() + 1, kids[0]->kids.end()}));
      if (kids[0]->op == Op::Lit && kids[0]->lit.is_seq() && !kids[0]->lit.as_seq().empty()) {
        Value::Seq xs = kids[0]->lit.as_seq();
        xs.erase(xs.begin());
        return ex_lit(Value(std::move(xs)));
      }
      break;
    case Op::Len:
      if (kids[0]->op == Op::MkSeq && is_total(kids[0]))
        return ex_int(static_cast<long long>(kids[0]->kids.size()));
      if (kids[0]->op == Op::Lit && kids[0]->lit.is_seq())
        return ex_int(static_cast<long long>(kids[0]->lit.as_seq().size()));
      break;
    case Op::Cond:
      if (is_lit_true(kids[0])) return kids[1];
      if (is_lit_false(kids[0])) return kids[2];
      if (expr_eq(kids[1], kids[2]) && is_total(kids[0])) return kids[1];
      break;
    case Op::MkSeq: {
      bool all_lit = true;
      for (const auto& k : kids)
        if (k->op != Op::Lit) {
          all_lit = false;
          break;
        }
      if (all_lit) {
        Value::Seq xs;
        for (const auto& k : kids) xs.push_back(k->lit);
        return ex_lit(Value(std::move(xs)));
      }
      break;
    }
    default: break;
  }
  return e;
}

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  if (e->op == Op::Var) out.push_back(e->name);
  for (const auto& k : e->kids) collect_vars(k, out);
}

}  // namespace

std::vector<std::string> free_vars(const Expr& e) {
  std::vector<std::string> out;
  collect_vars(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Larger number binds tighter; used by show() to place parentheses.
int prec(Op op) {
  switch (op) {
    case Op::Imp: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Eq:
    case Op::Ne:
    case Op::Lt:
    case Op::Le: return 4;
    case Op::Concat: return 5;
    case Op::Add:
    case Op::Sub: return 6;
    case Op::Mul: return 7;
    case Op::Not:
    case Op::Neg: return 8;
    default: return 9;
  }
}

std::string show_prec(const Expr& e, int min_prec) {
  auto wrap = [&](const std::string& body) {
    return prec(e->op) < min_prec ? "(" + body + ")" : body;
  };
  auto bin = [&](const char* sym, bool right_assoc = false) {
    int p = prec(e->op);
    return wrap(show_prec(e->kids[0], right_assoc ? p + 1 : p) + " " + sym + " " +
                show_prec(e->kids[1], right_assoc ? p : p + 1));
  };
  switch (e->op) {
    case Op::Lit: return show(e->lit);
    case Op::Var: return e->name;
    case Op::Not: return wrap("!" + show_prec(e->kids[0], prec(Op::Not)));
    case Op::Neg: return wrap("-" + show_prec(e->kids[0], prec(Op::Neg)));
    case Op::And: return bin("&&");
    case Op::Or: return bin("||");
    case Op::Imp: return bin("=>", true);
    case Op::Eq: return bin("==");
    case Op::Ne: return bin("!=");
    case Op::Lt: return bin("<");
    case Op::Le: return bin("<=");
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Concat: return bin("^");
    case Op::Head: return "head(" + show_prec(e->kids[0], 0) + ")";
    case Op::Tail: return "tail(" + show_prec(e->kids[0], 0) + ")";
    case Op::Len: return wrap("#" + show_prec(e->kids[0], 8));
    case Op::MkSeq: {
      std::string out = "<";
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out += ", ";
        out += show_prec(e->kids[i], 0);
      }
      return out + ">";
    }
    case Op::Cond:
      return "(" + show_prec(e->kids[0], 0) + " ? " + show_prec(e->kids[1], 0) + " : " +
             show_prec(e->kids[2], 0) + ")";
    case Op::Event:
      if (e->kids.empty()) return e->name;
      return e->name + "." + show_prec(e->kids[0], 9);
    case Op::Filter: {
      std::string out = "filter(" + show_prec(e->kids[0], 0) + ", {";
      for (std::size_t i = 0; i < e->chans.size(); ++i) {
        if (i) out += ", ";
        out += e->chans[i];
      }
      return out + "})";
    }
    case Op::Proj: return "proj(" + show_prec(e->kids[0], 0) + ", " + e->name + ")";
  }
  return "?";
}

}  // namespace

std::string show(const Expr& e) { return show_prec(e, 0); }

const Expr* Subst::find(const std::string& name) const {
  for (const auto& [n, e] : entries)
    if (n == name) return &e;
  return nullptr;
}

bool operator==(const Subst& a, const Subst& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i].first != b.entries[i].first ||
        !expr_eq(a.entries[i].second, b.entries[i].second))
      return false;
  return true;
}

Subst subst_id() { return Subst{}; }

Subst subst_single(const std::string& name, Expr e) {
  return subst_update(subst_id(), name, std::move(e));
}

Subst subst_update(const Subst& sigma, const std::string& name, Expr e) {
  e = fold(e);
  Subst out;
  bool identity = e->op == Op::Var && e->name == name;
  bool placed = false;
  for (const auto& [n, old] : sigma.entries) {
    if (n == name) continue;
    if (!placed && n > name && !identity) {
      out.entries.emplace_back(name, e);
      placed = true;
    }
    out.entries.emplace_back(n, old);
  }
  if (!placed && !identity) out.entries.emplace_back(name, e);
  return out;
}

Expr subst_apply(const Subst& sigma, const Expr& e) {
  if (sigma.is_id()) return e;
  if (e->op == Op::Var) {
    if (const Expr* found = sigma.find(e->name)) return *found;
    return e;
  }
  if (e->op == Op::Lit) return e;
  ExprNode n;
  n.op = e->op;
  n.lit = e->lit;
  n.name = e->name;
  n.chans = e->chans;
  n.kids.reserve(e->kids.size());
  for (const auto& k : e->kids) n.kids.push_back(subst_apply(sigma, k));
  return fold(mk(std::move(n)));
}

Subst subst_compose(const Subst& after, const Subst& before) {
  Subst out = before;
  for (const auto& [name, e] : after.entries)
    out = subst_update(out, name, subst_apply(before, e));
  // Variables mapped by `before` but untouched by `after` keep before's entry,
  // which `out` already holds.
  return out;
}

State subst_image(const StateSpace& space, const Subst& sigma, const State& st) {
  State out = st;
  for (const auto& [name, e] : sigma.entries) {
    int idx = space.require(name);
    Value v = eval_expr(space, st, e);
    if (!space.doms[idx].contains(v))
      raise("DomainError", "assignment of " + show(v) + " to " + name + " leaves its domain");
    out.store[idx] = v;
  }
  return out;
}

std::string show(const Subst& sigma) {
  if (sigma.is_id()) return "id";
  std::string out = "{";
  for (std::size_t i = 0; i < sigma.entries.size(); ++i) {
    if (i) out += ", ";
    out += sigma.entries[i].first + " := " + show(sigma.entries[i].second);
  }
  return out + "}";
}

bool cond_implies_bounded(const StateSpace& space, const Expr& hyp, const Expr& concl,
                          unsigned long long limit) {
  Expr h = fold(hyp), c = fold(concl);
  if (is_lit_false(h) || is_lit_true(c)) return true;
  if (expr_eq(h, c)) return true;
  for (const auto& st : space.enumerate(limit)) {
    try {
      if (eval_bool(space, st, h) && !eval_bool(space, st, c)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

bool cond_valid_bounded(const StateSpace& space, const Expr& e, unsigned long long limit) {
  return cond_implies_bounded(space, ex_true(), e, limit);
}

bool cond_sat_bounded(const StateSpace& space, const Expr& e, unsigned long long limit) {
  Expr f = fold(e);
  if (is_lit_true(f)) return true;
  if (is_lit_false(f)) return false;
  for (const auto& st : space.enumerate(limit)) {
    try {
      if (eval_bool(space, st, f)) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

bool cond_equal_bounded(const StateSpace& space, const Expr& a, const Expr& b,
                        unsigned long long limit) {
  Expr fa = fold(a), fb = fold(b);
  if (expr_eq(fa, fb)) return true;
  return cond_implies_bounded(space, fa, fb, limit) && cond_implies_bounded(space, fb, fa, limit);
}

}  // namespace rc
