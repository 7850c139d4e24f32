#include "reacalc/proc.hpp"

#include <algorithm>
#include <sstream>

namespace rc {

static ProcPtr node(Proc p) { return std::make_shared<const Proc>(std::move(p)); }

ProcPtr p_skip() { return node({.kind = PKind::Skip}); }
ProcPtr p_stop() { return node({.kind = PKind::Stop}); }
ProcPtr p_chaos() { return node({.kind = PKind::Chaos}); }
ProcPtr p_miracle() { return node({.kind = PKind::Miracle}); }

ProcPtr p_assign(std::string var, Expr rhs) {
  Proc p{.kind = PKind::Assign, .name = std::move(var), .e = std::move(rhs)};
  return node(std::move(p));
}

ProcPtr p_prefix(std::string chan, Expr data, ProcPtr cont) {
  Proc p{.kind = PKind::Prefix, .name = std::move(chan), .e = std::move(data),
         .a = std::move(cont)};
  return node(std::move(p));
}

ProcPtr p_input(std::string chan, std::string binder, ProcPtr cont) {
  Proc p{.kind = PKind::Input, .name = std::move(chan), .binder = std::move(binder),
         .a = std::move(cont)};
  return node(std::move(p));
}

ProcPtr p_guard(Expr g, ProcPtr body) {
  Proc p{.kind = PKind::Guard, .e = std::move(g), .a = std::move(body)};
  return node(std::move(p));
}

static ProcPtr binop(PKind k, ProcPtr a, ProcPtr b) {
  Proc p{.kind = k, .a = std::move(a), .b = std::move(b)};
  return node(std::move(p));
}

ProcPtr p_seq(ProcPtr a, ProcPtr b) { return binop(PKind::Seq, std::move(a), std::move(b)); }
ProcPtr p_ext(ProcPtr a, ProcPtr b) { return binop(PKind::Ext, std::move(a), std::move(b)); }
ProcPtr p_int(ProcPtr a, ProcPtr b) { return binop(PKind::Int, std::move(a), std::move(b)); }

ProcPtr p_if(Expr c, ProcPtr t, ProcPtr f) {
  Proc p{.kind = PKind::If, .e = std::move(c), .a = std::move(t), .b = std::move(f)};
  return node(std::move(p));
}

ProcPtr p_while(Expr c, ProcPtr body) {
  Proc p{.kind = PKind::While, .e = std::move(c), .a = std::move(body)};
  return node(std::move(p));
}

ProcPtr p_par(ProcPtr a, LensSet ns1, std::vector<std::string> cs, LensSet ns2, ProcPtr b) {
  Proc p{.kind = PKind::Par, .a = std::move(a), .b = std::move(b)};
  p.ns1 = std::move(ns1);
  p.ns2 = std::move(ns2);
  p.cs = std::move(cs);
  std::sort(p.cs.begin(), p.cs.end());
  p.cs.erase(std::unique(p.cs.begin(), p.cs.end()), p.cs.end());
  return node(std::move(p));
}

ProcPtr p_ref(std::string name) {
  Proc p{.kind = PKind::Ref, .name = std::move(name)};
  return node(std::move(p));
}

static int cmp3(int a, int b) { return a < b ? -1 : a > b ? 1 : 0; }

static int nexpr_cmp(const Expr& a, const Expr& b) {
  if (!a || !b) return cmp3(a ? 1 : 0, b ? 1 : 0);
  return expr_cmp(a, b);
}

static int vec_cmp(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = a[i].compare(b[i])) return c < 0 ? -1 : 1;
  return 0;
}

int proc_cmp(const ProcPtr& a, const ProcPtr& b) {
  if (!a || !b) return cmp3(a ? 1 : 0, b ? 1 : 0);
  if (a->kind != b->kind) return cmp3(static_cast<int>(a->kind), static_cast<int>(b->kind));
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (int c = a->binder.compare(b->binder)) return c < 0 ? -1 : 1;
  if (int c = nexpr_cmp(a->e, b->e)) return c;
  if (int c = proc_cmp(a->a, b->a)) return c;
  if (int c = proc_cmp(a->b, b->b)) return c;
  if (int c = vec_cmp(a->ns1, b->ns1)) return c;
  if (int c = vec_cmp(a->ns2, b->ns2)) return c;
  return vec_cmp(a->cs, b->cs);
}

static std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

std::string show(const ProcPtr& p) {
  if (!p) return "<null>";
  std::ostringstream os;
  switch (p->kind) {
    case PKind::Skip: return "skip";
    case PKind::Stop: return "stop";
    case PKind::Chaos: return "chaos";
    case PKind::Miracle: return "miracle";
    case PKind::Assign:
      os << p->name << " := " << show(p->e);
      break;
    case PKind::Prefix:
      os << p->name;
      if (p->e) os << "!" << show(p->e);
      os << " -> " << show(p->a);
      break;
    case PKind::Input:
      os << p->name << "?" << p->binder << " -> " << show(p->a);
      break;
    case PKind::Guard:
      os << show(p->e) << " & " << show(p->a);
      break;
    case PKind::Seq:
      os << "(" << show(p->a) << " ; " << show(p->b) << ")";
      break;
    case PKind::Ext:
      os << "(" << show(p->a) << " [] " << show(p->b) << ")";
      break;
    case PKind::Int:
      os << "(" << show(p->a) << " |~| " << show(p->b) << ")";
      break;
    case PKind::If:
      os << "if " << show(p->e) << " then " << show(p->a) << " else " << show(p->b);
      break;
    case PKind::While:
      os << "while " << show(p->e) << " do " << show(p->a);
      break;
    case PKind::Par:
      os << "(" << show(p->a) << " [| {" << join(p->ns1) << "} | {" << join(p->cs) << "} | {"
         << join(p->ns2) << "} |] " << show(p->b) << ")";
      break;
    case PKind::Ref:
      return p->name;
  }
  return os.str();
}

}  // namespace rc
