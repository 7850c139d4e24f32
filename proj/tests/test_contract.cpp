#include <random>
#include <vector>

#include "doctest.h"
#include "reacalc/oracle.hpp"

using namespace rc;

namespace {

StateSpace ct_space() {
  StateSpace sp;
  sp.add("b", Domain(DomBool{}));
  sp.add("x", Domain(DomInt{0, 3}));
  return sp;
}

Alphabet al_abc() {
  Alphabet al;
  al.add("a", std::nullopt);
  al.add("b", std::nullopt);
  al.add("c", std::nullopt);
  return al;
}

Alphabet al_data() {
  Alphabet al;
  al.add("a", Domain(DomInt{0, 3}));
  return al;
}

Contract prefix_then(const Contract& ev, const Contract& rest) { return seq_contract(ev, rest); }

bool denote_equal(const Contract& c1, const Contract& c2, int trace_len = 4) {
  Bounds bd;
  bd.trace_len = trace_len;
  for (const auto& st : c1.space.enumerate()) {
    ObsSet l = close_divergence(denote_bounded(c1, st, bd));
    ObsSet r = close_divergence(denote_bounded(c2, st, bd));
    if (!(l == r)) return false;
  }
  return true;
}

std::vector<Expr> cond_pool() {
  return {ex_true(), ex_var("b"), ex_not(ex_var("b")), ex_lt(ex_var("x"), ex_lit(2)),
          ex_eq(ex_var("x"), ex_lit(0))};
}

std::vector<Subst> subst_pool() {
  std::vector<Subst> out;
  out.push_back(subst_id());
  out.push_back(subst_single("x", ex_lit(1)));
  out.push_back(subst_single("x", ex_sub(ex_lit(3), ex_var("x"))));
  out.push_back(subst_single("b", ex_not(ex_var("b"))));
  Subst both = subst_single("x", ex_lit(2));
  both = subst_update(both, "b", ex_lit(false));
  out.push_back(both);
  return out;
}

struct Gen {
  std::mt19937_64 rng;
  StateSpace sp = ct_space();
  Alphabet al = al_abc();

  explicit Gen(unsigned long long seed) : rng(seed) {}

  int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned long long>(n)); }

  Contract leaf() {
    switch (pick(6)) {
      case 0: return ct_skip(sp, al);
      case 1: return ct_stop(sp, al);
      case 2: return ct_do(sp, al, ev_pure("a"));
      case 3: return ct_do(sp, al, ev_pure("c"));
      case 4: {
        auto ss = subst_pool();
        return ct_assign(sp, al, ss[pick(static_cast<int>(ss.size()))]);
      }
      default: return pick(4) == 0 ? ct_chaos(sp, al) : ct_do(sp, al, ev_pure("b"));
    }
  }

  Contract gen(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(5)) {
      case 0: return seq_contract(gen(depth - 1), gen(depth - 1));
      case 1: return extchoice_contract({gen(depth - 1), gen(depth - 1)});
      case 2: return intchoice_contract({gen(depth - 1), gen(depth - 1)});
      case 3: {
        auto cs = cond_pool();
        return cond_contract(gen(depth - 1), cs[pick(static_cast<int>(cs.size()))],
                             gen(depth - 1));
      }
      default: return leaf();
    }
  }
};

}  // namespace

TEST_SUITE_BEGIN("contract");

TEST_CASE("basic contracts have their defining shapes") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();

  Contract skip = ct_skip(sp, al);
  CHECK(skip.pre.terms.empty());
  CHECK(skip.peri.terms.empty());
  REQUIRE(skip.post.terms.size() == 1);
  CHECK(show(skip.post.terms[0]) == "Phi(true, id, <>)");

  CHECK(ct_assign(sp, al, subst_id()) == skip);

  Contract doa = ct_do(sp, al, ev_pure("a"));
  REQUIRE(doa.peri.terms.size() == 1);
  CHECK(show(doa.peri.terms[0]) == "E(true, <>, {a})");
  REQUIRE(doa.post.terms.size() == 1);
  CHECK(show(doa.post.terms[0]) == "Phi(true, id, <a>)");

  Contract stop = ct_stop(sp, al);
  REQUIRE(stop.peri.terms.size() == 1);
  CHECK(show(stop.peri.terms[0]) == "E(true, <>, {})");
  CHECK(stop.post.terms.empty());

  Contract chaos = ct_chaos(sp, al);
  CHECK(pre_is_false(sp, chaos.pre));
  CHECK(show(chaos.pre) == "C(true | <>)");
  CHECK(chaos.peri.terms.empty());
  CHECK(chaos.post.terms.empty());

  Contract mir = ct_miracle(sp, al);
  CHECK(mir.pre.terms.empty());
  CHECK(mir.peri.terms.empty());
  CHECK(mir.post.terms.empty());

  Contract acc = ct_accept(sp, al);
  REQUIRE(acc.peri.terms.size() == 1);
  CHECK(show(acc.peri.terms[0]) == "E(true, <>, {a, b, c})");
  CHECK(acc.post.terms.empty());
}

TEST_CASE("event typing is checked against the alphabet") {
  StateSpace sp = ct_space();
  CHECK_THROWS_WITH_AS(ct_do(sp, al_abc(), ev_data("a", ex_lit(1))), doctest::Contains("no data"),
                       Error);
  CHECK_THROWS_AS(ct_do(sp, al_data(), ev_pure("a")), Error);
  CHECK_THROWS_AS(ct_do(sp, al_abc(), ev_pure("nope")), Error);
  CHECK_THROWS_AS(seq_contract(ct_skip(sp, al_abc()), ct_skip(sp, al_data())), Error);
}

TEST_CASE("sequential composition threads state through events") {
  StateSpace sp = ct_space();
  Alphabet al = al_data();
  Contract c = seq_contract(
      seq_contract(ct_assign(sp, al, subst_single("x", ex_lit(1))),
                   ct_do(sp, al, ev_data("a", ex_var("x")))),
      ct_assign(sp, al, subst_single("x", ex_add(ex_var("x"), ex_lit(2)))));
  CHECK(c.pre.terms.empty());
  REQUIRE(c.peri.terms.size() == 1);
  CHECK(show(c.peri.terms[0]) == "E(true, <>, {a.1})");
  REQUIRE(c.post.terms.size() == 1);
  CHECK(show(c.post.terms[0]) == "Phi(true, {x := 3}, <a.1>)");
}

TEST_CASE("divergence after an event surfaces as a trace assumption") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract c = seq_contract(ct_do(sp, al, ev_pure("b")), ct_chaos(sp, al));
  REQUIRE(c.pre.terms.size() == 1);
  CHECK(show(c.pre) == "C(true | <b>)");
  REQUIRE(c.peri.terms.size() == 1);
  CHECK(show(c.peri.terms[0]) == "E(true, <>, {b})");
  CHECK(c.post.terms.empty());
  CHECK_FALSE(pre_is_false(sp, c.pre));
}

TEST_CASE("skip is a unit of sequential composition") {
  Gen g(0xC0011);
  for (int i = 0; i < 40; ++i) {
    Contract c = g.gen(2);
    CHECK(seq_contract(ct_skip(g.sp, g.al), c) == c);
    CHECK(seq_contract(c, ct_skip(g.sp, g.al)) == c);
  }
}

TEST_CASE("internal choice unions every part") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract doa = ct_do(sp, al, ev_pure("a"));
  Contract dob = ct_do(sp, al, ev_pure("b"));
  CHECK(intchoice_contract({doa}) == doa);
  Contract both = intchoice_contract({doa, dob});
  REQUIRE(both.peri.terms.size() == 2);
  CHECK(show(both.peri.terms[0]) == "E(true, <>, {a})");
  CHECK(show(both.peri.terms[1]) == "E(true, <>, {b})");
  CHECK(both.post.terms.size() == 2);
  CHECK_THROWS_AS(intchoice_contract({}), Error);
}

TEST_CASE("prefixing distributes over internal choice") {
  // Structural equality breaks once one operand collapses to the chaotic
  // contract (its shadowed disjuncts are canonicalized away on one side
  // only), so the law is checked on the bounded denotation.
  Gen g(0xC0012);
  Contract doa = ct_do(g.sp, g.al, ev_pure("a"));
  for (int i = 0; i < 16; ++i) {
    Contract p = g.gen(1), q = g.gen(1);
    Contract lhs = seq_contract(doa, intchoice_contract({p, q}));
    Contract rhs = intchoice_contract({seq_contract(doa, p), seq_contract(doa, q)});
    CHECK(denote_equal(lhs, rhs));
  }
}

TEST_CASE("conditional with a literal condition selects an operand") {
  Gen g(0xC0013);
  for (int i = 0; i < 40; ++i) {
    Contract c1 = g.gen(1), c2 = g.gen(1);
    CHECK(cond_contract(c1, ex_true(), c2) == c1);
    CHECK(cond_contract(c1, ex_false(), c2) == c2);
  }
}

TEST_CASE("a guard conditions the offer and otherwise deadlocks") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract gd = guard_contract(ex_var("b"), ct_do(sp, al, ev_pure("a")));
  REQUIRE(gd.peri.terms.size() == 1);
  CHECK(show(gd.peri.terms[0]) == "E(true, <>, {a if b})");
  REQUIRE(gd.post.terms.size() == 1);
  CHECK(show(gd.post.terms[0]) == "Phi(b, id, <a>)");
}

TEST_CASE("external choice pools initial offers and keeps committed tails") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract ab = prefix_then(ct_do(sp, al, ev_pure("a")),
                            prefix_then(ct_do(sp, al, ev_pure("b")), ct_skip(sp, al)));
  Contract c1 = prefix_then(ct_do(sp, al, ev_pure("c")), ct_skip(sp, al));
  Contract ext = extchoice_contract({ab, c1});
  REQUIRE(ext.peri.terms.size() == 2);
  CHECK(show(ext.peri.terms[0]) == "E(true, <>, {a, c})");
  CHECK(show(ext.peri.terms[1]) == "E(true, <a>, {b})");
  REQUIRE(ext.post.terms.size() == 2);
  CHECK(show(ext.post.terms[0]) == "Phi(true, id, <a, b>)");
  CHECK(show(ext.post.terms[1]) == "Phi(true, id, <c>)");
}

TEST_CASE("external choice has stop as unit and chaos as annihilator") {
  Gen g(0xC0014);
  for (int i = 0; i < 40; ++i) {
    Contract p = g.gen(2);
    CHECK(extchoice_contract({p, ct_stop(g.sp, g.al)}) == p);
    CHECK(extchoice_contract({p, ct_chaos(g.sp, g.al)}) == ct_chaos(g.sp, g.al));
  }
}

TEST_CASE("external choice is commutative and idempotent up to denotation") {
  Gen g(0xC0015);
  for (int i = 0; i < 12; ++i) {
    Contract p = g.gen(1), q = g.gen(1);
    CHECK(denote_equal(extchoice_contract({p, q}), extchoice_contract({q, p})));
    CHECK(denote_equal(extchoice_contract({p, p}), p));
  }
}

TEST_CASE("termination-capable operands suppress initial quiescence of a choice") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract ext = extchoice_contract(
      {ct_skip(sp, al), prefix_then(ct_do(sp, al, ev_pure("a")), ct_skip(sp, al))});
  CHECK(ext.peri.terms.empty());
  CHECK(ext.post.terms.size() == 2);
}

TEST_CASE("health flags follow the defining tables") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  auto flags = [&](const Contract& c) { return health_flags(c); };

  CHECK(flags(ct_do(sp, al, ev_pure("a"))).productive);
  CHECK_FALSE(flags(ct_skip(sp, al)).productive);
  CHECK_FALSE(flags(ct_assign(sp, al, subst_single("x", ex_lit(1)))).productive);

  CHECK(flags(ct_skip(sp, al)).instantaneous);
  CHECK(flags(ct_assign(sp, al, subst_single("x", ex_lit(1)))).instantaneous);
  CHECK_FALSE(flags(ct_do(sp, al, ev_pure("a"))).instantaneous);
  CHECK_FALSE(flags(ct_stop(sp, al)).instantaneous);

  CHECK(flags(ct_chaos(sp, al)).cacc);
  CHECK(flags(ct_stop(sp, al)).cacc);
  CHECK(flags(ct_do(sp, al, ev_pure("a"))).cacc);
  CHECK_FALSE(flags(ct_miracle(sp, al)).cacc);
  CHECK_FALSE(flags(ct_skip(sp, al)).cacc);

  CHECK(flags(ct_do(sp, al, ev_pure("a"))).cdc);
}

TEST_CASE("a loop with an unsatisfied condition is skip") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract w = while_contract(ex_false(), ct_do(sp, al, ev_pure("a")), 3);
  CHECK(w == ct_skip(sp, al));
  CHECK_FALSE(w.bounded);
}

TEST_CASE("a silent always-true loop is divergence") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract body = ct_assign(sp, al, subst_single("x", ex_add(ex_var("x"), ex_lit(1))));
  CHECK(while_contract(ex_true(), body, 3) == ct_chaos(sp, al));
}

TEST_CASE("a silent loop under an open condition is rejected") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract body = ct_assign(sp, al, subst_single("x", ex_lit(1)));
  CHECK_THROWS_WITH_AS(while_contract(ex_var("b"), body, 3),
                       doctest::Contains("visible progress"), Error);
  Contract mixed =
      intchoice_contract({ct_do(sp, al, ev_pure("a")), ct_skip(sp, al)});
  CHECK_THROWS_AS(while_contract(ex_true(), mixed, 3), Error);
}

TEST_CASE("a loop that never waits nor terminates is stop") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  CHECK(while_contract(ex_true(), ct_stop(sp, al), 3) == ct_stop(sp, al));
}

TEST_CASE("an always-true event loop unrolls to bounded waiting points") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract w = while_contract(ex_true(), ct_do(sp, al, ev_pure("a")), 2);
  CHECK(w.bounded);
  CHECK(w.pre.terms.empty());
  CHECK(w.post.terms.empty());
  REQUIRE(w.peri.terms.size() == 3);
  CHECK(show(w.peri.terms[0]) == "E(true, <>, {a})");
  CHECK(show(w.peri.terms[1]) == "E(true, <a>, {a})");
  CHECK(show(w.peri.terms[2]) == "E(true, <a, a>, {a})");
}

TEST_CASE("iteration fixes skip and absorbs nothing else silently") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  CHECK(iterate_contract(ct_skip(sp, al), 3) == ct_skip(sp, al));
  for (int bound = 0; bound <= 3; ++bound)
    CHECK(iterate_contract(ct_chaos(sp, al), bound) == ct_chaos(sp, al));

  Contract st = iterate_contract(ct_do(sp, al, ev_pure("a")), 2);
  CHECK(st.bounded);
  REQUIRE(st.post.terms.size() == 3);
  CHECK(show(st.post.terms[0]) == "Phi(true, id, <>)");
  CHECK(show(st.post.terms[1]) == "Phi(true, id, <a>)");
  CHECK(show(st.post.terms[2]) == "Phi(true, id, <a, a>)");
  REQUIRE(st.peri.terms.size() == 3);
  CHECK(show(st.peri.terms[2]) == "E(true, <a, a>, {a})");
}

TEST_CASE("iterating a saturated iteration changes nothing") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  std::vector<Contract> cs = {ct_skip(sp, al), ct_stop(sp, al),
                              ct_assign(sp, al, subst_single("b", ex_not(ex_var("b"))))};
  for (const auto& c : cs) {
    Contract once = iterate_contract(c, 4);
    CHECK_FALSE(once.bounded);
    CHECK(iterate_contract(once, 4) == once);
  }
}

TEST_CASE("assignment before a contract acts by substitution on its denotation") {
  Gen g(0xC0016);
  Bounds bd;
  auto pool = subst_pool();
  for (int i = 0; i < 25; ++i) {
    Contract c = g.gen(2);
    const Subst& sg = pool[g.pick(static_cast<int>(pool.size()))];
    Contract lhs = seq_contract(ct_assign(g.sp, g.al, sg), c);
    for (const auto& st : g.sp.enumerate()) {
      ObsSet l = close_divergence(denote_bounded(lhs, st, bd));
      ObsSet r = close_divergence(denote_bounded(c, subst_image(g.sp, sg, st), bd));
      REQUIRE(l == r);
    }
  }
}

TEST_CASE("assignment commutes with an event by substituting its payload") {
  StateSpace sp = ct_space();
  Alphabet al = al_data();
  for (const auto& sg : subst_pool()) {
    for (const Expr& payload : {ex_var("x"), ex_lit(2), ex_sub(ex_lit(3), ex_var("x"))}) {
      EventExpr e = ev_data("a", payload);
      Contract lhs = seq_contract(ct_assign(sp, al, sg), ct_do(sp, al, e));
      Contract rhs = seq_contract(ct_do(sp, al, subst_event(sg, e)), ct_assign(sp, al, sg));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("consecutive assignments compose their updates") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  auto pool = subst_pool();
  for (const auto& s1 : pool)
    for (const auto& s2 : pool) {
      Contract lhs = seq_contract(ct_assign(sp, al, s1), ct_assign(sp, al, s2));
      CHECK(lhs == ct_assign(sp, al, subst_compose(s2, s1)));
    }
}

TEST_CASE("stop absorbs anything that follows it") {
  Gen g(0xC0017);
  for (int i = 0; i < 40; ++i)
    CHECK(seq_contract(ct_stop(g.sp, g.al), g.gen(2)) == ct_stop(g.sp, g.al));
}

TEST_CASE("silent contracts before divergence cannot rescue it") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  for (const auto& c : {ct_skip(sp, al), ct_assign(sp, al, subst_single("x", ex_lit(1)))}) {
    CHECK(health_flags(c).instantaneous);
    CHECK(seq_contract(c, ct_chaos(sp, al)) == ct_chaos(sp, al));
  }
}

TEST_CASE("sequencing distributes over external choice under the health flags") {
  StateSpace sp = ct_space();
  Alphabet al = al_abc();
  Contract pa = prefix_then(ct_do(sp, al, ev_pure("a")), ct_skip(sp, al));
  Contract pc = prefix_then(ct_do(sp, al, ev_pure("c")), ct_skip(sp, al));
  Contract q = prefix_then(ct_do(sp, al, ev_pure("b")), ct_skip(sp, al));

  CHECK(health_flags(pa).productive);
  CHECK(health_flags(pc).productive);
  Contract lhs = seq_contract(extchoice_contract({pa, pc}), q);
  Contract rhs = extchoice_contract({seq_contract(pa, q), seq_contract(pc, q)});
  CHECK(lhs == rhs);

  Contract asg = ct_assign(sp, al, subst_single("x", ex_lit(2)));
  CHECK(health_flags(asg).instantaneous);
  Contract lhs2 = seq_contract(asg, extchoice_contract({pa, pc}));
  Contract rhs2 = extchoice_contract({seq_contract(asg, pa), seq_contract(asg, pc)});
  CHECK(lhs2 == rhs2);
}

TEST_SUITE_END();
