#pragma once

#include <map>
#include <memory>
#include <optional>

#include "reacalc/state.hpp"

namespace rc {

enum class Op {
  Lit,
  Var,
  Not,
  Neg,
  And,
  Or,
  Imp,
  Eq,
  Ne,
  Lt,
  Le,
  Add,
  Sub,
  Mul,
  Concat,
  Head,
  Tail,
  Len,
  MkSeq,
  Cond,   // kids: guard, then-branch, else-branch
  Event,  // name = channel, kids: 0 or 1 data expression
  Filter, // restrict a trace to the channels listed in chans
  Proj,   // data values communicated on channel `name`
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Op op;
  Value lit;
  std::string name;
  std::vector<std::string> chans;
  std::vector<Expr> kids;
};

Expr ex_lit(Value v);
Expr ex_bool(bool b);
Expr ex_true();
Expr ex_false();
Expr ex_int(long long n);
Expr ex_var(std::string name);
Expr ex_not(Expr a);
Expr ex_neg(Expr a);
Expr ex_and(Expr a, Expr b);
Expr ex_or(Expr a, Expr b);
Expr ex_imp(Expr a, Expr b);
Expr ex_eq(Expr a, Expr b);
Expr ex_ne(Expr a, Expr b);
Expr ex_lt(Expr a, Expr b);
Expr ex_le(Expr a, Expr b);
Expr ex_add(Expr a, Expr b);
Expr ex_sub(Expr a, Expr b);
Expr ex_mul(Expr a, Expr b);
Expr ex_concat(Expr a, Expr b);
Expr ex_head(Expr a);
Expr ex_tail(Expr a);
Expr ex_len(Expr a);
Expr ex_mkseq(std::vector<Expr> items);
Expr ex_cond(Expr guard, Expr then_e, Expr else_e);
Expr ex_event(std::string chan, std::optional<Expr> data);
Expr ex_filter(Expr trace, std::vector<std::string> chans);
Expr ex_proj(Expr trace, std::string chan);

int expr_cmp(const Expr& a, const Expr& b);
bool expr_eq(const Expr& a, const Expr& b);
std::size_t expr_hash(const Expr& e);

// Extra bindings shadow state variables; used for observation pseudo-variables like tt.
using Bindings = std::map<std::string, Value>;

Value eval_expr(const StateSpace& space, const State& st, const Expr& e,
                const Bindings* extra = nullptr);
bool eval_bool(const StateSpace& space, const State& st, const Expr& e,
               const Bindings* extra = nullptr);

// Constant folding with algebraic identities; pure and deterministic, preserves
// evaluation on every state (partial operators are never folded away).
Expr fold(const Expr& e);

bool is_lit_true(const Expr& e);
bool is_lit_false(const Expr& e);

// Free state variables referenced by the expression.
std::vector<std::string> free_vars(const Expr& e);

std::string show(const Expr& e);

// Simultaneous substitution: sorted (variable, expression) entries, identity
// entries erased, so the empty map is id.
struct Subst {
  std::vector<std::pair<std::string, Expr>> entries;

  const Expr* find(const std::string& name) const;
  bool is_id() const { return entries.empty(); }
};

bool operator==(const Subst& a, const Subst& b);
inline bool operator!=(const Subst& a, const Subst& b) { return !(a == b); }

Subst subst_id();
Subst subst_single(const std::string& name, Expr e);

// sigma with the entry for `name` replaced by e (erased if e is the variable itself).
Subst subst_update(const Subst& sigma, const std::string& name, Expr e);

// Replace each free variable by its image under sigma.
Expr subst_apply(const Subst& sigma, const Expr& e);

// Run `before`, then `after`: result(x) = subst_apply(before, after(x)).
Subst subst_compose(const Subst& after, const Subst& before);

// Evaluate the update on a concrete state; domain-checked.
State subst_image(const StateSpace& space, const Subst& sigma, const State& st);

std::string show(const Subst& sigma);

// Bounded validity of hyp => concl over all states; conservative: evaluation
// errors make the check fail.
bool cond_implies_bounded(const StateSpace& space, const Expr& hyp, const Expr& concl,
                          unsigned long long limit = kDefaultStateLimit);
bool cond_valid_bounded(const StateSpace& space, const Expr& e,
                        unsigned long long limit = kDefaultStateLimit);
// Existence of a state where e evaluates cleanly to true.
bool cond_sat_bounded(const StateSpace& space, const Expr& e,
                      unsigned long long limit = kDefaultStateLimit);
// Fold-then-structural fast path, bounded equivalence both ways as slow path.
bool cond_equal_bounded(const StateSpace& space, const Expr& a, const Expr& b,
                        unsigned long long limit = kDefaultStateLimit);

}  // namespace rc
