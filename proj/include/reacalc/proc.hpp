#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reacalc/contract.hpp"

namespace rc {

// Process syntax. Input and Ref are surface-only: elaboration expands inputs
// over the channel domain and inlines references, so downstream consumers see
// neither.
enum class PKind {
  Skip,
  Stop,
  Chaos,
  Miracle,
  Assign,
  Prefix,
  Input,
  Guard,
  Seq,
  Ext,
  Int,
  If,
  While,
  Par,
  Ref,
};

struct Proc;
using ProcPtr = std::shared_ptr<const Proc>;

struct Proc {
  PKind kind = PKind::Skip;
  std::string name;             // Assign target, Prefix/Input channel, Ref name
  std::string binder;           // Input bound variable
  Expr e;                       // Assign rhs, Guard/If/While condition, Prefix data (may be null)
  ProcPtr a, b;                 // children; Prefix/Input continuation lives in `a`
  LensSet ns1, ns2;             // Par write frames
  std::vector<std::string> cs;  // Par synchronization channels, sorted
};

ProcPtr p_skip();
ProcPtr p_stop();
ProcPtr p_chaos();
ProcPtr p_miracle();
ProcPtr p_assign(std::string var, Expr rhs);
ProcPtr p_prefix(std::string chan, Expr data, ProcPtr cont);  // data may be null
ProcPtr p_input(std::string chan, std::string binder, ProcPtr cont);
ProcPtr p_guard(Expr g, ProcPtr body);
ProcPtr p_seq(ProcPtr a, ProcPtr b);
ProcPtr p_ext(ProcPtr a, ProcPtr b);
ProcPtr p_int(ProcPtr a, ProcPtr b);
ProcPtr p_if(Expr c, ProcPtr t, ProcPtr f);
ProcPtr p_while(Expr c, ProcPtr body);
ProcPtr p_par(ProcPtr a, LensSet ns1, std::vector<std::string> cs, LensSet ns2, ProcPtr b);
ProcPtr p_ref(std::string name);

int proc_cmp(const ProcPtr& a, const ProcPtr& b);
std::string show(const ProcPtr& p);

}  // namespace rc
