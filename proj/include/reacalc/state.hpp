#pragma once

#include <memory>
#include <optional>

#include "reacalc/values.hpp"

namespace rc {

// Hard cap on state enumeration; operations that would exceed it raise StateSpaceLimit.
inline constexpr unsigned long long kDefaultStateLimit = 1ull << 20;

struct Domain;

struct DomBool {};
struct DomInt {
  long long lo = 0, hi = 0;
};
struct DomEnum {
  std::vector<std::string> names;
};
struct DomSeq {
  int maxlen = 0;
  std::shared_ptr<Domain> elem;
};

struct Domain {
  std::variant<DomBool, DomInt, DomEnum, DomSeq> v;

  Domain() : v(DomBool{}) {}
  Domain(DomBool d) : v(d) {}
  Domain(DomInt d) : v(d) {}
  Domain(DomEnum d) : v(std::move(d)) {}
  Domain(DomSeq d) : v(std::move(d)) {}

  bool contains(const Value& val) const;
  unsigned long long size() const;
  std::vector<Value> enumerate() const;
  std::string show() const;
};

bool operator==(const Domain& a, const Domain& b);
inline bool operator!=(const Domain& a, const Domain& b) { return !(a == b); }

// A state is a vector of values aligned with the declaring space's variable order.
struct State {
  std::vector<Value> store;
};

bool operator==(const State& a, const State& b);
inline bool operator!=(const State& a, const State& b) { return !(a == b); }
std::size_t state_hash(const State& st);

struct StateSpace {
  std::vector<std::string> names;
  std::vector<Domain> doms;

  void add(const std::string& name, Domain dom);
  int find(const std::string& name) const;                 // -1 when absent
  int require(const std::string& name) const;              // raises UnknownName
  const Domain& dom_of(const std::string& name) const;

  unsigned long long state_count() const;                  // raises StateSpaceLimit on blowup
  std::vector<State> enumerate(unsigned long long limit = kDefaultStateLimit) const;
};

std::string show(const StateSpace& space, const State& st);

// A variable-set lens: sorted, duplicate-free list of variable names.
using LensSet = std::vector<std::string>;

LensSet lens_make(std::vector<std::string> names);
LensSet lens_union(const LensSet& a, const LensSet& b);
LensSet lens_inter(const LensSet& a, const LensSet& b);
LensSet lens_diff(const LensSet& a, const LensSet& b);
bool lens_member(const LensSet& l, const std::string& name);
bool lens_subset(const LensSet& a, const LensSet& b);

// Independence of variable-set lenses is disjointness of the underlying regions.
bool lens_independent(const LensSet& a, const LensSet& b);

// Values of the lens variables, in the lens's own (sorted) order.
std::vector<Value> lens_get(const StateSpace& space, const State& st, const LensSet& l);

// Replace the lens region; values aligned with the lens order. Domain-checked.
State lens_put(const StateSpace& space, const State& st, const LensSet& l,
               const std::vector<Value>& vals);

// lens_override(target, source, l) = put(target, get(source, l)).
State lens_override(const StateSpace& space, const State& target, const State& source,
                    const LensSet& l);

}  // namespace rc
