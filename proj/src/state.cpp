#include "reacalc/state.hpp"

#include <algorithm>
#include <sstream>

namespace rc {

bool Value::as_bool() const {
  if (!is_bool()) raise("TypeError", "expected boolean value, got " + show(*this));
  return std::get<bool>(v);
}

long long Value::as_int() const {
  if (!is_int()) raise("TypeError", "expected integer value, got " + show(*this));
  return std::get<long long>(v);
}

const std::string& Value::as_enum() const {
  if (!is_enum()) raise("TypeError", "expected enum value, got " + show(*this));
  return std::get<std::string>(v);
}

const Value::Seq& Value::as_seq() const {
  if (!is_seq()) raise("TypeError", "expected sequence value, got " + show(*this));
  return std::get<Seq>(v);
}

const EventVal& Value::as_event() const {
  if (!is_event()) raise("TypeError", "expected event value, got " + show(*this));
  return std::get<EventVal>(v);
}

bool operator==(const EventVal& a, const EventVal& b) {
  if (a.chan != b.chan || a.data.size() != b.data.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (!(a.data[i] == b.data[i])) return false;
  return true;
}

bool operator==(const Value& a, const Value& b) { return value_cmp(a, b) == 0; }

int value_cmp(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return a.v.index() < b.v.index() ? -1 : 1;
  switch (a.v.index()) {
    case 0: {
      bool x = std::get<bool>(a.v), y = std::get<bool>(b.v);
      return x == y ? 0 : (x < y ? -1 : 1);
    }
    case 1: {
      long long x = std::get<long long>(a.v), y = std::get<long long>(b.v);
      return x == y ? 0 : (x < y ? -1 : 1);
    }
    case 2:
      return std::get<std::string>(a.v).compare(std::get<std::string>(b.v)) < 0   ? -1
             : std::get<std::string>(a.v).compare(std::get<std::string>(b.v)) > 0 ? 1
                                                                                  : 0;
    case 3: {
      const auto& x = std::get<Value::Seq>(a.v);
      const auto& y = std::get<Value::Seq>(b.v);
      for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
        if (int c = value_cmp(x[i], y[i]); c != 0) return c;
      return x.size() == y.size() ? 0 : (x.size() < y.size() ? -1 : 1);
    }
    default: {
      const auto& x = std::get<EventVal>(a.v);
      const auto& y = std::get<EventVal>(b.v);
      if (int c = x.chan.compare(y.chan); c != 0) return c < 0 ? -1 : 1;
      for (std::size_t i = 0; i < std::min(x.data.size(), y.data.size()); ++i)
        if (int c = value_cmp(x.data[i], y.data[i]); c != 0) return c;
      return x.data.size() == y.data.size() ? 0 : (x.data.size() < y.data.size() ? -1 : 1);
    }
  }
}

std::string show(const EventVal& ev) {
  if (ev.data.empty()) return ev.chan;
  return ev.chan + "." + show(ev.data[0]);
}

std::string show(const Value& val) {
  switch (val.v.index()) {
    case 0: return std::get<bool>(val.v) ? "true" : "false";
    case 1: return std::to_string(std::get<long long>(val.v));
    case 2: return std::get<std::string>(val.v);
    case 3: {
      std::string out = "<";
      const auto& xs = std::get<Value::Seq>(val.v);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += show(xs[i]);
      }
      return out + ">";
    }
    default: return show(std::get<EventVal>(val.v));
  }
}

std::size_t value_hash(const Value& val) {
  auto mix = [](std::size_t h, std::size_t x) { return h * 1000003u ^ x; };
  std::size_t h = val.v.index() + 17;
  switch (val.v.index()) {
    case 0: return mix(h, std::get<bool>(val.v) ? 2 : 1);
    case 1: return mix(h, std::hash<long long>{}(std::get<long long>(val.v)));
    case 2: return mix(h, std::hash<std::string>{}(std::get<std::string>(val.v)));
    case 3: {
      for (const auto& x : std::get<Value::Seq>(val.v)) h = mix(h, value_hash(x));
      return h;
    }
    default: {
      const auto& ev = std::get<EventVal>(val.v);
      h = mix(h, std::hash<std::string>{}(ev.chan));
      for (const auto& x : ev.data) h = mix(h, value_hash(x));
      return h;
    }
  }
}

bool Domain::contains(const Value& val) const {
  switch (v.index()) {
    case 0: return val.is_bool();
    case 1: {
      const auto& d = std::get<DomInt>(v);
      return val.is_int() && val.as_int() >= d.lo && val.as_int() <= d.hi;
    }
    case 2: {
      const auto& d = std::get<DomEnum>(v);
      return val.is_enum() &&
             std::find(d.names.begin(), d.names.end(), val.as_enum()) != d.names.end();
    }
    default: {
      const auto& d = std::get<DomSeq>(v);
      if (!val.is_seq()) return false;
      const auto& xs = val.as_seq();
      if (xs.size() > static_cast<std::size_t>(d.maxlen)) return false;
      for (const auto& x : xs)
        if (!d.elem->contains(x)) return false;
      return true;
    }
  }
}

unsigned long long Domain::size() const {
  switch (v.index()) {
    case 0: return 2;
    case 1: {
      const auto& d = std::get<DomInt>(v);
      return d.hi < d.lo ? 0 : static_cast<unsigned long long>(d.hi - d.lo + 1);
    }
    case 2: return std::get<DomEnum>(v).names.size();
    default: {
      const auto& d = std::get<DomSeq>(v);
      unsigned long long n = d.elem->size(), total = 0, pow = 1;
      for (int k = 0; k <= d.maxlen; ++k) {
        total += pow;
        if (total > kDefaultStateLimit) raise("StateSpaceLimit", "sequence domain too large");
        pow *= n;
      }
      return total;
    }
  }
}

std::vector<Value> Domain::enumerate() const {
  std::vector<Value> out;
  switch (v.index()) {
    case 0:
      out.emplace_back(false);
      out.emplace_back(true);
      break;
    case 1: {
      const auto& d = std::get<DomInt>(v);
      for (long long n = d.lo; n <= d.hi; ++n) out.emplace_back(n);
      break;
    }
    case 2:
      for (const auto& name : std::get<DomEnum>(v).names) out.emplace_back(name);
      break;
    default: {
      const auto& d = std::get<DomSeq>(v);
      std::vector<Value> elems = d.elem->enumerate();
      std::vector<Value::Seq> level = {{}};
      out.emplace_back(Value::Seq{});
      for (int k = 1; k <= d.maxlen; ++k) {
        std::vector<Value::Seq> next;
        for (const auto& base : level)
          for (const auto& e : elems) {
            Value::Seq xs = base;
            xs.push_back(e);
            out.emplace_back(xs);
            next.push_back(std::move(xs));
          }
        level = std::move(next);
      }
      break;
    }
  }
  return out;
}

std::string Domain::show() const {
  switch (v.index()) {
    case 0: return "bool";
    case 1: {
      const auto& d = std::get<DomInt>(v);
      return "int[" + std::to_string(d.lo) + ".." + std::to_string(d.hi) + "]";
    }
    case 2: {
      std::string out = "enum{";
      const auto& names = std::get<DomEnum>(v).names;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
      }
      return out + "}";
    }
    default: {
      const auto& d = std::get<DomSeq>(v);
      return "seq[" + std::to_string(d.maxlen) + "] " + d.elem->show();
    }
  }
}

bool operator==(const Domain& a, const Domain& b) {
  if (a.v.index() != b.v.index()) return false;
  switch (a.v.index()) {
    case 0: return true;
    case 1:
      return std::get<DomInt>(a.v).lo == std::get<DomInt>(b.v).lo &&
             std::get<DomInt>(a.v).hi == std::get<DomInt>(b.v).hi;
    case 2: return std::get<DomEnum>(a.v).names == std::get<DomEnum>(b.v).names;
    default:
      return std::get<DomSeq>(a.v).maxlen == std::get<DomSeq>(b.v).maxlen &&
             *std::get<DomSeq>(a.v).elem == *std::get<DomSeq>(b.v).elem;
  }
}

bool operator==(const State& a, const State& b) {
  if (a.store.size() != b.store.size()) return false;
  for (std::size_t i = 0; i < a.store.size(); ++i)
    if (!(a.store[i] == b.store[i])) return false;
  return true;
}

std::size_t state_hash(const State& st) {
  std::size_t h = 99991;
  for (const auto& v : st.store) h = h * 1000003u ^ value_hash(v);
  return h;
}

void StateSpace::add(const std::string& name, Domain dom) {
  if (find(name) >= 0) raise("TypeError", "duplicate variable " + name);
  names.push_back(name);
  doms.push_back(std::move(dom));
}

int StateSpace::find(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

int StateSpace::require(const std::string& name) const {
  int i = find(name);
  if (i < 0) raise("UnknownName", "unknown variable " + name);
  return i;
}

const Domain& StateSpace::dom_of(const std::string& name) const {
  return doms[require(name)];
}

unsigned long long StateSpace::state_count() const {
  unsigned long long total = 1;
  for (const auto& d : doms) {
    unsigned long long n = d.size();
    if (n == 0) return 0;
    if (total > kDefaultStateLimit / n + 1) raise("StateSpaceLimit", "state space too large");
    total *= n;
  }
  return total;
}

std::vector<State> StateSpace::enumerate(unsigned long long limit) const {
  if (state_count() > limit) raise("StateSpaceLimit", "state space exceeds limit");
  std::vector<State> out = {State{}};
  for (const auto& d : doms) {
    std::vector<Value> vals = d.enumerate();
    std::vector<State> next;
    next.reserve(out.size() * vals.size());
    for (const auto& st : out)
      for (const auto& v : vals) {
        State s2 = st;
        s2.store.push_back(v);
        next.push_back(std::move(s2));
      }
    out = std::move(next);
  }
  return out;
}

std::string show(const StateSpace& space, const State& st) {
  std::string out = "{";
  for (std::size_t i = 0; i < space.names.size(); ++i) {
    if (i) out += ", ";
    out += space.names[i] + ": " + show(st.store[i]);
  }
  return out + "}";
}

LensSet lens_make(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

LensSet lens_union(const LensSet& a, const LensSet& b) {
  LensSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LensSet lens_inter(const LensSet& a, const LensSet& b) {
  LensSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LensSet lens_diff(const LensSet& a, const LensSet& b) {
  LensSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool lens_member(const LensSet& l, const std::string& name) {
  return std::binary_search(l.begin(), l.end(), name);
}

bool lens_subset(const LensSet& a, const LensSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool lens_independent(const LensSet& a, const LensSet& b) { return lens_inter(a, b).empty(); }

std::vector<Value> lens_get(const StateSpace& space, const State& st, const LensSet& l) {
  std::vector<Value> out;
  out.reserve(l.size());
  for (const auto& name : l) out.push_back(st.store[space.require(name)]);
  return out;
}

State lens_put(const StateSpace& space, const State& st, const LensSet& l,
               const std::vector<Value>& vals) {
  if (vals.size() != l.size()) raise("TypeError", "lens_put arity mismatch");
  State out = st;
  for (std::size_t i = 0; i < l.size(); ++i) {
    int idx = space.require(l[i]);
    if (!space.doms[idx].contains(vals[i]))
      raise("DomainError",
            "value " + show(vals[i]) + " outside domain of " + l[i]);
    out.store[idx] = vals[i];
  }
  return out;
}

State lens_override(const StateSpace& space, const State& target, const State& source,
                    const LensSet& l) {
  return lens_put(space, target, l, lens_get(space, source, l));
}

}  // namespace rc
