#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rc {

// All engine faults carry a kind tag so callers can dispatch without string matching.
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

[[noreturn]] inline void raise(const char* kind, const std::string& msg) {
  throw Error(kind, msg);
}

struct Value;

// An event is a channel name plus at most one data value (empty = pure synchronisation).
struct EventVal {
  std::string chan;
  std::vector<Value> data;
};

struct Value {
  using Seq = std::vector<Value>;
  std::variant<bool, long long, std::string, Seq, EventVal> v;

  Value() : v(false) {}
  Value(bool b) : v(b) {}
  Value(long long n) : v(n) {}
  Value(int n) : v(static_cast<long long>(n)) {}
  Value(std::string s) : v(std::move(s)) {}
  Value(const char* s) : v(std::string(s)) {}
  Value(Seq xs) : v(std::move(xs)) {}
  Value(EventVal e) : v(std::move(e)) {}

  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_int() const { return std::holds_alternative<long long>(v); }
  bool is_enum() const { return std::holds_alternative<std::string>(v); }
  bool is_seq() const { return std::holds_alternative<Seq>(v); }
  bool is_event() const { return std::holds_alternative<EventVal>(v); }

  bool as_bool() const;
  long long as_int() const;
  const std::string& as_enum() const;
  const Seq& as_seq() const;
  const EventVal& as_event() const;
};

bool operator==(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }
bool operator==(const EventVal& a, const EventVal& b);
inline bool operator!=(const EventVal& a, const EventVal& b) { return !(a == b); }

// Total order used for canonical sorting of value sets; -1/0/1.
int value_cmp(const Value& a, const Value& b);
inline bool operator<(const Value& a, const Value& b) { return value_cmp(a, b) < 0; }

std::string show(const Value& val);
std::string show(const EventVal& ev);

std::size_t value_hash(const Value& val);

}  // namespace rc
