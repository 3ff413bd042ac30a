#pragma once

#include <stdexcept>
#include <string>

namespace olr {

/// Source position, 1-based. A zero line means "synthesized, no position".
struct Span {
  int line = 0;
  int col = 0;
};

inline std::string to_string(const Span& s) {
  return std::to_string(s.line) + ":" + std::to_string(s.col);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(Span where, const std::string& msg)
      : Error(to_string(where) + ": syntax error: " + msg), where_(where) {}
  Span where() const { return where_; }

 private:
  Span where_;
};

class TypeError : public Error {
 public:
  TypeError(Span where, const std::string& msg)
      : Error((where.line ? to_string(where) + ": " : std::string{}) + "type error: " + msg), where_(where) {}
  Span where() const { return where_; }

 private:
  Span where_;
};

/// Substitution precondition violations (missing binding, ill-typed binding).
class SubstError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class FuelExhausted : public EvalError {
 public:
  FuelExhausted() : EvalError("evaluation fuel exhausted") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace olr
