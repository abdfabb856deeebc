#pragma once

#include <stdexcept>
#include <string>

namespace bsurf {

enum class ErrorKind {
  Usage,              // malformed input or flags
  Domain,             // input outside the operation's domain
  InsufficientDepth,  // the window or descriptor does not reach far enough
  Hypothesis          // an induction hypothesis fails (equal lengths, zero sum)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace bsurf
