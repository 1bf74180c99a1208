#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loja {

enum class ErrorKind {
  Parse,         // malformed text or JSON input
  Precondition,  // operation called outside its domain
  Hypothesis,    // a hypothesis of a bound fails
  Guard,         // configured size/budget guard exceeded
  Truncation,    // series cancelled up to the truncation order
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorKind::Parse, what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

inline Error precondition_error(const std::string& what) { return Error(ErrorKind::Precondition, what); }
inline Error hypothesis_error(const std::string& what) { return Error(ErrorKind::Hypothesis, what); }
inline Error guard_error(const std::string& what) { return Error(ErrorKind::Guard, what); }
inline Error truncation_error(const std::string& what) { return Error(ErrorKind::Truncation, what); }

}  // namespace loja
