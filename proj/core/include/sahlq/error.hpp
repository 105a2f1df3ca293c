#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sahlq {

enum class ErrorKind {
  Parse,
  Input,
  MissingOperation,
  NotPSL,
  NotHomomorphism,
  WrongArrowKind,
  EliminationStuck,
  BoundExceeded,
  NotCompatible,
  UnboundPredicateVariable,
  LawViolation,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::size_t pos = npos)
      : std::runtime_error(what), kind_(kind), pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  // Byte offset into the parsed text, or npos.
  std::size_t position() const { return pos_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  ErrorKind kind_;
  std::size_t pos_;
};

}  // namespace sahlq
