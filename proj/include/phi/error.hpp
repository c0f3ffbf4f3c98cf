#ifndef PHI_ERROR_HPP
#define PHI_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phi {

enum class ErrorKind {
  composition,
  invalid_quiver,
  invalid_poset,
  invalid_relation,
  unsupported_input,
  resource_limit,
  contract,
  invalid_presentation,
  invalid_information,
  parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::composition: return "composition error";
    case ErrorKind::invalid_quiver: return "invalid quiver";
    case ErrorKind::invalid_poset: return "invalid poset";
    case ErrorKind::invalid_relation: return "invalid relation";
    case ErrorKind::unsupported_input: return "unsupported input";
    case ErrorKind::resource_limit: return "resource limit";
    case ErrorKind::contract: return "contract violation";
    case ErrorKind::invalid_presentation: return "invalid presentation";
    case ErrorKind::invalid_information: return "Invalid information";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace phi

#endif  // PHI_ERROR_HPP
