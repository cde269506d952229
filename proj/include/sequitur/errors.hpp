#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sequitur {

/// A handle or link that should never exist in a well-formed grammar was
/// touched. Always a bug in the caller, never an input problem.
class structural_fault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class not_found_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Raised by read-only traversals that meet a cycle or a dangling reference.
class corrupt_grammar_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class undefined_input_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class encoding_error : public std::runtime_error {
 public:
  encoding_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class resolution_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sequitur
