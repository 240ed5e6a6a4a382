#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rnaicgf {

/// Diagnostic categories raised while reading or validating CGF text.
enum class CgfErrorKind {
  Syntax,
  InvalidRate,
  NestedChoice,
  UndefinedSpecies,
  DuplicateDefinition,
  InconsistentChannelRate,
};

const char* to_string(CgfErrorKind kind);

class CgfError : public std::runtime_error {
 public:
  CgfError(CgfErrorKind kind, const std::string& message, std::size_t line = 0,
           std::size_t column = 0);

  CgfErrorKind kind() const { return kind_; }
  // 1-based; 0 when the problem is not tied to a source position.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  CgfErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Thrown by apply_reaction when the consumed multiset is not available.
class ReactionNotEnabled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RmError : public std::runtime_error {
 public:
  RmError(const std::string& message, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Decoding found a solution that breaks the one-token encoding invariant.
class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StateSpaceOverflow : public std::runtime_error {
 public:
  explicit StateSpaceOverflow(std::size_t limit);
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

/// The chain has a state that cannot reach absorption, or the solve failed.
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rnaicgf
