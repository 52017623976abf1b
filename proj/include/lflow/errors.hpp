#ifndef LFLOW_ERRORS_HPP
#define LFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lflow {

/// Input graph lacks a required structure (connectivity, tree shape, bipartiteness...).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation called outside its documented parameter range.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration budget ran out. Never means "no solution".
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested case is only conjectured (no construction exists).
class ConjectureCase : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A construction produced output that failed its own exact re-verification.
class ConstructionDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lflow

#endif  // LFLOW_ERRORS_HPP
