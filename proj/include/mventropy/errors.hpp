#pragma once

#include <stdexcept>
#include <string>

namespace mventropy {

/// Malformed literal or scenario document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap (orbit count, hyperspace size, subset scan) was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A selection was requested for a map that is not lower semicontinuous
/// with convex values.
class SelectionHypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pulled-back cover member is not open in [0,1]. Carries the offending
/// member so callers can report it.
class OpennessViolation : public std::runtime_error {
 public:
  OpennessViolation(std::string what, std::string source_member,
                    std::string pulled_back, int depth)
      : std::runtime_error(std::move(what)),
        source_member(std::move(source_member)),
        pulled_back(std::move(pulled_back)),
        depth(depth) {}

  std::string source_member;
  std::string pulled_back;
  int depth;
};

/// Inconsistent scenario configuration (e.g. a set family that is not
/// closed under intersection).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mventropy
