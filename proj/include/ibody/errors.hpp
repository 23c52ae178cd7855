// errors.hpp - error taxonomy shared by all ibody modules.
#pragma once

#include <stdexcept>
#include <string>

namespace ibody {

/// A numerical routine could not reach the requested tolerance.
/// Carries the error estimate that was actually achieved.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Malformed input: bad expression text, bad JSON layout, pieces that do not
/// tile the domain, and similar structural problems.
class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation outside the supported regime (odd dimension where an even one is
/// required, distributional order beyond a single Dirac layer, ...).
class unsupported_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown corpus entry or named resource.
class lookup_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density fails to define a star body (negative values); carries the
/// location where the violation was observed.
class not_star_body_error : public std::runtime_error {
 public:
  not_star_body_error(const std::string& what, double witness)
      : std::runtime_error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

}  // namespace ibody
