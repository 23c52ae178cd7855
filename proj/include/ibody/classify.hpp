// classify.hpp - smoothness classification and intersection-body verdicts.
//
// A body of revolution can only be the intersection body of a star body in
// R^n if its radial profile is smooth enough: class C^{n/2-1} away from the
// poles and C^{n-2} at the equator.  This module measures those classes from
// exact one-sided derivative jumps at declared breakpoints (plus odd-order
// derivative checks at the equator t=0 and, after the substitution t=cos psi,
// at the pole t=1), turns them into the necessary-condition test, and
// combines them with explicit density construction into a final verdict:
// invert the section function at the body's own dimension when the profile is
// smooth enough, otherwise invert at a lower even dimension and lift back up
// two dimensions at a time, tracking the Dirac atoms that derivative jumps
// spawn.  A verified nonnegative bounded density certifies an intersection
// body; a sign change or negative atom refutes one.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ibody/profile.hpp"

namespace ibody {

/// Verified smoothness at one location.  `value` is the largest k such that
/// the profile is C^k there as far as examined; -1 marks a value jump.  When
/// no defect shows up through order `checked`, `unbounded` is set (the class
/// is at least `value` == `checked`, possibly infinite).
struct SmoothClass {
  int value = 0;
  bool unbounded = false;
  int checked = 0;

  std::string to_text() const;
};

enum class CheckVerdict { Pass, Fail, Inconclusive };
const char* to_string(CheckVerdict v);

enum class OverallVerdict {
  IntersectionBodyOfStarBody,   // verified continuous positive bounded density
  IntersectionBodyOnly,         // verified nonnegative measure, not a star body
  NotIntersectionBodyOfStarBody,  // necessary regularity fails
  NotIntersectionBody,          // sign-changing density or negative atom
  Inconclusive,
};
const char* to_string(OverallVerdict v);

/// One named test inside a report, with a human-readable witness (breakpoint,
/// derivative order, or offending value).
struct CriterionResult {
  std::string name;
  CheckVerdict verdict = CheckVerdict::Inconclusive;
  std::string witness;
};

struct BreakpointClass {
  double t0 = 0.0;
  SmoothClass smooth;
};

struct ClassificationReport {
  std::string body;
  int n = 0;
  std::vector<BreakpointClass> interior_breakpoints;
  SmoothClass interior;  // worst breakpoint class; unbounded if none defect
  SmoothClass equator;   // t = 0, odd derivative orders only
  SmoothClass pole;      // t = 1, odd orders in the polar angle
  std::vector<CriterionResult> criteria;
  OverallVerdict verdict = OverallVerdict::Inconclusive;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Measures the three smoothness classes of K's profile.  Defects are read
/// off exact one-sided derivative jumps for closed-form pieces; fitted pieces
/// use order-dependent noise thresholds and examine at most order 4.
/// max_order must lie in [1, 8].
ClassificationReport regularity_report(const BodyOfRevolution& K,
                                       int max_order = 8);

/// Outcome of the necessary regularity condition.  Never passes: the
/// condition is necessary, not sufficient, so the best outcome is
/// Inconclusive.
struct ConditionResult {
  CheckVerdict verdict = CheckVerdict::Inconclusive;
  std::string witness;
};

/// K can be an intersection body of a star body only if its interior class
/// reaches n/2-1 and its equator class reaches n-2.  Fails with a witness
/// when a verified defect sits below those thresholds; throws
/// unsupported_error for odd n.
ConditionResult necessary_condition(const BodyOfRevolution& K,
                                    int max_order = 8);

/// Predicted smoothness classes of the intersection body of a generator of
/// class C^m in dimension n (even, >= 4): interior m+n/2-1, pole m, equator
/// m+n-2.
struct GainPrediction {
  int interior = 0;
  int pole = 0;
  int equator = 0;
};
GainPrediction predicted_gain(int m, int n);

/// Full verdict for even n in [4, 10]: necessary condition, density
/// construction (direct inversion, or inversion at a lower even dimension
/// followed by lifting when the profile is too rough), sign analysis, and
/// forward verification of the candidate density.
ClassificationReport full_report(const BodyOfRevolution& K,
                                 const std::string& body_name = "");

}  // namespace ibody
