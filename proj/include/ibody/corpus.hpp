// corpus.hpp - builtin bodies of revolution used throughout the tests and
// the CLI.  Each entry is defined by its angle-parametrized radial formula
// and instantiated at a caller-chosen dimension.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ibody/profile.hpp"

namespace ibody {

/// Loads a named builtin body at dimension n.  Throws lookup_error for an
/// unknown name and std::domain_error for an invalid dimension.
BodyOfRevolution corpus_body(std::string_view name, int n);

/// Names accepted by corpus_body, in listing order.
const std::vector<std::string>& corpus_names();

}  // namespace ibody
