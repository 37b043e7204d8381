#pragma once

#include <stdexcept>
#include <string>

namespace cup {

/// Parameter outside the admissible window of a formula or sampler.
/// The message names the violated constraint, e.g. "requires p < 2(alpha - n)".
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Malformed configuration (bad function spec, degenerate grid, unknown experiment).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_domain(bool ok, const std::string& constraint) {
    if (!ok) throw domain_error(constraint);
}

inline void require_config(bool ok, const std::string& what) {
    if (!ok) throw config_error(what);
}

}  // namespace cup
