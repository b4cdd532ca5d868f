#pragma once

#include <stdexcept>
#include <string>

namespace wkfi {

// Config file problems: missing fields, bad values, schema violations.  CLI exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resource guards (grid size cap, dimension cap).  CLI exit 3.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures.  CLI exit 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed form vs oracle disagreement or non-convergence.  CLI exit 5.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wkfi
