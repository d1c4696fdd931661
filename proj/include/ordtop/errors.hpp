#pragma once

#include <stdexcept>
#include <string>

namespace ordtop {

// Base for all workbench errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (posets, regions, points, certificates).
struct parse_error : error {
  using error::error;
};

// Point or region used with the wrong family, or a code that does not
// decode in the family's carrier.
struct family_error : error {
  using error::error;
};

// A documented precondition was violated by the caller.
struct contract_error : error {
  using error::error;
};

// The algebra has no closure rule for a combination. Shipped families
// are closed, so hitting this on a builtin is a defect.
struct unsupported_error : error {
  using error::error;
};

}  // namespace ordtop
