#pragma once

#include <stdexcept>
#include <string>

namespace hsum {

// Base for all library errors. Anything not a usage/parse problem derives
// from Error directly and maps to CLI exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (bad header, wrong row length, ...). CLI exit code 2.
struct ParseError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct SingularError : Error {
    using Error::Error;
};

// Enumeration would exceed the candidate budget; message names the count.
struct BudgetError : Error {
    using Error::Error;
};

// Requested a random element of an empty family (d = 1, n odd).
struct EmptyFamilyError : Error {
    using Error::Error;
};

struct NoClosedFormError : Error {
    using Error::Error;
};

// Conjugated map is not block upper triangular; message names the bad row.
struct BlockFormError : Error {
    using Error::Error;
};

// Rejection sampling hit its retry cap before collecting enough elements.
struct SampleError : Error {
    using Error::Error;
};

} // namespace hsum
