#pragma once

#include <stdexcept>
#include <string>

namespace mlfft {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Requested index set would exceed the configured cardinality cap.
class CapacityExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Reconstruction called on a lattice that does not cover the index set.
class CoverageViolation : public Error {
public:
    using Error::Error;
};

class SearchCeilingExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace mlfft
