#pragma once

#include <stdexcept>
#include <string>

namespace toric {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (CLI exit status 2).
class InvalidInput : public Error
{
public:
    using Error::Error;
};

/// A desk-scale guard (dimension, point count) was exceeded (CLI exit status 3).
class GuardExceeded : public Error
{
public:
    using Error::Error;
};

/// A mathematical invariant failed; indicates a bug or a counterexample (CLI exit status 4).
class InternalInconsistency : public Error
{
public:
    using Error::Error;
};

} // namespace toric
