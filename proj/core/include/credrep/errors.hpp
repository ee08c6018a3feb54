#pragma once

#include <stdexcept>
#include <string>

namespace credrep {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file or payload. Messages carry file/line context where known.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A domain invariant or operation precondition was violated.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Network transport failure, including exhausted retry budgets.
class TransportError : public Error {
public:
    using Error::Error;
};

} // namespace credrep
