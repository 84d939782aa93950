#pragma once

#include <stdexcept>
#include <string>

namespace alcplan {

/// Base class for all recoverable failures raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or unreadable input (OSM XML, JSON, route files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A way references a node id that is absent from the document.
class DanglingReferenceError : public ParseError {
public:
    using ParseError::ParseError;
};

/// The extracted road graph is not a single connected component.
class ConnectivityError : public Error {
public:
    using Error::Error;
};

/// Bad configuration: unknown key, out-of-domain value, missing file.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A route is not a walk in the graph, or violates a route precondition.
class InvalidRouteError : public Error {
public:
    using Error::Error;
};

/// A candidate full route fails to cover every edge of the graph.
class CoverageError : public InvalidRouteError {
public:
    using InvalidRouteError::InvalidRouteError;
};

/// Matrix handed to the information metric is not positive definite.
class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

}  // namespace alcplan
