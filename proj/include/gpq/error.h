#pragma once

#include <stdexcept>
#include <string>

namespace gpq {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonManifold : public Error {
public:
    NonManifold(int v0, int v1)
        : Error("non-manifold edge (" + std::to_string(v0) + ", " + std::to_string(v1) + ")"), v0(v0), v1(v1) {}
    int v0, v1;
};

class InconsistentOrientation : public Error {
public:
    InconsistentOrientation(int v0, int v1)
        : Error("inconsistent orientation on edge (" + std::to_string(v0) + ", " + std::to_string(v1) + ")") {}
};

class DegenerateTriangle : public Error {
public:
    explicit DegenerateTriangle(int tri)
        : Error("degenerate triangle " + std::to_string(tri)), triangle(tri) {}
    int triangle;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class UndefinedIndex : public Error {
public:
    using Error::Error;
};

class SanitizeFailed : public Error {
public:
    using Error::Error;
};

/// A grid point landed on a triangle edge or vertex: the map was not sanitized.
class SanitizationBreach : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

class IsolationFailed : public Error {
public:
    using Error::Error;
};

class OracleInapplicable : public Error {
public:
    using Error::Error;
};

class NotFlat : public Error {
public:
    using Error::Error;
};

/// Input map is not seamless and grid preserving.
class ValidationFailed : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

}  // namespace gpq
