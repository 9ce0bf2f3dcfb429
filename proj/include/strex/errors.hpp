#pragma once

#include <stdexcept>
#include <string>

namespace strex {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularError : Error {
    explicit SingularError(const std::string& msg = "matrix is singular") : Error(msg) {}
};

struct NotUnimodularError : Error {
    explicit NotUnimodularError(const std::string& msg = "matrix is not unimodular") : Error(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

struct GeometryError : Error {
    explicit GeometryError(const std::string& msg) : Error(msg) {}
};

struct NotExpansiveError : Error {
    explicit NotExpansiveError(const std::string& msg = "matrix is not expansive") : Error(msg) {}
};

struct SeedNotFoundError : Error {
    explicit SeedNotFoundError(const std::string& msg) : Error(msg) {}
};

struct HypothesisError : Error {
    explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

struct CertificationError : Error {
    explicit CertificationError(const std::string& msg) : Error(msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

struct NotOnBoundaryError : Error {
    explicit NotOnBoundaryError(const std::string& msg = "point is not on the boundary") : Error(msg) {}
};

struct NotATileError : Error {
    explicit NotATileError(const std::string& msg = "region does not tile") : Error(msg) {}
};

struct NonTerminationError : Error {
    explicit NonTerminationError(const std::string& msg) : Error(msg) {}
};

// Parse failure with position information for CLI diagnostics.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

}  // namespace strex
