#pragma once

#include <stdexcept>
#include <string>

namespace ovsa {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroPolynomialError : Error {
    ZeroPolynomialError() : Error("zero polynomial") {}
};

struct ZeroSigmaPolyError : Error {
    ZeroSigmaPolyError() : Error("zero sigma-polynomial") {}
};

struct ZeroVectorError : Error {
    ZeroVectorError() : Error("zero vector has no valuation") {}
};

struct ModelMismatchError : Error {
    ModelMismatchError() : Error("vectors belong to different models") {}
};

struct ElementNotInOrderError : Error {
    explicit ElementNotInOrderError(const std::string& detail = "")
        : Error("element not in order" + (detail.empty() ? "" : ": " + detail)) {}
};

struct NonPositiveScaleError : Error {
    NonPositiveScaleError() : Error("scaling factor must be positive") {}
};

struct UnsupportedScalarFieldError : Error {
    explicit UnsupportedScalarFieldError(const std::string& detail = "")
        : Error("construction requires irrational scalars" +
                (detail.empty() ? "" : ": " + detail)) {}
};

struct NotApplicableError : Error {
    explicit NotApplicableError(const std::string& detail = "")
        : Error("operation not applicable" + (detail.empty() ? "" : ": " + detail)) {}
};

struct NotMonotoneError : Error {
    NotMonotoneError() : Error("sigma-polynomial is not absolutely monotone") {}
};

struct SolvableError : Error {
    SolvableError() : Error("equation is solvable, the cut does not exist") {}
};

struct InvalidIntervalError : Error {
    InvalidIntervalError() : Error("interval endpoints must satisfy a < b") {}
};

struct CutQueryUndecidableError : Error {
    explicit CutQueryUndecidableError(const std::string& detail = "")
        : Error("cut descriptor cannot answer the query" +
                (detail.empty() ? "" : ": " + detail)) {}
};

struct NotNormalizedError : Error {
    explicit NotNormalizedError(const std::string& detail = "")
        : Error("sigma-polynomial is not in the normalized shape" +
                (detail.empty() ? "" : ": " + detail)) {}
};

struct NotASubstructureError : Error {
    explicit NotASubstructureError(const std::string& detail = "")
        : Error("not a substructure" + (detail.empty() ? "" : ": " + detail)) {}
};

struct ActionNotOrderPreservingError : Error {
    explicit ActionNotOrderPreservingError(const std::string& detail = "")
        : Error("action is not order-preserving" +
                (detail.empty() ? "" : ": " + detail)) {}
};

struct UnboundVariableError : Error {
    explicit UnboundVariableError(const std::string& var)
        : Error("unbound variable: " + var) {}
};

struct DisjointnessViolatedError : Error {
    explicit DisjointnessViolatedError(const std::string& detail = "")
        : Error("formulas are not contradictory" +
                (detail.empty() ? "" : ": " + detail)) {}
};

struct SolveIncompleteError : Error {
    explicit SolveIncompleteError(const std::string& detail = "")
        : Error("no solution found by solving or supported extension" +
                (detail.empty() ? "" : ": " + detail)) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& detail) : Error("schema error: " + detail) {}
};

struct UnknownSuiteError : Error {
    explicit UnknownSuiteError(const std::string& name) : Error("unknown suite: " + name) {}
};

}  // namespace ovsa
