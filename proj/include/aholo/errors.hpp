#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aholo {

// Base class for every failure this library reports by exception.
// Structural misuse (bad sizes, malformed atlases) and numerical
// impossibilities (singular maps, quadrature non-convergence) both land
// here; verdict-style operations return reports instead of throwing.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MismatchedAlgebra : Error {
    explicit MismatchedAlgebra(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

struct NonInvertible : Error {
    std::vector<int> indices;  // zero components, 0-based
    explicit NonInvertible(std::vector<int> idx)
        : Error("element not invertible: zero component(s)"), indices(std::move(idx)) {}
};

struct RankMismatch : Error {
    explicit RankMismatch(const std::string& what) : Error(what) {}
};

struct BadIndices : Error {
    explicit BadIndices(const std::string& what) : Error(what) {}
};

struct UnsupportedMode : Error {
    explicit UnsupportedMode(const std::string& what) : Error(what) {}
};

struct SingularMap : Error {
    std::vector<int> components;  // components whose matrix is singular, 0-based
    explicit SingularMap(std::vector<int> comps)
        : Error("linear map singular in some component(s)"), components(std::move(comps)) {}
};

struct BoundaryTooClose : Error {
    explicit BoundaryTooClose(const std::string& what) : Error(what) {}
};

struct DomainViolation : Error {
    explicit DomainViolation(const std::string& what) : Error(what) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

struct NonHolomorphic : Error {
    explicit NonHolomorphic(const std::string& what) : Error(what) {}
};

struct NotInOverlap : Error {
    explicit NotInOverlap(const std::string& what) : Error(what) {}
};

struct StructuralError : Error {
    explicit StructuralError(const std::string& what) : Error(what) {}
};

struct MissingChartData : Error {
    explicit MissingChartData(const std::string& what) : Error(what) {}
};

struct BadParameters : Error {
    explicit BadParameters(const std::string& what) : Error(what) {}
};

struct UnsupportedTransition : Error {
    explicit UnsupportedTransition(const std::string& what) : Error(what) {}
};

struct UnsupportedCover : Error {
    explicit UnsupportedCover(const std::string& what) : Error(what) {}
};

struct WindowTooSmall : Error {
    explicit WindowTooSmall(const std::string& what) : Error(what) {}
};

struct RankInstability : Error {
    explicit RankInstability(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace aholo
