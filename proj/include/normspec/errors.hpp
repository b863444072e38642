#pragma once

#include <stdexcept>
#include <string>

namespace normspec {

// Every failure raised by the library derives from Error. The `code` is a
// stable identifier used by the CLI in machine-readable diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define NORMSPEC_SIMPLE_ERROR(Name)                                         \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    };

NORMSPEC_SIMPLE_ERROR(NoConvergence)
NORMSPEC_SIMPLE_ERROR(EvalError)
NORMSPEC_SIMPLE_ERROR(NotNormal)
NORMSPEC_SIMPLE_ERROR(RefinementExhausted)
NORMSPEC_SIMPLE_ERROR(NotALoop)
NORMSPEC_SIMPLE_ERROR(NotAnEigenpair)
NORMSPEC_SIMPLE_ERROR(DerivativeSetMismatch)
NORMSPEC_SIMPLE_ERROR(DeflationFailed)
NORMSPEC_SIMPLE_ERROR(NotASubMultiset)
NORMSPEC_SIMPLE_ERROR(NotHermitian)
NORMSPEC_SIMPLE_ERROR(ContourHitsSpectrum)
NORMSPEC_SIMPLE_ERROR(QuadratureNotConverged)
NORMSPEC_SIMPLE_ERROR(AmbiguousRank)
NORMSPEC_SIMPLE_ERROR(GroupsNotSeparated)
NORMSPEC_SIMPLE_ERROR(SeedDegenerate)
NORMSPEC_SIMPLE_ERROR(NotInvariant)
NORMSPEC_SIMPLE_ERROR(GapCollapse)
NORMSPEC_SIMPLE_ERROR(ToleranceExceeded)
NORMSPEC_SIMPLE_ERROR(HypothesisViolated)
NORMSPEC_SIMPLE_ERROR(ClustersNotSeparated)
NORMSPEC_SIMPLE_ERROR(NonIntegerSlope)
NORMSPEC_SIMPLE_ERROR(TruncationExhausted)
NORMSPEC_SIMPLE_ERROR(FlatContact)
NORMSPEC_SIMPLE_ERROR(ZeroPolynomial)
NORMSPEC_SIMPLE_ERROR(NotTotallyOrdered)
NORMSPEC_SIMPLE_ERROR(DepthExceeded)
NORMSPEC_SIMPLE_ERROR(NoChartCovers)
NORMSPEC_SIMPLE_ERROR(InvalidArgument)
NORMSPEC_SIMPLE_ERROR(FormatError)

#undef NORMSPEC_SIMPLE_ERROR

// Expression syntax error carrying the byte offset and the tokens that
// would have been accepted there.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::string expected, const std::string& what)
        : Error("SyntaxError", what), offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

}  // namespace normspec
