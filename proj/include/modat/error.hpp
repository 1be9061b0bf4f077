#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modat {

enum class Errc {
    CompositeCharacteristic,
    FieldTooLarge,
    ShapeMismatch,
    FieldMismatch,
    NotSquare,
    NotInvariant,
    ZeroModule,
    GeneratorCountMismatch,
    SingularGenerator,
    IncompleteSimplesList,
    Undecided,
    GroupTooLarge,
    NotSubgroup,
    TooLarge,
    NonUnitGaloisExponent,
    PRegularViolation,
    MissingPrime,
    FusionIncomplete,
    IdealChoiceFailure,
    NotExpandable,
    NotInSpan,
    NonIntegral,
    ActionNotInvolution,
    FusionDegreeMismatch,
    OrderDivisibleByP,
    NotAGroup,
    NotInImage,
    Infeasible,
    NoAdmissibleMatching,
    NoInferencePossible,
    SingularA,
    NonIntegralAtoms,
    AllEliminated,
    NoConsistentSigns,
    AmbiguousCase,
    TooManyCandidates,
    InvalidArgument,
    Format,
    Io,
};

std::string_view errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view name() const noexcept { return errc_name(code_); }

    // I/O and format problems map to a different exit status in the CLI
    bool is_io() const noexcept { return code_ == Errc::Format || code_ == Errc::Io; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace modat
