#include "modat/error.hpp"

namespace modat {

std::string_view errc_name(Errc c) noexcept {
    switch (c) {
    case Errc::CompositeCharacteristic: return "CompositeCharacteristic";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::ZeroModule: return "ZeroModule";
    case Errc::GeneratorCountMismatch: return "GeneratorCountMismatch";
    case Errc::SingularGenerator: return "SingularGenerator";
    case Errc::IncompleteSimplesList: return "IncompleteSimplesList";
    case Errc::Undecided: return "Undecided";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::NotSubgroup: return "NotSubgroup";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NonUnitGaloisExponent: return "NonUnitGaloisExponent";
    case Errc::PRegularViolation: return "PRegularViolation";
    case Errc::MissingPrime: return "MissingPrime";
    case Errc::FusionIncomplete: return "FusionIncomplete";
    case Errc::IdealChoiceFailure: return "IdealChoiceFailure";
    case Errc::NotExpandable: return "NotExpandable";
    case Errc::NotInSpan: return "NotInSpan";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::ActionNotInvolution: return "ActionNotInvolution";
    case Errc::FusionDegreeMismatch: return "FusionDegreeMismatch";
    case Errc::OrderDivisibleByP: return "OrderDivisibleByP";
    case Errc::NotAGroup: return "NotAGroup";
    case Errc::NotInImage: return "NotInImage";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NoAdmissibleMatching: return "NoAdmissibleMatching";
    case Errc::NoInferencePossible: return "NoInferencePossible";
    case Errc::SingularA: return "SingularA";
    case Errc::NonIntegralAtoms: return "NonIntegralAtoms";
    case Errc::AllEliminated: return "AllEliminated";
    case Errc::NoConsistentSigns: return "NoConsistentSigns";
    case Errc::AmbiguousCase: return "AmbiguousCase";
    case Errc::TooManyCandidates: return "TooManyCandidates";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Format: return "FormatError";
    case Errc::Io: return "IoError";
    }
    return "Unknown";
}

}  // namespace modat
