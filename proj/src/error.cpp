#include "ahprank/error.hpp"

namespace ahprank {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::InvalidEntry: return "InvalidEntry";
    case Errc::ReciprocityViolation: return "ReciprocityViolation";
    case Errc::OneSidedComparison: return "OneSidedComparison";
    case Errc::BadDiagonal: return "BadDiagonal";
    case Errc::TooSmall: return "TooSmall";
    case Errc::ParseError: return "ParseError";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::Disconnected: return "Disconnected";
    case Errc::CycleExplosion: return "CycleExplosion";
    case Errc::NotEligible: return "NotEligible";
    case Errc::Infeasible: return "Infeasible";
    case Errc::MaxIterations: return "MaxIterations";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::NonPositiveWeights: return "NonPositiveWeights";
    case Errc::InfeasibleDensity: return "InfeasibleDensity";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ahprank
