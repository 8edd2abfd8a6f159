#include "graphzeta/errors.hpp"

namespace gz {

const char* error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Simplicity: return "SimplicityError";
    case ErrorKind::Connectivity: return "ConnectivityError";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::SingularPencil: return "SingularPencil";
    case ErrorKind::ConvexHullViolation: return "ConvexHullViolation";
    case ErrorKind::SingularIntegrand: return "SingularIntegrand";
    case ErrorKind::AnalyticityViolation: return "AnalyticityViolation";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::FreenessViolation: return "FreenessViolation";
    case ErrorKind::CycleTooLarge: return "CycleTooLarge";
    case ErrorKind::Parse: return "ParseError";
  }
  return "ZetaError";
}

}  // namespace gz
