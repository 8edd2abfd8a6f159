#pragma once

#include <stdexcept>
#include <string>

namespace gz {

enum class ErrorKind {
  Simplicity,
  Connectivity,
  BudgetExceeded,
  Domain,
  WindowTooSmall,
  SingularPencil,
  ConvexHullViolation,
  SingularIntegrand,
  AnalyticityViolation,
  BadParameter,
  FreenessViolation,
  CycleTooLarge,
  Parse,
};

const char* error_name(ErrorKind kind) noexcept;

/// Base class of every error raised by the library. The kind is what the CLI
/// maps onto exit codes and the machine-readable error record.
class ZetaError : public std::runtime_error {
 public:
  ZetaError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind Kind>
class KindedError : public ZetaError {
 public:
  explicit KindedError(const std::string& what) : ZetaError(Kind, what) {}
};

using SimplicityError = KindedError<ErrorKind::Simplicity>;
using ConnectivityError = KindedError<ErrorKind::Connectivity>;
using BudgetExceeded = KindedError<ErrorKind::BudgetExceeded>;
using DomainError = KindedError<ErrorKind::Domain>;
using WindowTooSmall = KindedError<ErrorKind::WindowTooSmall>;
using SingularPencil = KindedError<ErrorKind::SingularPencil>;
using ConvexHullViolation = KindedError<ErrorKind::ConvexHullViolation>;
using SingularIntegrand = KindedError<ErrorKind::SingularIntegrand>;
using AnalyticityViolation = KindedError<ErrorKind::AnalyticityViolation>;
using BadParameter = KindedError<ErrorKind::BadParameter>;
using FreenessViolation = KindedError<ErrorKind::FreenessViolation>;
using CycleTooLarge = KindedError<ErrorKind::CycleTooLarge>;
using ParseError = KindedError<ErrorKind::Parse>;

}  // namespace gz
