#include "masing/error.hpp"

namespace masing {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::UnknownIdentifier: return "unknown-identifier";
    case ErrorKind::UnknownName: return "unknown-name";
    case ErrorKind::OutOfBox: return "out-of-box";
    case ErrorKind::Ellipticity: return "ellipticity-violation";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::BoxExit: return "box-exit";
    case ErrorKind::Instability: return "instability-abort";
    case ErrorKind::SingularJacobian: return "singular-jacobian";
    case ErrorKind::DegenerateSpeed: return "degenerate-speed";
    case ErrorKind::Coverage: return "insufficient-coverage";
    case ErrorKind::Hemisphere: return "hemisphere-violation";
    case ErrorKind::NonPureField: return "non-pure-field";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace masing
