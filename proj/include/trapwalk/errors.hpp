#pragma once

#include <stdexcept>
#include <string>

namespace trapwalk {

/// Category of a failure, used by the CLI to pick an exit status.
enum class ErrorKind {
  Parse,
  Validation,
  Domain,
  InfiniteMean,
  ZeroEscape,
  HorizonTooLarge,
  Window,
  FitDiverged,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::Parse, what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class InfiniteMean : public Error {
 public:
  explicit InfiniteMean(const std::string& what) : Error(ErrorKind::InfiniteMean, what) {}
};

class ZeroEscape : public Error {
 public:
  explicit ZeroEscape(const std::string& what) : Error(ErrorKind::ZeroEscape, what) {}
};

class HorizonTooLarge : public Error {
 public:
  HorizonTooLarge(const std::string& what) : Error(ErrorKind::HorizonTooLarge, what) {}
};

class WindowError : public Error {
 public:
  explicit WindowError(const std::string& what) : Error(ErrorKind::Window, what) {}
};

class FitDiverged : public Error {
 public:
  explicit FitDiverged(const std::string& what) : Error(ErrorKind::FitDiverged, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace trapwalk
