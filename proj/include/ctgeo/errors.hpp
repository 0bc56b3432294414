#pragma once

#include <stdexcept>
#include <string>

namespace ctgeo {

/// Base for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: bad jet order, coordinate index, unknown name, ...
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain (log of a negative value,
/// division by a zero-valued jet, ...). Context such as the expression span
/// or the probe point is appended as the error travels outward.
class DomainError : public Error {
 public:
  DomainError(std::string function, double value, std::string context = {})
      : Error(compose(function, value, context)),
        function_(std::move(function)),
        value_(value),
        context_(std::move(context)) {}

  const std::string& function() const { return function_; }
  double value() const { return value_; }
  const std::string& context() const { return context_; }

  DomainError with_context(const std::string& more) const {
    return DomainError(function_, value_,
                       context_.empty() ? more : context_ + "; " + more);
  }

 private:
  static std::string compose(const std::string& fn, double v,
                             const std::string& ctx) {
    std::string s = "domain error in " + fn + " at value " + std::to_string(v);
    if (!ctx.empty()) s += " (" + ctx + ")";
    return s;
  }

  std::string function_;
  double value_;
  std::string context_;
};

/// Degenerate geometry: singular metric, degenerate plane, vanishing fit model.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double measure)
      : Error(what + " (measure " + std::to_string(measure) + ")"),
        measure_(measure) {}
  double measure() const { return measure_; }

 private:
  double measure_;
};

}  // namespace ctgeo
