#pragma once

#include <stdexcept>
#include <string>

namespace nassc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class UnsupportedGate : public Error {
 public:
  explicit UnsupportedGate(const std::string& name, int line = 0)
      : Error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
              "unsupported gate '" + name + "'"),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define NASSC_DEFINE_ERROR(Name)  \
  class Name : public Error {     \
   public:                        \
    using Error::Error;           \
  };

NASSC_DEFINE_ERROR(InvalidCircuit)
NASSC_DEFINE_ERROR(UndecomposedSwap)
NASSC_DEFINE_ERROR(TooManyQubits)
NASSC_DEFINE_ERROR(MeasurementUnsupported)
NASSC_DEFINE_ERROR(InvalidSize)
NASSC_DEFINE_ERROR(DisconnectedGraph)
NASSC_DEFINE_ERROR(MissingEdgeData)
NASSC_DEFINE_ERROR(NotUnitary)
NASSC_DEFINE_ERROR(SynthesisResidual)
NASSC_DEFINE_ERROR(TooFewPhysicalQubits)
NASSC_DEFINE_ERROR(NonTermination)
NASSC_DEFINE_ERROR(ConfigError)

#undef NASSC_DEFINE_ERROR

}  // namespace nassc
