#pragma once

#include <stdexcept>
#include <string>

namespace stark {

// Error classes map to CLI exit codes:
//   1 = property-check failure, 2 = input error, 3 = region/step failure.
enum class ErrorClass { Property = 1, Input = 2, Region = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorClass::Input, w) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w) : Error(ErrorClass::Input, w) {}
};

struct NotSkewHermitian : Error {
  explicit NotSkewHermitian(const std::string& w) : Error(ErrorClass::Input, w) {}
};

struct DiscriminantNegative : Error {
  explicit DiscriminantNegative(const std::string& w) : Error(ErrorClass::Region, w) {}
};

struct NotStark : Error {
  explicit NotStark(const std::string& w) : Error(ErrorClass::Input, w) {}
};

struct ToleranceBreach : Error {
  ToleranceBreach(const std::string& stage_, double residual_)
      : Error(ErrorClass::Property,
              "tolerance breach at " + stage_ + ", residual " + std::to_string(residual_)),
        stage(stage_),
        residual(residual_) {}
  std::string stage;
  double residual;
};

struct OutsideCanonicalPatch : Error {
  explicit OutsideCanonicalPatch(const std::string& w) : Error(ErrorClass::Region, w) {}
};

struct OutsideValidRegion : Error {
  OutsideValidRegion(const std::string& w, double x_, double y_)
      : Error(ErrorClass::Region,
              w + " at (x, y) = (" + std::to_string(x_) + ", " + std::to_string(y_) + ")"),
        x(x_),
        y(y_) {}
  double x, y;
};

struct UDegenerate : Error {
  explicit UDegenerate(const std::string& w) : Error(ErrorClass::Region, w) {}
};

struct MuZero : Error {
  explicit MuZero(const std::string& w) : Error(ErrorClass::Region, w) {}
};

struct StepUnderflow : Error {
  explicit StepUnderflow(const std::string& w) : Error(ErrorClass::Region, w) {}
};

struct NonUnitaryDrift : Error {
  explicit NonUnitaryDrift(const std::string& w) : Error(ErrorClass::Property, w) {}
};

// The closure invariant A^3/B^2 is infinite when B vanishes; the parts are
// carried so callers can report them separately.
struct BZero : Error {
  BZero(double a_cubed_, double b_)
      : Error(ErrorClass::Region, "A^3/B^2 undefined: B = " + std::to_string(b_) +
                                      ", A^3 = " + std::to_string(a_cubed_)),
        a_cubed(a_cubed_),
        b(b_) {}
  double a_cubed, b;
};

}  // namespace stark
