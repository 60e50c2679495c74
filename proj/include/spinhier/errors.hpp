#pragma once

#include <stdexcept>
#include <string>

namespace spinhier {

// Dimension / shape disagreement between operands.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside an operation's domain (zero vector, bad spin label, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Base for failures of the floating-point machinery itself.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A matrix expected to be Hermitian is not, beyond tolerance. Also raised
// when power traces of a Hermitian matrix drift off the real axis.
class HermiticityError : public NumericalError {
 public:
  explicit HermiticityError(const std::string& what) : NumericalError(what) {}
};

class ConvergenceError : public NumericalError {
 public:
  explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

// NaN or Inf produced or supplied where finite values are required.
class NonFiniteError : public NumericalError {
 public:
  explicit NonFiniteError(const std::string& what) : NumericalError(what) {}
};

}  // namespace spinhier
