#pragma once

#include <stdexcept>
#include <string>

namespace lpf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid network description (disconnected graph, bad edge, wrong lengths).
class ModelError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class SeedConstructionError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what), achieved_error_(achieved) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

// Sturm chain collapsed early: the input is (numerically) not squarefree.
class SturmDegeneracyError : public Error {
 public:
  using Error::Error;
};

class SolverFailureError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpf
