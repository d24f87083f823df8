#pragma once

#include <stdexcept>
#include <string>

namespace ctflow {

// Base class of every error raised by the library. The CLI maps each
// subclass onto its own exit code (see tools/ctflow.cpp).
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error
{
public:
  using Error::Error;
};

class ShapeError : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

class InvalidStateError : public Error
{
public:
  using Error::Error;
};

class DegenerateInputError : public Error
{
public:
  using Error::Error;
};

class SolverError : public Error
{
public:
  SolverError(const std::string& what, double achieved_residual, int iterations)
    : Error(what), residual_(achieved_residual), iterations_(iterations)
  {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

private:
  double residual_;
  int iterations_;
};

class TimeStepError : public Error
{
public:
  using Error::Error;
};

// Non-finite values appeared during time integration.
class BlowUpError : public Error
{
public:
  using Error::Error;
};

} // namespace ctflow
