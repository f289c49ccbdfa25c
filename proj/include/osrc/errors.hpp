#ifndef OSRC_ERRORS_HPP
#define OSRC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace osrc
{

// Base class for every failure that maps to a domain error (CLI exit code 1).
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error
{
public:
  using Error::Error;
};

class OrderError : public Error
{
public:
  using Error::Error;
};

class ParameterError : public Error
{
public:
  using Error::Error;
};

class SingularEvaluationError : public Error
{
public:
  SingularEvaluationError(const std::string &what, int index) : Error(what), index_(index) {}
  int Index() const { return index_; }

private:
  int index_;
};

class SingularModeError : public Error
{
public:
  using Error::Error;
};

class TopologyError : public Error
{
public:
  using Error::Error;
};

class FormatError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

class DimensionError : public Error
{
public:
  using Error::Error;
};

class FactorizationError : public Error
{
public:
  using Error::Error;
};

class SolverError : public Error
{
public:
  using Error::Error;
};

// Bad command line or configuration input (CLI exit code 2).
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace osrc

#endif  // OSRC_ERRORS_HPP
