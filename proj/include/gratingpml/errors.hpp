// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_ERRORS_HPP
#define GRATINGPML_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gratingpml
{

// Base class for every error raised by the library. The CLI maps subclasses to
// exit codes: configuration problems exit with 2, numerical failures with 3.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Physical or numerical parameter outside its admissible domain.
class ParameterError : public Error
{
public:
  using Error::Error;
};

// |alpha_n| coincides with a wavenumber (Wood anomaly).
class ResonanceError : public ParameterError
{
public:
  ResonanceError(int species, int order, const std::string &msg)
    : ParameterError(msg), species_(species), order_(order)
  {
  }
  int species() const { return species_; }
  int order() const { return order_; }

private:
  int species_;
  int order_;
};

// PML parameters outside the regime where the layer DtN operator is defined.
class RegimeError : public ParameterError
{
public:
  using ParameterError::ParameterError;
};

class UnreachableTargetError : public ParameterError
{
public:
  using ParameterError::ParameterError;
};

class GeometryError : public Error
{
public:
  using Error::Error;
};

class PairingError : public GeometryError
{
public:
  using GeometryError::GeometryError;
};

class AssemblyError : public Error
{
public:
  using Error::Error;
};

class SolverError : public Error
{
public:
  using Error::Error;
};

class TraceError : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

}  // namespace gratingpml

#endif  // GRATINGPML_ERRORS_HPP
