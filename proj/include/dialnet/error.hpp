#pragma once

#include <stdexcept>
#include <string>

namespace dialnet {

/// Base of every exception the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad degree text, schema violations in JSON artifacts.
struct ParseError : Error {
  using Error::Error;
};

struct DegreeError : ParseError {
  using ParseError::ParseError;
};

/// A materialized carrier would exceed the configured cap.
struct ResourceLimit : Error {
  using Error::Error;
};

struct DomainMismatch : Error {
  using Error::Error;
};

struct NotInDomain : Error {
  using Error::Error;
};

/// Maps whose endpoints disagree with the objects they are meant to relate.
struct CarrierMismatch : Error {
  using Error::Error;
};

/// Morphisms that do not compose, or a construction applied to the wrong shape.
struct EndpointMismatch : Error {
  using Error::Error;
};

/// A map pair that fails the morphism inequality.
struct InvalidMorphism : Error {
  using Error::Error;
};

struct InvalidFrame : Error {
  using Error::Error;
};

struct InvalidSystem : Error {
  using Error::Error;
};

struct UnknownOpen : Error {
  using Error::Error;
};

struct NonBinaryEntry : Error {
  using Error::Error;
};

struct UnknownEvent : Error {
  using Error::Error;
};

}  // namespace dialnet
