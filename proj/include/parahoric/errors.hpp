#pragma once

#include <stdexcept>
#include <string>

namespace parahoric {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class IllegalRank : public Error {
public:
  using Error::Error;
};

class NotDominant : public Error {
public:
  using Error::Error;
};

class DatumMismatch : public Error {
public:
  using Error::Error;
};

class NotPrime : public Error {
public:
  using Error::Error;
};

/// A certificate rule or Ext identification was asked for outside the
/// range where its hypotheses are known to hold.
class HypothesisUnmet : public Error {
public:
  using Error::Error;
};

} // namespace parahoric
