#pragma once

#include <stdexcept>

namespace mtf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidForest : public Error {
 public:
  using Error::Error;
};

class InvalidCoding : public Error {
 public:
  using Error::Error;
};

class LevelNotReached : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class RegimeError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtf
