/* Copyright 2026 The specoct Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <stdexcept>
#include <string>

namespace specoct {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for malformed configuration files or invalid parameter values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IllPosedTarget : public Error {
 public:
  using Error::Error;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

class FilterError : public Error {
 public:
  using Error::Error;
};

// The propagation basis does not hold the populated rotational levels.
class BasisTooSmall : public Error {
 public:
  using Error::Error;
};

class MonotonicityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace specoct
