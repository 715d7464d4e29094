// Copyright 2026 The wpcone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace wpcone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input: words, regular expressions, group specs, files.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share an alphabet do not.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration ran past its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace wpcone
