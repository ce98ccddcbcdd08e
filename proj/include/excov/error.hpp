/*
   Copyright 2026 The excov Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef EXCOV_ERROR_HPP
#define EXCOV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace excov {

/// Base of all library errors. The CLI maps the concrete kinds to exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed spec strings, violated preconditions. Exit code 2.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A configured size cap (field size, group order, letter count) would be exceeded. Exit code 3.
class CapExceeded : public Error {
  public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a construction bug. Exit code 4.
class InvariantFailure : public Error {
  public:
    using Error::Error;
};

/// Input outside the supported mathematical range (e.g. wild ramification).
class Unsupported : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

}  // namespace excov

#endif
