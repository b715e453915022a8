// Copyright 2026 The Aesthia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AESTHIA_ERROR_H_
#define AESTHIA_ERROR_H_

#include <stdexcept>
#include <string>

namespace aesthia {

// Root of the library's exception hierarchy. Every failure surfaced by the
// library derives from this so callers can catch one type at the boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument violates a documented precondition (radius too large, empty
// input, too few samples).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The input is well-formed but the quantity is mathematically undefined for
// it (zero variance, blank binarisation, collinear polygon).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A file or stream could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Bytes were read but do not form a valid document of the expected format.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A codec (JPEG) failed while encoding or decoding.
class EncodingError : public Error {
 public:
  using Error::Error;
};

}  // namespace aesthia

#endif  // AESTHIA_ERROR_H_
