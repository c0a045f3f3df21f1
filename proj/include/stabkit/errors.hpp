// Copyright 2026 The stabkit Authors
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

#ifndef STABKIT_ERRORS_HPP_
#define STABKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace stabkit {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value is out of range or malformed.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// Two objects that must share a qubit count do not.
class DimensionMismatch : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

/// A size or iteration cap of the engine was hit.
class CapExceeded : public Error {
   public:
    using Error::Error;
};

/// An identity that holds as a theorem failed numerically. Always a bug or a
/// solver that did not converge far enough.
class CertificateViolation : public Error {
   public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string &what) {
    if (!cond) {
        throw InvalidArgument(what);
    }
}

}  // namespace detail
}  // namespace stabkit

#endif  // STABKIT_ERRORS_HPP_
