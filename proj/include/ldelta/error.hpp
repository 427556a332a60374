// Copyright 2026 The ldelta Authors.
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

#ifndef LDELTA_ERROR_HPP_
#define LDELTA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ldelta {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Malformed or out-of-range caller input (exit code 1 on the CLI).
  class InputError : public Error {
   public:
    using Error::Error;
  };

  //! A configured size cap was exceeded (exit code 2 on the CLI).
  class ResourceError : public Error {
   public:
    using Error::Error;
  };

  //! A self-check failed; indicates a bug (exit code 3 on the CLI).
  class ConsistencyError : public Error {
   public:
    using Error::Error;
  };

}  // namespace ldelta

#endif  // LDELTA_ERROR_HPP_
