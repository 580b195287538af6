// Copyright 2026 The ieat Authors
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

#ifndef IEAT_ERROR_HPP_
#define IEAT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ieat {

// Mirrors ieat_status in ieat.h; the numeric values are part of the C ABI.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kValidation = 4,
  kDegenerate = 5,
  kNotFound = 6,
  kSizeMismatch = 7,
  kLimitExceeded = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* ErrorCodeName(ErrorCode code) noexcept;

}  // namespace ieat

#endif  // IEAT_ERROR_HPP_
