/*
 * Copyright 2026 The bayes-attrib Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace bayes_attrib {

enum class ErrorKind {
  kInvalidArgument,  // bad flag, unknown label, precondition violated by the caller
  kIo,               // missing file, unwritable output
  kFormat,           // malformed CSV / model file, version mismatch
  kDomain,           // numerically undefined request (zero-sum normalize, fully tied tau, ...)
  kVerification,     // an oracle check exceeded its tolerance
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace bayes_attrib
