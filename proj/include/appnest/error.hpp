// Copyright 2026 The appnest Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace appnest {

enum class Errc {
  InvalidArgument,
  MalformedDocument,
  EmptyPassphrase,
  FileNameTooLong,
  FileNameHasSeparators,
  IntegrityFailure,
  MalformedBlob,
  DuplicateNameVersion,
  DuplicateHandle,
  PermissionDenied,
  UnknownUser,
  NotFound,
  Unauthenticated,
  NotAdmin,
  NoSuchRequest,
  DuplicatePending,
  SizeTooLargeForMemory,
  SingularMatrix,
  GateFailed,
  EmptyRecordSet,
  NoOverlap,
  ParseError,
  StorageError,
};

std::string_view to_string(Errc code) noexcept;

// Every recoverable failure in the library is reported as an Error carrying
// a machine-readable code. The message never contains secret material.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  explicit Error(Errc code) : Error(code, std::string(to_string(code))) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace appnest
