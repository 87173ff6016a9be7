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

#include "appnest/error.hpp"

namespace appnest {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedDocument: return "MalformedDocument";
    case Errc::EmptyPassphrase: return "EmptyPassphrase";
    case Errc::FileNameTooLong: return "FileNameTooLong";
    case Errc::FileNameHasSeparators: return "FileNameHasSeparators";
    case Errc::IntegrityFailure: return "IntegrityFailure";
    case Errc::MalformedBlob: return "MalformedBlob";
    case Errc::DuplicateNameVersion: return "DuplicateNameVersion";
    case Errc::DuplicateHandle: return "DuplicateHandle";
    case Errc::PermissionDenied: return "PermissionDenied";
    case Errc::UnknownUser: return "UnknownUser";
    case Errc::NotFound: return "NotFound";
    case Errc::Unauthenticated: return "Unauthenticated";
    case Errc::NotAdmin: return "NotAdmin";
    case Errc::NoSuchRequest: return "NoSuchRequest";
    case Errc::DuplicatePending: return "DuplicatePending";
    case Errc::SizeTooLargeForMemory: return "SizeTooLargeForMemory";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::GateFailed: return "GateFailed";
    case Errc::EmptyRecordSet: return "EmptyRecordSet";
    case Errc::NoOverlap: return "NoOverlap";
    case Errc::ParseError: return "ParseError";
    case Errc::StorageError: return "StorageError";
  }
  return "Unknown";
}

}  // namespace appnest
