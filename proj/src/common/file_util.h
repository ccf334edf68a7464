// Copyright 2026 The gnndp Authors
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

#ifndef GNNDP_COMMON_FILE_UTIL_H_
#define GNNDP_COMMON_FILE_UTIL_H_

#include <string>

namespace gnndp {

std::string ReadFile(const std::string& path);

// Writes to "<path>.tmp" then renames over path, so readers never observe a
// partially written file. Parent directories are created as needed.
void WriteFileAtomic(const std::string& path, const std::string& contents);

// Lowercase hex SHA-256 of the given bytes.
std::string Sha256Hex(const std::string& bytes);

}  // namespace gnndp

#endif  // GNNDP_COMMON_FILE_UTIL_H_
