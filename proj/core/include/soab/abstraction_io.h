// Copyright 2026 The SOAB Authors
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

#ifndef SOAB_ABSTRACTION_IO_H_
#define SOAB_ABSTRACTION_IO_H_

#include <iosfwd>
#include <string>

#include "soab/abstraction_map.h"

namespace soab {

inline constexpr std::uint16_t kAbstractionFormatVersion = 1;

// Binary layout, little-endian: "SOAB", u16 version, u16-prefixed game id,
// u8 phase count, u8 index space, then per phase u32 bucket count, u32 entry
// count and one u32 bucket id per entry.
void WriteAbstractionMap(std::ostream& out, const AbstractionMap& map);
AbstractionMap ReadAbstractionMap(std::istream& in);
void SaveAbstractionMap(const std::string& path, const AbstractionMap& map);
AbstractionMap LoadAbstractionMap(const std::string& path);  // DependencyError if absent

// `phase,index,bucket` rows with a header line.
void WriteAbstractionCsv(std::ostream& out, const AbstractionMap& map);

}  // namespace soab

#endif  // SOAB_ABSTRACTION_IO_H_
