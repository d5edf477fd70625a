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

#include "soab/abstraction_io.h"

#include <filesystem>
#include <fstream>

#include "soab/binary_io.h"
#include "soab/errors.h"

namespace soab {

void WriteAbstractionMap(std::ostream& out, const AbstractionMap& map) {
  out.write("SOAB", 4);
  io::WriteLe<std::uint16_t>(out, kAbstractionFormatVersion);
  io::WriteString16(out, map.game_id());
  io::WriteLe<std::uint8_t>(out, static_cast<std::uint8_t>(map.num_phases()));
  io::WriteLe<std::uint8_t>(out, static_cast<std::uint8_t>(map.index_space()));
  for (int r = 1; r <= map.num_phases(); ++r) {
    io::WriteLe<std::uint32_t>(out, map.bucket_count(r));
    io::WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(map.entries(r).size()));
    for (std::uint32_t b : map.entries(r)) io::WriteLe<std::uint32_t>(out, b);
  }
  if (!out) throw FormatError("write failed");
}

AbstractionMap ReadAbstractionMap(std::istream& in) {
  io::ExpectMagic(in, "SOAB");
  const auto version = io::ReadLe<std::uint16_t>(in);
  if (version != kAbstractionFormatVersion) {
    throw FormatError("unsupported abstraction format version " + std::to_string(version));
  }
  std::string game = io::ReadString16(in);
  const int phases = io::ReadLe<std::uint8_t>(in);
  const auto space = io::ReadLe<std::uint8_t>(in);
  if (space > 1) throw FormatError("unknown index space");
  std::vector<std::vector<std::uint32_t>> buckets(phases);
  std::vector<std::uint32_t> counts(phases);
  for (int r = 0; r < phases; ++r) {
    counts[r] = io::ReadLe<std::uint32_t>(in);
    const auto n = io::ReadLe<std::uint32_t>(in);
    buckets[r].resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      buckets[r][i] = io::ReadLe<std::uint32_t>(in);
      if (buckets[r][i] >= counts[r]) throw FormatError("bucket id exceeds bucket count");
    }
  }
  AbstractionMap map(std::move(game), static_cast<IndexSpace>(space), std::move(buckets));
  for (int r = 1; r <= phases; ++r) {
    if (map.bucket_count(r) != counts[r - 1]) throw FormatError("bucket count does not match entries");
  }
  return map;
}

void SaveAbstractionMap(const std::string& path, const AbstractionMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  WriteAbstractionMap(out, map);
}

AbstractionMap LoadAbstractionMap(const std::string& path) {
  if (!std::filesystem::exists(path)) throw DependencyError("missing abstraction file: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DependencyError("cannot open abstraction file: " + path);
  return ReadAbstractionMap(in);
}

void WriteAbstractionCsv(std::ostream& out, const AbstractionMap& map) {
  out << "phase,index,bucket\n";
  for (int r = 1; r <= map.num_phases(); ++r) {
    const auto& e = map.entries(r);
    for (std::size_t i = 0; i < e.size(); ++i) out << r << ',' << i << ',' << e[i] << '\n';
  }
}

}  // namespace soab
