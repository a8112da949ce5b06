// Copyright 2026 The gts Authors.
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

#ifndef GTS_INSTANCE_IO_HPP_
#define GTS_INSTANCE_IO_HPP_

#include <string>
#include <string_view>

#include "gts/graph.hpp"

namespace gts {

// Parses the line oriented instance format:
//
//   p gts <n> <k>
//   n <id> P|B
//   e <u> <v>
//   s <id> <w>
//   t <id> <w>
//   r <id> <clockwise neighbors...>
//
// The vertex set is {1..n} unless exactly n `n` lines are given, in which
// case the declared ids are the vertex set (reduced instances keep sparse
// ids). Throws ParseError on syntax errors and Error(kMalformedConfig) for
// invalid token placements.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);

// Writes every vertex explicitly, so sparse ids round-trip.
std::string serialize_instance(const Instance& inst);

}  // namespace gts

#endif  // GTS_INSTANCE_IO_HPP_
