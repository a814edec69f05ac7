// Copyright 2026 The qotsim Authors. All Rights Reserved.
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

#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace qot {

// Alice's two classical bits (x0, x1).
struct BitPair {
  std::uint8_t x0 = 0;
  std::uint8_t x1 = 0;

  std::uint8_t operator[](int i) const { return i == 0 ? x0 : x1; }
  std::string str() const { return std::string{char('0' + x0), char('0' + x1)}; }
  friend bool operator==(const BitPair&, const BitPair&) = default;
};

// The cyclic order 00 -> 01 -> 11 -> 10 in which the symmetric generator
// visits the encoded states.
inline constexpr std::array<BitPair, 4> kCyclicInputs = {
    BitPair{0, 0}, BitPair{0, 1}, BitPair{1, 1}, BitPair{1, 0}};

inline int cyclic_index(BitPair x) {
  for (int k = 0; k < 4; ++k) {
    if (kCyclicInputs[k] == x) return k;
  }
  return -1;
}

}  // namespace qot
