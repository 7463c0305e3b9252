#pragma once

#include <cstdint>
#include <stdexcept>

namespace critgraph {

// Vertex index. 0-based everywhere inside the library; all text I/O
// (edge lists, CLI flags, traces) is 1-based and converted at the boundary.
using Vertex = std::uint32_t;

// Thrown when an exact computation would exceed its state budget
// (brute-force oracles, exact walk enumeration).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kCsvSchemaVersion = 1;

}  // namespace critgraph
