#pragma once

#include <cstdint>

namespace qspec {

// Resource caps. Exceeding a cap raises Error("TooLarge", ...), never a
// silent truncation.
struct Caps {
  std::uint64_t elementCap = 100000;   // elements enumerated per ring/module
  std::uint64_t submoduleCap = 10000;  // submodules explored per lattice sweep
};

Caps& caps();

}  // namespace qspec
