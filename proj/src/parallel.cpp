// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dwf {

unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("DWORK_FORGE_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1 && static_cast<unsigned long>(cap) < hw) hw = static_cast<unsigned>(cap);
    } catch (...) {
      // unparsable cap: ignore it
    }
  }
  return hw;
}

}  // namespace dwf
