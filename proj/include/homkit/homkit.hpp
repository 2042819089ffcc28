#pragma once

// Umbrella header: the whole library.

#include "ring.hpp"        // IWYU pragma: export
#include "matrix.hpp"      // IWYU pragma: export
#include "smith.hpp"       // IWYU pragma: export
#include "module.hpp"      // IWYU pragma: export
#include "complex.hpp"     // IWYU pragma: export
#include "homotopy.hpp"    // IWYU pragma: export
#include "diagram.hpp"     // IWYU pragma: export
#include "resolution.hpp"  // IWYU pragma: export
#include "tor.hpp"         // IWYU pragma: export
#include "simplicial.hpp"  // IWYU pragma: export
#include "json_io.hpp"     // IWYU pragma: export
