#pragma once

// Umbrella header: classification of k-plane families on complete
// intersections plus exact verification machinery over small prime
// fields.

#include "fano/classifier.hpp"
#include "fano/errors.hpp"
#include "fano/grassmann.hpp"
#include "fano/integers.hpp"
#include "fano/json_io.hpp"
#include "fano/linalg.hpp"
#include "fano/mpoly.hpp"
#include "fano/prime_field.hpp"
#include "fano/verifier.hpp"
