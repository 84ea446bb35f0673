#pragma once

// Umbrella header: geodesic triangles on rays of C^3 and C^4, their geometric
// phases, and realizations as two-channel element sequences.

#include "sunphase/circuit.hpp"
#include "sunphase/decompose.hpp"
#include "sunphase/errors.hpp"
#include "sunphase/geodesics.hpp"
#include "sunphase/matrix.hpp"
#include "sunphase/matrix_io.hpp"
#include "sunphase/phase.hpp"
#include "sunphase/serialize.hpp"
#include "sunphase/su2.hpp"
