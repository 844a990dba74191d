#pragma once

// Umbrella header.

#include "dense_set.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "field.hpp"
#include "invariant.hpp"
#include "modular.hpp"
#include "ntt.hpp"
#include "oracle.hpp"
#include "spectra.hpp"
#include "sweep.hpp"
#include "verdict.hpp"
#include "verifier.hpp"
