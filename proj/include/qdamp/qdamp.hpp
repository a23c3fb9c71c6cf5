// qdamp.hpp — umbrella header
#pragma once

#include "qdamp/bath_oracle.hpp"
#include "qdamp/coupling.hpp"
#include "qdamp/csv.hpp"
#include "qdamp/dynamics.hpp"
#include "qdamp/errors.hpp"
#include "qdamp/field.hpp"
#include "qdamp/quadrature.hpp"
#include "qdamp/spectra.hpp"
#include "qdamp/transitions.hpp"
