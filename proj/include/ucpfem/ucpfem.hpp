#pragma once

// Convenience umbrella for the whole library.

#include "ucpfem/assembly.hpp"
#include "ucpfem/generators.hpp"
#include "ucpfem/graph.hpp"
#include "ucpfem/io.hpp"
#include "ucpfem/mesh.hpp"
#include "ucpfem/rng.hpp"
#include "ucpfem/spectra.hpp"
#include "ucpfem/tolerances.hpp"
