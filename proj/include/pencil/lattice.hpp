#ifndef PENCIL_LATTICE_HPP
#define PENCIL_LATTICE_HPP

#include <pencil/lattice/e8.hpp>
#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/linear_algebra.hpp>
#include <pencil/lattice/monodromy.hpp>
#include <pencil/lattice/section.hpp>
#include <pencil/lattice/surface.hpp>

#endif
