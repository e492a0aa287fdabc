#ifndef PENCIL_MODULAR_HPP
#define PENCIL_MODULAR_HPP

#include <pencil/modular/eta.hpp>
#include <pencil/modular/theta.hpp>

#endif
