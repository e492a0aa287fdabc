#ifndef PENCIL_CONNECTION_HPP
#define PENCIL_CONNECTION_HPP

#include <pencil/connection/fundamental.hpp>
#include <pencil/connection/mirror.hpp>

#endif
