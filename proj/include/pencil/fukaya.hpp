#ifndef PENCIL_FUKAYA_HPP
#define PENCIL_FUKAYA_HPP

#include <pencil/fukaya/products.hpp>

#endif
