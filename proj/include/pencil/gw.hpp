#ifndef PENCIL_GW_HPP
#define PENCIL_GW_HPP

#include <pencil/gw/bryan_leung.hpp>
#include <pencil/gw/bulk.hpp>
#include <pencil/gw/lambda.hpp>
#include <pencil/gw/psi.hpp>
#include <pencil/gw/sections.hpp>
#include <pencil/gw/z1.hpp>

#endif
