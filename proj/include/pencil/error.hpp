#ifndef PENCIL_ERROR_HPP
#define PENCIL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pencil
{

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mixing coefficient rings (rational vs cyclotomic, or cyclotomic fields of different order).
struct ring_mismatch_error : error {
    using error::error;
};

struct division_by_zero_error : error {
    using error::error;
};

// A root of unity whose order does not divide the ambient cyclotomic order.
struct unsupported_order_error : error {
    using error::error;
};

// Precondition violation of a series operation (exp of a non-positive valuation series etc.).
struct domain_error : error {
    using error::error;
};

struct grain_error : error {
    using error::error;
};

// An identity that must hold by construction failed: an upstream bug.
struct consistency_error : error {
    using error::error;
};

struct singular_connection_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

} // namespace pencil

#endif
