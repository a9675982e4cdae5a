#pragma once

#include <optional>

#include "nilorbit/counter.hpp"

namespace nilorbit::tables {

// Reference class-number polynomials k(U(q)) in v = q-1 for rank <= 5.
// B_r and C_r share the same polynomial. nullopt for uncatalogued cases.
std::optional<ClassPolynomial> class_number(char type, int rank);

// Reference k(U(q), U^(l)(q)) for the exceptional types and the catalogued l.
std::optional<ClassPolynomial> subquotient_class_number(char type, int rank, int l);

}  // namespace nilorbit::tables
