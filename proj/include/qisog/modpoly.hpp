#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "qisog/numth.hpp"

namespace qisog {

// Classical modular polynomial; coefficients of X^a Y^b stored for a >= b.
struct ModPoly {
    i64 ell = 0;
    std::map<std::pair<int, int>, mpz_class> coeffs;

    mpz_class coefficient(int a, int b) const;
    int degree() const { return static_cast<int>(ell + 1); }
};

ModPoly parse_modpoly(const std::string& text);
// Degree, monicity, symmetry of the file and the congruence
// Phi = (X^ell - Y)(X - Y^ell) mod ell.  Throws PreconditionError on failure.
void validate_modpoly(const ModPoly& phi);

std::string modpoly_dir();
ModPoly load_modpoly(i64 ell, const std::optional<std::string>& dir = std::nullopt);

} // namespace qisog
