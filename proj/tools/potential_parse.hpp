#pragma once

#include "ncqm/classical.hpp"

#include <string>

namespace ncqm::cli {

// Potential syntax, either a named form
//   none | harmonic:C | quartic:C | aniso:C,B
// or a sum of monomials with real coefficients
//   "0.2*z^1*zb^1 + 0.15*z^2 - 0.05*zb^3*z^1"
// Each monomial is added together with its hermitian partner, so the result
// is always a real potential. Throws ConfigError on malformed input.
classical::PolynomialPotential parse_potential(const std::string& spec);

} // namespace ncqm::cli
