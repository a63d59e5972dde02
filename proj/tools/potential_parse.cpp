#include "potential_parse.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace ncqm::cli {

using classical::PolynomialPotential;

namespace {

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("potential: bad number '" + s + "'");
    return v;
}

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// "0.2*z^2*zb^1" -> (coeff, a, b); bare "z" means z^1, leading coeff optional
void parse_monomial(const std::string& mono, double sign, PolynomialPotential& out) {
    double coeff = sign;
    int pa = 0, pb = 0;
    bool saw_anything = false;
    std::stringstream ss(mono);
    std::string piece;
    while (std::getline(ss, piece, '*')) {
        piece = strip(piece);
        if (piece.empty()) throw ConfigError("potential: empty factor in '" + mono + "'");
        if (piece[0] == 'z') {
            const bool is_zb = piece.rfind("zb", 0) == 0;
            const std::size_t name_len = is_zb ? 2 : 1;
            int p = 1;
            if (piece.size() > name_len) {
                if (piece[name_len] != '^')
                    throw ConfigError("potential: bad factor '" + piece + "'");
                p = static_cast<int>(parse_double(piece.substr(name_len + 1)));
                if (p < 0) throw ConfigError("potential: negative power in '" + piece + "'");
            }
            (is_zb ? pb : pa) += p;
        } else {
            coeff *= parse_double(piece);
        }
        saw_anything = true;
    }
    if (!saw_anything) throw ConfigError("potential: empty term");
    out.add_term(pa, pb, coeff);
}

} // namespace

PolynomialPotential parse_potential(const std::string& spec_in) {
    const std::string spec = strip(spec_in);
    PolynomialPotential v;
    if (spec.empty() || spec == "none" || spec == "0") return v;

    if (spec.rfind("harmonic:", 0) == 0)
        return PolynomialPotential::harmonic(parse_double(spec.substr(9)));
    if (spec.rfind("quartic:", 0) == 0)
        return PolynomialPotential::quartic(parse_double(spec.substr(8)));
    if (spec.rfind("aniso:", 0) == 0) {
        const std::string rest = spec.substr(6);
        const std::size_t comma = rest.find(',');
        if (comma == std::string::npos)
            throw ConfigError("potential: aniso needs two coefficients 'aniso:C,B'");
        return PolynomialPotential::anisotropic(parse_double(rest.substr(0, comma)),
                                                parse_double(rest.substr(comma + 1)));
    }

    // sum of monomials; split on +/- at top level
    std::string term;
    double sign = 1.0;
    bool pending = false;
    auto flush = [&]() {
        const std::string t = strip(term);
        if (!t.empty()) {
            parse_monomial(t, sign, v);
            pending = false;
        } else if (pending) {
            throw ConfigError("potential: dangling sign in '" + spec_in + "'");
        }
        term.clear();
    };
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const char c = spec[i];
        const bool is_sign = (c == '+' || c == '-');
        const bool exponent_sign =
            is_sign && i > 0 && (spec[i - 1] == 'e' || spec[i - 1] == 'E' || spec[i - 1] == '^');
        if (is_sign && !exponent_sign) {
            flush();
            sign = (c == '-') ? -1.0 : 1.0;
            pending = true;
        } else {
            term += c;
        }
    }
    flush();
    v.validate();
    return v;
}

} // namespace ncqm::cli
