#include "qisog/modpoly.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qisog/error.hpp"

#ifndef QISOG_DEFAULT_MODPOLY_DIR
#define QISOG_DEFAULT_MODPOLY_DIR "data/modpoly"
#endif

namespace qisog {

mpz_class ModPoly::coefficient(int a, int b) const
{
    if (a < b) std::swap(a, b);
    auto it = coeffs.find({a, b});
    return it == coeffs.end() ? mpz_class(0) : it->second;
}

ModPoly parse_modpoly(const std::string& text)
{
    std::istringstream in(text);
    std::string tag;
    ModPoly phi;
    require(static_cast<bool>(in >> tag >> phi.ell) && tag == "ell", "modpoly: missing 'ell' header");
    std::string line;
    std::getline(in, line);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        int a, b;
        std::string c;
        if (!(ls >> a)) continue;
        require(static_cast<bool>(ls >> b >> c), "modpoly: malformed line " + std::to_string(lineno));
        mpz_class v;
        require(v.set_str(c, 10) == 0, "modpoly: bad coefficient on line " + std::to_string(lineno));
        require(a >= 0 && b >= 0, "modpoly: negative exponent on line " + std::to_string(lineno));
        std::pair<int, int> k{std::max(a, b), std::min(a, b)};
        auto it = phi.coeffs.find(k);
        if (it != phi.coeffs.end())
            require(it->second == v, "modpoly: asymmetric coefficient on line " + std::to_string(lineno));
        else
            phi.coeffs[k] = v;
    }
    return phi;
}

void validate_modpoly(const ModPoly& phi)
{
    const i64 l = phi.ell;
    require(is_prime(l), "modpoly: ell is not prime");
    const int n = phi.degree();
    for (const auto& [k, v] : phi.coeffs)
        require(k.first <= n, "modpoly: degree exceeds ell + 1");
    require(phi.coefficient(n, 0) == 1, "modpoly: not monic of degree ell + 1");
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= a; ++b) {
            i64 expect = 0;
            if ((a == n && b == 0)) expect = 1;
            if (a == l && b == l) expect = -1;
            if (a == 1 && b == 1) expect = -1;
            mpz_class d = phi.coefficient(a, b) - expect;
            require(mpz_divisible_ui_p(d.get_mpz_t(), l) != 0,
                    "modpoly: Kronecker congruence fails at X^" + std::to_string(a) + "Y^" + std::to_string(b));
        }
}

std::string modpoly_dir()
{
    if (const char* env = std::getenv("QISOG_MODPOLY_DIR"); env && *env) return env;
    return QISOG_DEFAULT_MODPOLY_DIR;
}

ModPoly load_modpoly(i64 ell, const std::optional<std::string>& dir)
{
    std::string path = dir.value_or(modpoly_dir()) + "/phi_" + std::to_string(ell) + ".txt";
    std::ifstream in(path);
    require(static_cast<bool>(in), "modular polynomial for ell = " + std::to_string(ell) + " not found at " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    ModPoly phi = parse_modpoly(ss.str());
    require(phi.ell == ell, "modpoly: file " + path + " declares a different ell");
    validate_modpoly(phi);
    return phi;
}

} // namespace qisog
