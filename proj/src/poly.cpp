#include "classrank/poly.hpp"

#include <sstream>

namespace classrank {

Rat content(const PolyQ& p) {
    if (p.is_zero()) return Rat(0);
    Int g = 0, l = 1;
    for (const auto& a : p.c) {
        if (a == 0) continue;
        g = gcd(g, num(a));
        l = lcm(l, den(a));
    }
    return make_rat(g, l);
}

PolyQ primitive_part(const PolyQ& p) {
    if (p.is_zero()) return p;
    Rat c = content(p);
    PolyQ r = p.scaled(Rat(1) / c);
    if (r.lc() < 0) r = -r;
    return r;
}

PolyQ parse_poly(const std::vector<std::string>& coeffs) {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(parse_rat(s));
    return PolyQ(std::move(c));
}

std::vector<std::string> poly_strs(const PolyQ& p) {
    std::vector<std::string> out;
    out.reserve(p.c.size());
    for (const auto& a : p.c) out.push_back(rat_str(a));
    return out;
}

std::string poly_pretty(const PolyQ& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.c.size(); i-- > 0;) {
        const Rat& a = p.c[i];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        Rat mag = abs(a);
        if (mag != 1 || i == 0) os << rat_str(mag);
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace classrank
