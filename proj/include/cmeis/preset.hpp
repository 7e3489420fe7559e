#pragma once
// CM curve presets: field, Hecke character, short Weierstrass model and the
// real period Omega with L = Omega * O_K the wp-lattice of the curve.
#include "cmeis/lattice.hpp"

#include <string>

namespace cmeis {

struct Preset {
    std::string name;
    ImagQuadField K;
    HeckeCharacter psi;
    mpq_class a4, a6;        // y^2 = x^3 + a4 x + a6
    std::string period_hint;
    OKElem alpha;            // auxiliary ideal for Theta, prime to 6f

    APComplex omega(Prec p) const;  // real period, validated against the curve's g2, g3
    Lattice lattice(Prec p) const { return Lattice::cm(K, omega(p)); }
    mpz_class disc() const;         // -16(4a4^3 + 27a6^2)
};

// name ("qi", "d7", "d3") looks in the shipped preset directory; anything else is a path
Preset load_preset(const std::string& name_or_path);
Preset parse_preset(const std::string& json_text);
std::string preset_dir();

// #E(F_p) = p + 1 - a_p for the preset model (p of good reduction)
long curve_ap(const Preset& P, long p);
// trace of psi on a prime above p (0 when p is inert)
long hecke_ap(const Preset& P, long p);

} // namespace cmeis
