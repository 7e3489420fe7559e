#include "cmeis/real.hpp"

#include <cstdio>
#include <vector>

namespace cmeis {

std::string Real::to_string(int digits) const {
    if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (mpfr_sgn(v_) > 0 ? "inf" : "-inf");
    std::vector<char> buf(digits + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

Mag mag_exp(const Mag& x) {
    Mag r;
    mpfr_exp(r.get(), x.get(), MPFR_RNDU);
    return r;
}

Mag mag_expm1(const Mag& x) {
    Mag r;
    mpfr_expm1(r.get(), x.get(), MPFR_RNDU);
    return r;
}

std::string mag_string(const Mag& m, int digits) {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", digits - 1, m.get());
    return buf;
}

} // namespace cmeis
