#pragma once

#include <cstdint>
#include <vector>

#include "diffalg/structure.hpp"

namespace diffalg {

/// f = standard_part + sigma(certificate_g) - twist_a * certificate_g
struct StandardDecomp {
    DiffStructure structure;
    Rat twist_a;
    RatFun standard_part;
    RatFun certificate_g;
};

/// f = standard_part * sigma(certificate_g) / certificate_g
struct MultStandardForm {
    DiffStructure structure;
    RatFun standard_part;
    RatFun certificate_g;
};

/// Every h >= 0 for which a(x) and sigma^h(b)(x) share a root (nonzero
/// roots only in the q case), ascending. No factorisation: candidates come
/// from a root-modulus window filtered modulo a large prime, or from the
/// integer roots of a resultant when the window is too wide, and each is
/// confirmed by an exact gcd.
std::vector<std::int64_t> shift_set(const DiffStructure& ds, const Poly& a, const Poly& b);

std::int64_t dispersion(const DiffStructure& ds, const Poly& Q);
std::int64_t polar_dispersion(const DiffStructure& ds, const RatFun& f);
bool is_standard(const DiffStructure& ds, const RatFun& f);

StandardDecomp additive_standard_decomp(const DiffStructure& ds, const RatFun& f, const Rat& a);
MultStandardForm multiplicative_standard_form(const DiffStructure& ds, const RatFun& f);

/// Part of p (with full multiplicity) whose roots are roots of g; monic.
Poly saturate_part(const Poly& p, const Poly& g);

} // namespace diffalg
