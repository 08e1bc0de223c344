#pragma once

#include <optional>
#include <random>
#include <stdexcept>

#include "rootgeo/closed_forms.hpp"
#include "rootgeo/rational.hpp"
#include "rootgeo/sequence.hpp"

// Deterministic random generators for the property suites. Heights are kept
// small so exact coefficient growth stays cheap at the tested degrees.
namespace testsupport {

using rootgeo::FamilyTag;
using rootgeo::GuaranteeKind;
using rootgeo::Rational;
using rootgeo::RecurrenceParams;

inline Rational rand_positive(std::mt19937_64& rng, long max_num = 6, long max_den = 4) {
    std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Rational rand_signed(std::mt19937_64& rng, long max_num = 9, long max_den = 5) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline RecurrenceParams rand_params(std::mt19937_64& rng) {
    return RecurrenceParams(rand_positive(rng), rand_positive(rng), rand_positive(rng),
                            rand_positive(rng));
}

// ad < bc (strict) or ad = bc (equal), by rejection / construction.
inline RecurrenceParams rand_params_real_rooted(std::mt19937_64& rng, bool strict) {
    for (int tries = 0; tries < 100000; ++tries) {
        Rational a = rand_positive(rng), b = rand_positive(rng), c = rand_positive(rng);
        if (!strict) return RecurrenceParams(a, b, c, b * c / a);
        Rational d = rand_positive(rng);
        if ((a * d - b * c).sign() < 0) return RecurrenceParams(a, b, c, d);
    }
    throw std::logic_error("rand_params_real_rooted: sampling failed");
}

inline RecurrenceParams rand_params_gt(std::mt19937_64& rng) {
    for (int tries = 0; tries < 100000; ++tries) {
        RecurrenceParams p = rand_params(rng);
        if (p.regime() > 0) return p;
    }
    throw std::logic_error("rand_params_gt: sampling failed");
}

// Families with ad > bc whose real-zero guarantee comes from the stated kind.
// Built constructively: a > 2, c around a b/(a-2), and d inside
// (bc/a, (c^2+abc)/a^2) so that ad > bc while delta_delta > 0; the exact
// classifier is the acceptance filter.
inline std::optional<RecurrenceParams> try_rand_guaranteed(std::mt19937_64& rng,
                                                           GuaranteeKind want) {
    std::uniform_int_distribution<long> coarse(1, 12), fine(1, 9);
    Rational a = Rational(2) + Rational(coarse(rng), 2);
    Rational b(fine(rng), 4);
    Rational c_crit = a * b / (a - Rational(2));
    Rational c = want == GuaranteeKind::two_zeros_outside
                     ? c_crit * (Rational(1) + Rational(coarse(rng), 6))
                     : c_crit * (Rational(1) + Rational(coarse(rng) - 6, 24));
    if (c.sign() <= 0) return std::nullopt;
    Rational d_lo = b * c / a;
    Rational d_hi = (c * c + a * b * c) / (a * a);
    Rational frac = want == GuaranteeKind::two_zeros_outside ? Rational(coarse(rng) + 11, 24)
                                                             : Rational(coarse(rng), 24);
    Rational d = d_lo + (d_hi - d_lo) * frac;
    if (d.sign() <= 0) return std::nullopt;
    RecurrenceParams p(a, b, c, d);
    auto cls = rootgeo::classify_family(p);
    if (cls.tag == FamilyTag::nonreal_guaranteed_real_zero && cls.guarantee == want) return p;
    return std::nullopt;
}

inline RecurrenceParams rand_params_guaranteed(std::mt19937_64& rng, GuaranteeKind want) {
    for (int tries = 0; tries < 100000; ++tries)
        if (auto p = try_rand_guaranteed(rng, want)) return *p;
    throw std::logic_error("rand_params_guaranteed: sampling failed");
}

}  // namespace testsupport
