#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootgeo/errors.hpp"
#include "rootgeo/poly.hpp"
#include "rootgeo/quadext.hpp"
#include "rootgeo/sequence.hpp"

namespace rootgeo {

enum class Sign { minus, plus };

// The structural polynomials attached to a parameter set:
//   A(z) = a z + b,  B(z) = c z + d,
//   Delta(z) = A(z)^2 + 4 B(z) = a^2 z^2 + (2ab + 4c) z + (b^2 + 4d),
//   g(z) = (1 - a) z^2 - (b + c) z - d,
//   h(z) = (2 - a) z - b.
inline RatPoly poly_Delta(const RecurrenceParams& p) {
    return RatPoly{p.b * p.b + Rational(4) * p.d, Rational(2) * p.a * p.b + Rational(4) * p.c,
                   p.a * p.a};
}

inline RatPoly poly_g(const RecurrenceParams& p) {
    return RatPoly{-p.d, -(p.b + p.c), Rational(1) - p.a};
}

inline RatPoly poly_h(const RecurrenceParams& p) { return RatPoly{-p.b, Rational(2) - p.a}; }

// Every closed-form quantity derived from (a, b, c, d). Fields that do not
// exist in the given parameter regime are left empty, never filled with
// sentinels.
struct CriticalPoints {
    Rational x_A;        // -b/a, zero of A
    Rational x_B;        // -d/c, zero of B
    Rational delta_delta;  // -a^2 d + a b c + c^2, discriminant quantity of Delta
    Rational delta_g;      // (b+c)^2 + 4 d (1-a), discriminant of g

    std::optional<QuadExt> x_delta_minus, x_delta_plus;  // zeros of Delta (delta_delta >= 0)
    std::optional<QuadExt> x_g_minus, x_g_plus;          // zeros of g (delta_g >= 0)
    std::optional<Rational> x_h;                         // b/(2-a), zero of h, absent when a = 2

    std::optional<QuadExt> h_at_xd_minus, h_at_xd_plus;
    std::optional<QuadExt> n_minus, n_plus;  // -A(x_delta^-+)/h(x_delta^-+), when h there != 0

    std::optional<QuadExt> u, v;  // outer comparison points: u = x_delta^- (a<=2) else x_g^-,
                                  //                          v = x_g^- (a<=1) else x_g^+
};

inline CriticalPoints characteristic_data(const RecurrenceParams& p) {
    CriticalPoints cp;
    cp.x_A = -p.b / p.a;
    cp.x_B = -p.d / p.c;
    cp.delta_delta = -p.a * p.a * p.d + p.a * p.b * p.c + p.c * p.c;
    cp.delta_g = (p.b + p.c) * (p.b + p.c) + Rational(4) * p.d * (Rational(1) - p.a);

    if (cp.delta_delta.sign() >= 0) {
        Rational a2 = p.a * p.a;
        Rational base = (-p.a * p.b - Rational(2) * p.c) / a2;
        Rational scale = Rational(2) / a2;
        cp.x_delta_minus = QuadExt(base, -scale, cp.delta_delta);
        cp.x_delta_plus = QuadExt(base, scale, cp.delta_delta);

        RatPoly h = poly_h(p);
        cp.h_at_xd_minus = poly_eval(h, *cp.x_delta_minus);
        cp.h_at_xd_plus = poly_eval(h, *cp.x_delta_plus);
        RatPoly A = p.A();
        if (cp.h_at_xd_minus->sign() != 0)
            cp.n_minus = -poly_eval(A, *cp.x_delta_minus) / *cp.h_at_xd_minus;
        if (cp.h_at_xd_plus->sign() != 0)
            cp.n_plus = -poly_eval(A, *cp.x_delta_plus) / *cp.h_at_xd_plus;
    }

    if (cp.delta_g.sign() >= 0) {
        if (p.a == Rational(1)) {
            QuadExt both(-p.d / (p.b + p.c));
            cp.x_g_minus = both;
            cp.x_g_plus = both;
        } else {
            Rational mid = (p.b + p.c) / (Rational(2) * (Rational(1) - p.a));
            Rational scale = Rational(1) / (Rational(2) * (Rational(1) - p.a).abs());
            cp.x_g_minus = QuadExt(mid, -scale, cp.delta_g);
            cp.x_g_plus = QuadExt(mid, scale, cp.delta_g);
        }
    }

    if (p.a != Rational(2)) cp.x_h = p.b / (Rational(2) - p.a);

    if (p.a <= Rational(2)) {
        if (cp.x_delta_minus) cp.u = cp.x_delta_minus;
    } else if (cp.x_g_minus) {
        cp.u = cp.x_g_minus;
    }
    if (p.a <= Rational(1)) {
        if (cp.x_g_minus) cp.v = cp.x_g_minus;
    } else if (cp.x_g_plus) {
        cp.v = cp.x_g_plus;
    }
    return cp;
}

// Integer ceiling of max(n^-, n^+, 1) from the exact critical data; the onset
// threshold for families that guarantee an eventual real zero.
inline long guarantee_threshold(const CriticalPoints& cp) {
    QuadExt best(Rational(1));
    if (cp.n_minus && *cp.n_minus > best) best = *cp.n_minus;
    if (cp.n_plus && *cp.n_plus > best) best = *cp.n_plus;
    mpz_class n = best.ceil();
    return static_cast<long>(n.get_si());
}

enum class FamilyTag {
    real_rooted_strict,          // ad < bc: every W_n real-rooted, simple zeros
    real_rooted_equal,           // ad = bc: real-rooted with the repeated zero x_A
    nonreal_guaranteed_real_zero,  // ad > bc but W_n has a real zero for n past a threshold
    nonreal_no_guarantee,          // ad > bc, no real-zero guarantee applies
};

// Which eventual-real-zero statement backs the guarantee.
enum class GuaranteeKind {
    two_zeros_outside,   // h(x_delta^+) > 0: two distinct zeros beside [x_delta^-, x_delta^+]
    zero_between,        // h(x_delta^+) < 0 < h(x_delta^-): a zero inside (x_delta^-, x_delta^+)
};

struct FamilyClass {
    FamilyTag tag;
    std::optional<long> threshold_N;          // only for nonreal_guaranteed_real_zero
    std::optional<GuaranteeKind> guarantee;   // likewise
};

inline const char* family_tag_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::real_rooted_strict: return "RealRootedStrict";
        case FamilyTag::real_rooted_equal: return "RealRootedEqual";
        case FamilyTag::nonreal_guaranteed_real_zero: return "NonRealGuaranteedRealZero";
        case FamilyTag::nonreal_no_guarantee: return "NonRealNoGuarantee";
    }
    return "?";
}

inline FamilyClass classify_family(const RecurrenceParams& p) {
    int regime = p.regime();
    if (regime < 0) return {FamilyTag::real_rooted_strict, {}, {}};
    if (regime == 0) return {FamilyTag::real_rooted_equal, {}, {}};
    CriticalPoints cp = characteristic_data(p);
    if (cp.h_at_xd_plus && cp.h_at_xd_plus->sign() > 0)
        return {FamilyTag::nonreal_guaranteed_real_zero, guarantee_threshold(cp),
                GuaranteeKind::two_zeros_outside};
    if (cp.h_at_xd_minus && cp.h_at_xd_minus->sign() > 0 && cp.h_at_xd_plus->sign() < 0)
        return {FamilyTag::nonreal_guaranteed_real_zero, guarantee_threshold(cp),
                GuaranteeKind::zero_between};
    return {FamilyTag::nonreal_no_guarantee, {}, {}};
}

enum class LimitCase {
    a_at_most_1,          // isolated point x_g^-
    a_1_to_2_or_dd_le_dg, // isolated point x_g^+
    a_gt_2_and_dd_gt_dg,  // isolated points x_g^- and x_g^+
};

inline const char* limit_case_name(LimitCase c) {
    switch (c) {
        case LimitCase::a_at_most_1: return "aAtMost1";
        case LimitCase::a_1_to_2_or_dd_le_dg: return "aIn1To2_or_DdLeDg";
        case LimitCase::a_gt_2_and_dd_gt_dg: return "aGt2AndDdGtDg";
    }
    return "?";
}

// Limits of zeros of the family. The full description (closed interval
// [x_delta^-, x_delta^+] plus isolated points) exists for ad < bc; x_A and
// x_delta^-+ are non-isolated limits whenever they are real, in every regime.
struct LimitSetDescriptor {
    std::optional<std::pair<QuadExt, QuadExt>> interval;  // [x_delta^-, x_delta^+]
    std::vector<QuadExt> isolated_points;
    std::optional<LimitCase> case_tag;
    std::vector<QuadExt> always_nonisolated;  // x_A, then x_delta^-, x_delta^+ when real
};

inline LimitSetDescriptor limit_set(const RecurrenceParams& p) {
    CriticalPoints cp = characteristic_data(p);
    LimitSetDescriptor d;
    d.always_nonisolated.push_back(QuadExt(cp.x_A));
    if (cp.x_delta_minus) {
        d.always_nonisolated.push_back(*cp.x_delta_minus);
        d.always_nonisolated.push_back(*cp.x_delta_plus);
    }
    if (p.regime() >= 0) return d;

    d.interval = std::make_pair(*cp.x_delta_minus, *cp.x_delta_plus);
    if (p.a <= Rational(1)) {
        d.case_tag = LimitCase::a_at_most_1;
        d.isolated_points.push_back(*cp.x_g_minus);
    } else if (p.a <= Rational(2) || cp.delta_delta <= cp.delta_g) {
        // covers the boundary delta_delta = delta_g, where x_g^- coincides with
        // the interval endpoint x_delta^- and is not an isolated point
        d.case_tag = LimitCase::a_1_to_2_or_dd_le_dg;
        d.isolated_points.push_back(*cp.x_g_plus);
    } else {
        d.case_tag = LimitCase::a_gt_2_and_dd_gt_dg;
        d.isolated_points.push_back(*cp.x_g_minus);
        d.isolated_points.push_back(*cp.x_g_plus);
    }
    return d;
}

// W_n at a zero of g collapses to a pure power: W_n(x_g^-+) = (x_g^-+)^n.
inline QuadExt closed_value_at_xg(const RecurrenceParams& p, Sign s, unsigned n,
                                  bool verify = false) {
    CriticalPoints cp = characteristic_data(p);
    if (!cp.x_g_minus) throw Undefined("closed_value_at_xg: delta_g < 0");
    const QuadExt& x = s == Sign::minus ? *cp.x_g_minus : *cp.x_g_plus;
    QuadExt value = x.pow(n);
    if (verify) {
        QuadExt direct = poly_eval(gen_W(p, n), x);
        if (QuadExt::compare(value, direct) != 0)
            throw std::logic_error("closed_value_at_xg: power formula disagrees with evaluation");
    }
    return value;
}

// W_n at a zero of Delta:  W_n(x) = (A(x) + n h(x))/2 * (A(x)/2)^{n-1},  n >= 1.
inline QuadExt closed_value_at_xdelta(const RecurrenceParams& p, Sign s, unsigned n,
                                      bool verify = false) {
    if (n < 1) throw std::invalid_argument("closed_value_at_xdelta: requires n >= 1");
    CriticalPoints cp = characteristic_data(p);
    if (!cp.x_delta_minus) throw Undefined("closed_value_at_xdelta: delta_delta < 0");
    const QuadExt& x = s == Sign::minus ? *cp.x_delta_minus : *cp.x_delta_plus;
    QuadExt A_val = poly_eval(p.A(), x);
    QuadExt h_val = s == Sign::minus ? *cp.h_at_xd_minus : *cp.h_at_xd_plus;
    QuadExt half(Rational(1, 2));
    QuadExt value = (A_val + QuadExt(Rational(static_cast<long>(n))) * h_val) * half *
                    (A_val * half).pow(n - 1);
    if (verify) {
        QuadExt direct = poly_eval(gen_W(p, n), x);
        if (QuadExt::compare(value, direct) != 0)
            throw std::logic_error("closed_value_at_xdelta: formula disagrees with evaluation");
    }
    return value;
}

// Sign of W_n(x_A) by the three-way comparison of x_A and x_B:
//   x_A < x_B: (-1)^{ceil(n/2)};  x_A = x_B: 0 (n >= 2);  x_A > x_B: (-1)^n.
inline int sign_at_xA(const RecurrenceParams& p, unsigned n, bool verify = false) {
    int cmp = (p.a * p.d - p.b * p.c).sign();  // sign of x_A - x_B times a positive factor
    int predicted;
    if (n == 0) {
        predicted = 1;  // W_0 = 1
    } else if (n == 1) {
        predicted = -1;  // W_1(x_A) = x_A < 0
    } else if (cmp < 0) {
        predicted = ((n + 1) / 2) % 2 == 0 ? 1 : -1;
    } else if (cmp == 0) {
        predicted = 0;
    } else {
        predicted = n % 2 == 0 ? 1 : -1;
    }
    if (verify) {
        Rational x_A = -p.b / p.a;
        int direct = poly_eval(gen_W(p, n), x_A).sign();
        if (direct != predicted)
            throw std::logic_error("sign_at_xA: table disagrees with evaluation at n=" +
                                   std::to_string(n));
    }
    return predicted;
}

// Predicted sign of W_n(x_delta^-+) from the h / n^-+ case table:
//   (-1)^n        when h(x) <= 0 or n < n^-+,
//   0             when n = n^-+,
//   (-1)^{n+1}    otherwise.
inline int predicted_sign_at_xdelta(const RecurrenceParams& p, Sign s, unsigned n) {
    // The plus-side table presumes A(x_delta^+) < 0, which holds exactly when
    // x_A > x_B; the minus side holds in every regime with delta_delta >= 0.
    if (s == Sign::plus && p.regime() <= 0)
        throw WrongRegime("predicted_sign_at_xdelta: plus-side table requires ad > bc");
    CriticalPoints cp = characteristic_data(p);
    if (!cp.x_delta_minus) throw Undefined("predicted_sign_at_xdelta: delta_delta < 0");
    const QuadExt& h_val = s == Sign::minus ? *cp.h_at_xd_minus : *cp.h_at_xd_plus;
    const std::optional<QuadExt>& n_crit = s == Sign::minus ? cp.n_minus : cp.n_plus;
    int even = n % 2 == 0 ? 1 : -1;
    if (n == 0) return 1;  // W_0 = 1 regardless of the A-power in the closed form
    if (h_val.sign() <= 0) return even;
    QuadExt n_q(Rational(static_cast<long>(n)));
    int rel = QuadExt::compare(n_q, *n_crit);
    if (rel < 0) return even;
    if (rel == 0) return 0;
    return -even;
}

}  // namespace rootgeo
