#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rootgeo/closed_forms.hpp"
#include "rootgeo/complex_roots.hpp"
#include "rootgeo/errors.hpp"
#include "rootgeo/sequence.hpp"
#include "rootgeo/sturm.hpp"

namespace rootgeo {

enum class BkwCondition { c_i, c_ii, c_iii, none };

inline const char* bkw_condition_name(BkwCondition c) {
    switch (c) {
        case BkwCondition::c_i: return "C-i";
        case BkwCondition::c_ii: return "C-ii";
        case BkwCondition::c_iii: return "C-iii";
        case BkwCondition::none: return "none";
    }
    return "?";
}

// Beraha-Kahane-Weiss membership verdict at one point. With
//   f(z) = |A(z) + sqrt(Delta(z))| - |A(z) - sqrt(Delta(z))|,
//   alpha_-+(z) = (sqrt(Delta(z)) -+ h(z)) / (2 sqrt(Delta(z))),
// z is a limit of zeros iff one of
//   (C-i)  alpha_-(z) = 0 and f(z) < 0,
//   (C-ii) alpha_+(z) = 0 and f(z) > 0,
//   (C-iii) f(z) = 0
// holds. Swapping the square-root branch exchanges alpha_+ with alpha_- and
// negates f, so membership does not depend on the branch.
struct BkwVerdict {
    std::complex<double> point;
    double f_value = 0;
    std::complex<double> alpha_minus{0, 0}, alpha_plus{0, 0};
    bool member = false;
    BkwCondition via = BkwCondition::none;
    bool exact = false;  // decided by exact arithmetic, tolerance not involved
};

namespace detail {

inline std::vector<double> double_coeffs(const RatPoly& p) {
    std::vector<double> c(p.coefficients().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coefficients()[i].to_double();
    return c;
}

inline std::complex<double> eval_at(const RatPoly& p, std::complex<double> z) {
    if (p.is_zero()) return {0, 0};
    auto c = double_coeffs(p);
    std::complex<double> acc(c.back(), 0);
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

}  // namespace detail

// Floating-point BKW classification at an arbitrary complex point. Real points
// with Delta(z) < 0 are settled symbolically: the two characteristic values
// are conjugates, so f vanishes identically there. zero_tol governs only the
// remaining floating comparisons.
inline BkwVerdict bkw_classify(const RecurrenceParams& params, std::complex<double> z,
                               double zero_tol = 1e-9, bool swap_branch = false) {
    BkwVerdict v;
    v.point = z;
    if (z.imag() == 0.0) {
        Rational x = Rational::from_double(z.real());
        int delta_sign = poly_eval(poly_Delta(params), x).sign();
        if (delta_sign < 0) {
            v.f_value = 0;
            v.member = true;
            v.via = BkwCondition::c_iii;
            v.exact = true;
            return v;
        }
    }
    std::complex<double> delta = detail::eval_at(poly_Delta(params), z);
    std::complex<double> sq = std::sqrt(delta);
    if (swap_branch) sq = -sq;
    std::complex<double> A = detail::eval_at(params.A(), z);
    std::complex<double> h = detail::eval_at(poly_h(params), z);
    v.f_value = std::abs(A + sq) - std::abs(A - sq);
    double f_scale = std::max(1.0, std::abs(A) + std::abs(sq));
    if (std::abs(sq) > 0) {
        v.alpha_minus = (sq - h) / (2.0 * sq);
        v.alpha_plus = (sq + h) / (2.0 * sq);
    }
    if (std::abs(v.f_value) <= zero_tol * f_scale) {
        v.member = true;
        v.via = BkwCondition::c_iii;
    } else if (v.f_value < 0 && std::abs(v.alpha_minus) <= zero_tol) {
        v.member = true;
        v.via = BkwCondition::c_i;
    } else if (v.f_value > 0 && std::abs(v.alpha_plus) <= zero_tol) {
        v.member = true;
        v.via = BkwCondition::c_ii;
    }
    return v;
}

// Exact BKW classification at a real quadratic-field point. Everything is
// decided by signs of A, h, g and Delta at x:
//   Delta(x) <= 0        -> f = 0, member through C-iii;
//   Delta(x) > 0, A = 0  -> f = 0, member through C-iii;
//   g(x) = 0             -> sqrt(Delta) = |h|, so one alpha vanishes and
//                           membership follows from the signs of h and A;
//   otherwise            -> both alphas and f are nonzero, not a member.
inline BkwVerdict bkw_classify_exact(const RecurrenceParams& params, const QuadExt& x) {
    BkwVerdict v;
    v.exact = true;
    v.point = {x.to_double(), 0};
    QuadExt delta = poly_eval(poly_Delta(params), x);
    QuadExt A = poly_eval(params.A(), x);
    QuadExt h = poly_eval(poly_h(params), x);
    int s_delta = delta.sign();
    if (s_delta <= 0) {
        v.f_value = 0;
        v.member = true;
        v.via = BkwCondition::c_iii;
        return v;
    }
    double sq = std::sqrt(delta.to_double());
    v.alpha_minus = {(sq - h.to_double()) / (2 * sq), 0};
    v.alpha_plus = {(sq + h.to_double()) / (2 * sq), 0};
    int s_A = A.sign();
    // f = 2 sign(A) min(|A|, sqrt(Delta)): vanishes exactly when A does
    v.f_value = 2.0 * s_A * std::min(std::abs(A.to_double()), sq);
    if (s_A == 0) {
        v.member = true;
        v.via = BkwCondition::c_iii;
        return v;
    }
    QuadExt g = poly_eval(poly_g(params), x);
    if (g.sign() == 0) {
        int s_h = h.sign();  // nonzero: h = 0 with g = 0 would force Delta = 0
        if (s_h < 0 && s_A > 0) {
            v.member = true;
            v.via = BkwCondition::c_ii;  // alpha_+ = 0, f > 0
        } else if (s_h > 0 && s_A < 0) {
            v.member = true;
            v.via = BkwCondition::c_i;  // alpha_- = 0, f < 0
        }
    }
    return v;
}

struct CloudPoint {
    ComplexRootApprox root;
    double distance = 0;  // to the predicted limit set (or anchor points)
};

struct EmpiricalCloud {
    unsigned n = 0;
    bool full_limit_set = false;  // false: distances are to the anchor points only
    double max_distance = 0;
    std::vector<CloudPoint> points;
};

// Roots of W_n against the predicted limit set: distance of every root to the
// interval plus isolated points (full description, ad < bc) or to the
// always-present anchor points otherwise.
inline EmpiricalCloud empirical_limits(const RecurrenceParams& params, unsigned n,
                                       double tol = 1e-10) {
    if (n < 1) throw std::invalid_argument("empirical_limits: requires n >= 1");
    EmpiricalCloud cloud;
    cloud.n = n;
    LimitSetDescriptor L = limit_set(params);
    cloud.full_limit_set = L.interval.has_value();

    std::optional<std::pair<double, double>> segment;
    std::vector<std::complex<double>> targets;
    if (L.interval) {
        segment = std::make_pair(L.interval->first.to_double(), L.interval->second.to_double());
        for (const QuadExt& p : L.isolated_points) targets.emplace_back(p.to_double(), 0.0);
    } else {
        for (const QuadExt& p : L.always_nonisolated) targets.emplace_back(p.to_double(), 0.0);
    }

    auto distance_to = [&](std::complex<double> z) {
        double best = std::numeric_limits<double>::infinity();
        if (segment) {
            double dx = 0;
            if (z.real() < segment->first) dx = segment->first - z.real();
            if (z.real() > segment->second) dx = z.real() - segment->second;
            best = std::hypot(dx, z.imag());
        }
        for (auto t : targets) best = std::min(best, std::abs(z - t));
        return best;
    };

    for (const ComplexRootApprox& r : complex_roots(gen_W(params, n), tol)) {
        double d = distance_to(r.value());
        cloud.max_distance = std::max(cloud.max_distance, d);
        cloud.points.push_back({r, d});
    }
    return cloud;
}

struct OnsetRow {
    unsigned n = 0;
    long distinct = 0;
    long with_multiplicity = 0;
    bool asserted = false;           // the guarantee applies at this n
    bool count_ok = true;            // asserted lower bound on the root count holds
    std::optional<bool> location_ok;  // certified roots found in the predicted intervals
};

struct OnsetTable {
    FamilyClass family;
    std::vector<OnsetRow> rows;

    bool ok() const {
        for (const auto& r : rows) {
            if (!r.count_ok) return false;
            if (r.location_ok && !*r.location_ok) return false;
        }
        return true;
    }
};

// Per-n real-zero table for the non-real-rooted regime ad > bc. Where the
// family guarantees eventual real zeros, the table asserts the guaranteed
// count and the intervals carrying the certified roots:
//   h(x_delta^+) > 0, n >= n^+:             two distinct zeros, one in
//       (x_g^-, x_delta^-), one in [x_delta^+, x_g^+);
//   h(x_delta^+) < 0 < h(x_delta^-), n > n^-: a zero in (x_delta^-, x_delta^+),
//       and a second one in (x_g^-, x_delta^-) whenever delta_g >= 0.
inline OnsetTable real_zero_onset(const RecurrenceParams& params, unsigned n_max) {
    if (params.regime() <= 0)
        throw WrongRegime("real_zero_onset: requires ad > bc");
    OnsetTable table;
    table.family = classify_family(params);
    CriticalPoints cp = characteristic_data(params);
    WSequence ws(params);

    for (unsigned n = 1; n <= n_max; ++n) {
        OnsetRow row;
        row.n = n;
        RootCounter counter(ws.at(n));
        row.distinct = counter.total(false);
        row.with_multiplicity = counter.total(true);

        if (table.family.guarantee) {
            QuadExt n_q{Rational(static_cast<long>(n))};
            if (*table.family.guarantee == GuaranteeKind::two_zeros_outside &&
                QuadExt::compare(n_q, *cp.n_plus) >= 0) {
                row.asserted = true;
                row.count_ok = row.distinct >= 2;
                bool left = counter.count(*cp.x_g_minus, *cp.x_delta_minus, false, false) >= 1;
                bool right = counter.count(*cp.x_delta_plus, *cp.x_g_plus, true, false) >= 1;
                row.location_ok = left && right;
            } else if (*table.family.guarantee == GuaranteeKind::zero_between &&
                       QuadExt::compare(n_q, *cp.n_minus) > 0) {
                row.asserted = true;
                bool between =
                    counter.count(*cp.x_delta_minus, *cp.x_delta_plus, false, false) >= 1;
                if (cp.delta_g.sign() >= 0) {
                    row.count_ok = row.distinct >= 2;
                    bool left = counter.count(*cp.x_g_minus, *cp.x_delta_minus, false, false) >= 1;
                    row.location_ok = between && left;
                } else {
                    row.count_ok = row.distinct >= 1;
                    row.location_ok = between;
                }
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace rootgeo
