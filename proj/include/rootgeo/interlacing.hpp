#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rootgeo/closed_forms.hpp"
#include "rootgeo/errors.hpp"
#include "rootgeo/sequence.hpp"
#include "rootgeo/sturm.hpp"

namespace rootgeo {

struct Interval {
    QuadExt lo, hi;
    bool lo_closed = false;
    bool hi_closed = false;
    std::string name;

    std::string str() const {
        return (lo_closed ? "[" : "(") + lo.str() + ", " + hi.str() + (hi_closed ? "]" : ")");
    }
};

// The comparison-point partition of the strict regime ad < bc:
//   J1 = (u, x_A),  J2 = (x_A, x_delta^+),  J3 = (x_delta^+, v),  J4 = (v, 0].
struct IntervalPartition {
    Interval J1, J2, J3, J4;

    static IntervalPartition strict_case(const CriticalPoints& cp) {
        IntervalPartition part;
        part.J1 = {*cp.u, QuadExt(cp.x_A), false, false, "J1"};
        part.J2 = {QuadExt(cp.x_A), *cp.x_delta_plus, false, false, "J2"};
        part.J3 = {*cp.x_delta_plus, *cp.v, false, false, "J3"};
        part.J4 = {*cp.v, QuadExt(Rational(0)), false, true, "J4"};
        return part;
    }
};

namespace detail {

// Decides whether an isolated root lies in the interval, refining its
// enclosure until the question is settled exactly. Roots that coincide with
// an endpoint are resolved through the closure flags; witness_lo/witness_hi
// are the precomputed signs of the root's witness at the interval endpoints.
inline bool root_in_interval(IsolatedRealRoot& root, const Interval& iv, int witness_lo,
                             int witness_hi) {
    auto root_equals = [&](const QuadExt& e, int witness_sign) {
        if (witness_sign != 0) return false;
        if (root.is_exact) return QuadExt::compare(QuadExt(root.point()), e) == 0;
        return QuadExt::compare(QuadExt(root.lo), e) < 0 &&
               QuadExt::compare(e, QuadExt(root.hi)) < 0;
    };
    if (root_equals(iv.lo, witness_lo)) return iv.lo_closed;
    if (root_equals(iv.hi, witness_hi)) return iv.hi_closed;

    for (unsigned step = 0; step < 512; ++step) {
        if (root.is_exact) {
            return QuadExt::compare(QuadExt(root.point()), iv.lo) > 0 &&
                   QuadExt::compare(QuadExt(root.point()), iv.hi) < 0;
        }
        QuadExt lo_q(root.lo), hi_q(root.hi);
        if (QuadExt::compare(hi_q, iv.lo) <= 0) return false;
        if (QuadExt::compare(lo_q, iv.hi) >= 0) return false;
        if (QuadExt::compare(lo_q, iv.lo) >= 0 && QuadExt::compare(hi_q, iv.hi) <= 0) return true;
        root.bisect();
    }
    throw std::logic_error("root_in_interval: refinement cap reached");
}

inline std::vector<IsolatedRealRoot> roots_in_interval(std::vector<IsolatedRealRoot>& all,
                                                       const Interval& iv) {
    std::vector<IsolatedRealRoot> out;
    const RatPoly* cached_witness = nullptr;
    int sign_lo = 1, sign_hi = 1;
    for (IsolatedRealRoot& r : all) {
        if (r.witness.get() != cached_witness) {  // usually one witness for all roots
            cached_witness = r.witness.get();
            sign_lo = poly_eval(*r.witness, iv.lo).sign();
            sign_hi = poly_eval(*r.witness, iv.hi).sign();
        }
        if (root_in_interval(r, iv, sign_lo, sign_hi)) out.push_back(r);
    }
    return out;
}

}  // namespace detail

struct CountRow {
    unsigned n = 0;
    std::vector<long> counts;
    std::vector<long> expected;
    bool ok = false;
};

struct InterlaceCheck {
    unsigned n = 0;
    unsigned k = 0;
    std::string where;
    bool from_left = false;
    bool ok = false;
    std::string detail;
};

struct MultiplicityRow {
    unsigned n = 0;
    unsigned observed = 0;
    unsigned expected = 0;
    bool ok = false;
};

struct InterlacingReport {
    std::vector<CountRow> counts;
    std::vector<InterlaceCheck> interlacing;
    std::vector<MultiplicityRow> multiplicities;  // equal case only
    std::vector<InterlaceCheck> extended;         // positional refinements, reported separately
    std::vector<std::string> failures;

    bool ok() const {
        for (const auto& c : counts)
            if (!c.ok) return false;
        for (const auto& i : interlacing)
            if (!i.ok) return false;
        for (const auto& m : multiplicities)
            if (!m.ok) return false;
        return failures.empty();
    }

    bool extended_ok() const {
        for (const auto& e : extended)
            if (!e.ok) return false;
        return true;
    }
};

// Checks that X strictly interlaces Y in the stated direction, certifying by
// refining all enclosures until the union is pairwise disjoint. Ties are then
// impossible; a refinement failure (a shared root) is reported, not looped on.
inline InterlaceCheck strict_interlace_check(std::vector<IsolatedRealRoot> X,
                                             std::vector<IsolatedRealRoot> Y, unsigned n,
                                             unsigned k, const std::string& where,
                                             bool from_left) {
    InterlaceCheck res{n, k, where, from_left, false, ""};
    if (X.size() != Y.size() && X.size() != Y.size() + 1) {
        res.detail = "size mismatch: |X|=" + std::to_string(X.size()) +
                     " |Y|=" + std::to_string(Y.size());
        return res;
    }
    for (auto& x : X)
        for (auto& y : Y)
            if (!detail::disjoin(x, y)) {
                res.detail = "roots could not be separated (shared root?)";
                return res;
            }
    struct Tagged {
        const IsolatedRealRoot* r;
        bool in_x;
    };
    std::vector<Tagged> merged;
    for (const auto& x : X) merged.push_back({&x, true});
    for (const auto& y : Y) merged.push_back({&y, false});
    std::sort(merged.begin(), merged.end(), [](const Tagged& a, const Tagged& b) {
        if (a.r->hi <= b.r->lo) return true;
        if (b.r->hi <= a.r->lo) return false;
        return a.r->lo < b.r->lo;  // overlapping only when one side is empty of that case
    });
    for (std::size_t i = 1; i < merged.size(); ++i)
        if (merged[i].in_x == merged[i - 1].in_x) {
            res.detail = "two consecutive roots from the same set";
            return res;
        }
    if (!merged.empty()) {
        if (from_left && !merged.front().in_x) {
            res.detail = "leftmost root not from the larger-index polynomial";
            return res;
        }
        if (!from_left && !merged.back().in_x) {
            res.detail = "rightmost root not from the larger-index polynomial";
            return res;
        }
    }
    res.ok = true;
    return res;
}

// Exact verification of the strict-regime root layout for every n <= n_max:
// interval counts floor(n/2), floor((n-1)/2), parity-dependent single roots in
// J3/J4, and strict interlacing of consecutive zero sets on J1 and J2.
inline InterlacingReport verify_interlacing(const RecurrenceParams& params, unsigned n_max) {
    if (params.regime() >= 0)
        throw WrongRegime("verify_interlacing: requires ad < bc");
    CriticalPoints cp = characteristic_data(params);
    IntervalPartition part = IntervalPartition::strict_case(cp);
    const Interval* intervals[4] = {&part.J1, &part.J2, &part.J3, &part.J4};

    InterlacingReport rep;
    WSequence ws(params);
    std::vector<std::vector<IsolatedRealRoot>> roots(n_max + 1);
    for (unsigned n = 1; n <= n_max; ++n) roots[n] = isolate_real_roots(ws.at(n));

    for (unsigned n = 1; n <= n_max; ++n) {
        CountRow row;
        row.n = n;
        const RatPoly& W = ws.at(n);
        RootCounter counter(W);
        for (const Interval* iv : intervals)
            row.counts.push_back(counter.count(iv->lo, iv->hi, iv->lo_closed, iv->hi_closed));
        row.expected = {static_cast<long>(n / 2), static_cast<long>((n - 1) / 2),
                        n % 2 == 0 ? 1L : 0L, n % 2 == 1 ? 1L : 0L};
        row.ok = row.counts == row.expected;
        rep.counts.push_back(row);
        if (n >= 2 && poly_eval(W, Rational(0)).sign() <= 0)
            rep.failures.push_back("W_" + std::to_string(n) + "(0) is not positive");
    }

    for (unsigned n = 2; n <= n_max; ++n) {
        for (unsigned k = 1; k <= 2 && k < n; ++k) {
            for (int j = 0; j < 2; ++j) {
                auto X = detail::roots_in_interval(roots[n], *intervals[j]);
                auto Y = detail::roots_in_interval(roots[n - k], *intervals[j]);
                rep.interlacing.push_back(strict_interlace_check(
                    std::move(X), std::move(Y), n, k, intervals[j]->name, n % 2 == 1));
            }
        }
    }

    // positional refinement of the lone J3/J4 root: for even n it moves right
    // of the previous even index, for odd n left of the previous odd index
    for (unsigned n = 3; n <= n_max; ++n) {
        const Interval& iv = n % 2 == 0 ? part.J3 : part.J4;
        auto cur = detail::roots_in_interval(roots[n], iv);
        auto prev = detail::roots_in_interval(roots[n - 2], iv);
        InterlaceCheck chk{n, 2, iv.name + "-position", n % 2 == 1, false, ""};
        if (cur.size() != 1 || prev.size() != 1) {
            chk.detail = "expected single roots";
        } else if (!detail::disjoin(cur[0], prev[0])) {
            chk.detail = "could not separate";
        } else {
            bool newer_right = prev[0].hi <= cur[0].lo;
            chk.ok = (n % 2 == 0) ? newer_right : !newer_right;
            if (!chk.ok) chk.detail = "root moved in the wrong direction";
        }
        rep.extended.push_back(chk);
    }
    return rep;
}

// Exact verification of the degenerate regime ad = bc through the reduced
// sequence: quotient counts on (u, v) and (v, 0], strict interlacing on
// (u, v), and the multiplicity of x_A in W_n.
inline InterlacingReport verify_equal_case(const RecurrenceParams& params, unsigned n_max) {
    if (params.regime() != 0)
        throw WrongRegime("verify_equal_case: requires ad = bc");
    CriticalPoints cp = characteristic_data(params);
    Interval J1p{*cp.u, *cp.v, false, false, "J1'"};
    Interval J2p{*cp.v, QuadExt(Rational(0)), false, true, "J2'"};

    InterlacingReport rep;
    USequence us(params);
    std::vector<std::vector<IsolatedRealRoot>> roots(n_max + 1);
    for (unsigned n = 1; n <= n_max; ++n) roots[n] = isolate_real_roots(us.at(n));

    for (unsigned n = 1; n <= n_max; ++n) {
        const RatPoly& U = us.at(n);
        CountRow row;
        row.n = n;
        RootCounter counter(U);
        row.counts = {counter.count(J1p.lo, J1p.hi, false, false),
                      counter.count(J2p.lo, J2p.hi, false, true)};
        long half = static_cast<long>(n / 2);
        row.expected = n % 2 == 0 ? std::vector<long>{half, 0} : std::vector<long>{half, 1};
        row.ok = row.counts == row.expected;
        rep.counts.push_back(row);

        MultiplicityRow mrow;
        mrow.n = n;
        mrow.observed = multiplicity_at(us.ws().at(n), cp.x_A);
        mrow.expected =
            static_cast<unsigned>(n / 2) + (poly_eval(U, cp.x_A).is_zero() ? 1u : 0u);
        mrow.ok = mrow.observed == mrow.expected;
        rep.multiplicities.push_back(mrow);

        if (n >= 2 && poly_eval(us.ws().at(n), Rational(0)).sign() <= 0)
            rep.failures.push_back("W_" + std::to_string(n) + "(0) is not positive");
    }

    for (unsigned n = 2; n <= n_max; ++n) {
        for (unsigned k = 1; k <= 2 && k < n; ++k) {
            auto X = detail::roots_in_interval(roots[n], J1p);
            auto Y = detail::roots_in_interval(roots[n - k], J1p);
            rep.interlacing.push_back(
                strict_interlace_check(std::move(X), std::move(Y), n, k, "J1'", n % 2 == 1));
        }
    }
    return rep;
}

}  // namespace rootgeo
