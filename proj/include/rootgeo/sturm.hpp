#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rootgeo/errors.hpp"
#include "rootgeo/poly.hpp"
#include "rootgeo/quadext.hpp"
#include "rootgeo/rational.hpp"

namespace rootgeo {

// Signed remainder chain of p and p'. Every element is kept primitive (integer
// coefficients, content 1) so coefficient bit-size stays near-linear along the
// chain; content stripping is by a positive factor, so the sign structure that
// Sturm's theorem reads is untouched.
class SturmChain {
public:
    explicit SturmChain(const RatPoly& p) {
        if (p.is_zero()) throw ZeroPolynomial("SturmChain: zero polynomial");
        seq_.push_back(primitive_part(p));
        if (p.degree() == 0) return;
        seq_.push_back(primitive_part(p.derivative()));
        while (seq_.back().degree() > 0) {
            auto [q, r] = divmod(seq_[seq_.size() - 2], seq_.back());
            (void)q;
            if (r.is_zero()) break;
            seq_.push_back(primitive_part(-r));
        }
    }

    const std::vector<RatPoly>& sequence() const { return seq_; }

    // Sign variations of the chain at x, zeros skipped.
    template <class X>
    int variations_at(const X& x) const {
        int var = 0, prev = 0;
        for (const RatPoly& f : seq_) {
            int s = sign_of(poly_eval(f, x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
        return var;
    }

    // Distinct roots of the square-free part in the half-open interval (lo, hi].
    template <class L, class H>
    int count_half_open(const L& lo, const H& hi) const {
        return variations_at(lo) - variations_at(hi);
    }

private:
    static int sign_of(const Rational& v) { return v.sign(); }
    static int sign_of(const QuadExt& v) { return v.sign(); }

    std::vector<RatPoly> seq_;
};

// Upper bound B with every complex root of p inside |z| < B. Fujiwara-style
// bound 2 * max_k |a_{n-k}/a_n|^{1/k}, rounded up to a power of two through
// exact bit counts: a dyadic bound keeps every later bisection midpoint
// dyadic, which the exact evaluations repay many times over.
inline Rational root_bound(const RatPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("root_bound: zero polynomial");
    long exp2 = 1;
    int n = p.degree();
    for (int k = 1; k <= n; ++k) {
        Rational q = p.coeff(static_cast<std::size_t>(n - k)) / p.leading();
        if (q.is_zero()) continue;
        // ceil bound on log2 |q|
        long bits = static_cast<long>(mpz_sizeinbase(q.num().get_mpz_t(), 2)) -
                    static_cast<long>(mpz_sizeinbase(q.den().get_mpz_t(), 2)) + 1;
        long e = bits <= 0 ? 0 : (bits + k - 1) / k;
        exp2 = std::max(exp2, e + 2);  // factor 2 of the bound plus slack
    }
    mpz_class b = 1;
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(exp2));
    return Rational(std::move(b), mpz_class(1));
}

// One distinct real root, either pinned to an exact rational or isolated in an
// open interval (lo, hi) on which the square-free witness changes sign once.
// Intervals of distinct roots returned together are pairwise disjoint.
struct IsolatedRealRoot {
    Rational lo, hi;
    bool is_exact = false;
    unsigned multiplicity = 1;
    std::shared_ptr<const RatPoly> witness;  // square-free factor owning the root

    const Rational& point() const {
        if (!is_exact) throw std::logic_error("IsolatedRealRoot: root not exact");
        return lo;
    }

    Rational midpoint() const { return is_exact ? lo : (lo + hi) / Rational(2); }
    Rational width() const { return is_exact ? Rational(0) : hi - lo; }

    // Halve the interval; keeps the invariant that the endpoints are not roots.
    void bisect() {
        if (is_exact) return;
        Rational mid = (lo + hi) / Rational(2);
        Rational at_mid = poly_eval(*witness, mid);
        if (at_mid.is_zero()) {
            lo = hi = mid;
            is_exact = true;
            return;
        }
        if (poly_eval(*witness, lo).sign() * at_mid.sign() < 0)
            hi = mid;
        else
            lo = mid;
    }

    void refine_below(const Rational& target_width) {
        while (!is_exact && width() >= target_width) bisect();
    }
};

namespace detail {

// Interior point of (lo, hi) that is not a root of f, preferring dyadic
// subdivision points near the middle; more candidates exist than f has roots.
inline Rational non_root_split(const RatPoly& f, const Rational& lo, const Rational& hi) {
    Rational span = hi - lo;
    long tried = 0;
    for (long level = 1; tried <= f.degree() + 1; ++level) {
        Rational scale = Rational(1, 1L << level);
        for (long j = 1; j < (1L << level); j += 2) {
            Rational cand = lo + span * scale * Rational(j);
            ++tried;
            if (!poly_eval(f, cand).is_zero()) return cand;
        }
    }
    throw std::logic_error("non_root_split: no candidate found");
}

// Isolating intervals for all real roots of a square-free f; endpoints of the
// produced intervals are never roots. Exact rational roots stay inside open
// intervals here and surface when a later bisection lands on them.
inline void isolate_squarefree(const std::shared_ptr<const RatPoly>& f, unsigned multiplicity,
                               std::vector<IsolatedRealRoot>& out) {
    if (f->degree() < 1) return;
    SturmChain chain(*f);
    Rational bound = root_bound(*f);

    struct Span {
        Rational lo, hi;
        int count;
    };
    std::vector<Span> work;
    int total = chain.count_half_open(-bound, bound);
    if (total > 0) work.push_back({-bound, bound, total});

    while (!work.empty()) {
        Span s = std::move(work.back());
        work.pop_back();
        if (s.count == 1) {
            out.push_back({s.lo, s.hi, false, multiplicity, f});
            continue;
        }
        Rational mid = non_root_split(*f, s.lo, s.hi);
        int left = chain.count_half_open(s.lo, mid);
        int right = s.count - left;
        if (left > 0) work.push_back({s.lo, mid, left});
        if (right > 0) work.push_back({mid, s.hi, right});
    }
}

inline bool overlaps(const IsolatedRealRoot& a, const IsolatedRealRoot& b) {
    if (a.is_exact && b.is_exact) return a.lo == b.lo;
    if (a.is_exact) return b.lo < a.lo && a.lo < b.hi;
    if (b.is_exact) return a.lo < b.lo && b.lo < a.hi;
    return a.lo < b.hi && b.lo < a.hi;
}

// Shrink intervals until the two roots are strictly ordered. Distinct roots
// always separate; a shared root never does, and the cap turns that case into
// an error for the caller to report.
inline bool disjoin(IsolatedRealRoot& a, IsolatedRealRoot& b, unsigned cap = 256) {
    for (unsigned i = 0; i < cap && overlaps(a, b); ++i) {
        if (a.is_exact && b.is_exact) return false;  // same exact root
        if (b.is_exact || (!a.is_exact && a.width() >= b.width()))
            a.bisect();
        else
            b.bisect();
        if (a.is_exact && b.is_exact && a.lo == b.lo) return false;
    }
    return !overlaps(a, b);
}

}  // namespace detail

// All distinct real roots of p with multiplicities, sorted increasingly.
// Multiplicities come from the exact square-free decomposition; isolation runs
// on each square-free factor.
inline std::vector<IsolatedRealRoot> isolate_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("isolate_real_roots: zero polynomial");
    std::vector<IsolatedRealRoot> roots;
    for (auto& [factor, mult] : squarefree_decomposition(p)) {
        auto shared = std::make_shared<const RatPoly>(std::move(factor));
        detail::isolate_squarefree(shared, mult, roots);
    }
    // Factors are coprime, so roots are distinct and the refinement below
    // terminates; it makes the cross-factor intervals pairwise disjoint.
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!detail::disjoin(roots[i], roots[j]))
                throw std::logic_error("isolate_real_roots: coprime factors shared a root");
    std::sort(roots.begin(), roots.end(), [](const IsolatedRealRoot& x, const IsolatedRealRoot& y) {
        return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    return roots;
}

// Counting front end that builds the square-free decomposition and its Sturm
// chains once and answers many interval queries. The two endpoints of a query
// may live over different radicands: each sign evaluation involves only one
// endpoint, so the count stays exact.
class RootCounter {
public:
    explicit RootCounter(const RatPoly& p) {
        if (p.is_zero()) throw ZeroPolynomial("RootCounter: zero polynomial");
        for (auto& [factor, mult] : squarefree_decomposition(p)) {
            if (factor.degree() < 1) continue;
            SturmChain chain(factor);
            Rational bound = root_bound(factor);
            parts_.push_back({std::move(factor), std::move(chain), std::move(bound), mult});
        }
    }

    // Roots in the interval; requires lo < hi.
    long count(const QuadExt& lo, const QuadExt& hi, bool lo_closed, bool hi_closed,
               bool with_multiplicity = false) const {
        if (QuadExt::compare(lo, hi) >= 0)
            throw std::invalid_argument("RootCounter: requires lo < hi");
        long total = 0;
        for (const Part& part : parts_) {
            long n = part.chain.count_half_open(lo, hi);  // roots in (lo, hi]
            if (!hi_closed && poly_eval(part.factor, hi).sign() == 0) --n;
            if (lo_closed && poly_eval(part.factor, lo).sign() == 0) ++n;
            total += with_multiplicity ? n * static_cast<long>(part.mult) : n;
        }
        return total;
    }

    // All real roots.
    long total(bool with_multiplicity = false) const {
        long total = 0;
        for (const Part& part : parts_) {
            long n = part.chain.count_half_open(-part.bound, part.bound);
            total += with_multiplicity ? n * static_cast<long>(part.mult) : n;
        }
        return total;
    }

private:
    struct Part {
        RatPoly factor;
        SturmChain chain;
        Rational bound;
        unsigned mult;
    };
    std::vector<Part> parts_;
};

// Total number of real roots; with_multiplicity counts each root by its order.
inline long real_root_count(const RatPoly& p, bool with_multiplicity) {
    if (p.is_zero()) throw ZeroPolynomial("real_root_count: zero polynomial");
    return RootCounter(p).total(with_multiplicity);
}

// Exact root count of p on one interval with quadratic-extension endpoints.
inline long count_roots_in(const RatPoly& p, const QuadExt& lo, const QuadExt& hi, bool lo_closed,
                           bool hi_closed, bool with_multiplicity = false) {
    if (p.is_zero()) throw ZeroPolynomial("count_roots_in: zero polynomial");
    return RootCounter(p).count(lo, hi, lo_closed, hi_closed, with_multiplicity);
}

}  // namespace rootgeo
