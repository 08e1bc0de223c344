#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootgeo/errors.hpp"
#include "rootgeo/poly.hpp"
#include "rootgeo/rational.hpp"

namespace rootgeo {

// Parameters (a, b, c, d) of the degree-two recurrence
//   W_n(z) = (a z + b) W_{n-1}(z) + (c z + d) W_{n-2}(z),  W_0 = 1, W_1 = z.
// All four must be strictly positive.
struct RecurrenceParams {
    Rational a, b, c, d;

    RecurrenceParams(Rational a_, Rational b_, Rational c_, Rational d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a.sign() <= 0 || b.sign() <= 0 || c.sign() <= 0 || d.sign() <= 0)
            throw std::invalid_argument("RecurrenceParams: a, b, c, d must all be > 0");
    }

    RatPoly A() const { return RatPoly{b, a}; }  // a z + b
    RatPoly B() const { return RatPoly{d, c}; }  // c z + d

    // ad vs bc decides the family's behaviour; exact, no tolerance.
    int regime() const { return (a * d - b * c).sign(); }
    bool real_rooted() const { return regime() <= 0; }

    std::string str() const {
        return "(" + a.str() + ", " + b.str() + ", " + c.str() + ", " + d.str() + ")";
    }
};

// Degree cap for sequence generation; coefficient bit-size grows with n, so
// unbounded indices are rejected rather than allowed to exhaust memory.
// ROOTGEO_MAX_N overrides the default of 200.
inline unsigned max_sequence_index() {
    if (const char* env = std::getenv("ROOTGEO_MAX_N")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return 200;
}

// Memoized forward generation of W_0, W_1, ... for one parameter set.
// Returned polynomials are immutable; extension is not synchronized, so either
// confine an instance to one thread or guard it externally.
class WSequence {
public:
    explicit WSequence(RecurrenceParams params, unsigned cap = max_sequence_index())
        : params_(std::move(params)), cap_(cap) {
        polys_.push_back(RatPoly{Rational(1)});
        polys_.push_back(RatPoly::z());
    }

    const RecurrenceParams& params() const { return params_; }

    const RatPoly& at(unsigned n) {
        if (n > cap_)
            throw std::out_of_range("WSequence: n=" + std::to_string(n) + " exceeds cap " +
                                    std::to_string(cap_));
        if (polys_.size() <= n) {
            RatPoly A = params_.A(), B = params_.B();
            for (unsigned k = polys_.size(); k <= n; ++k)
                polys_.push_back(A * polys_[k - 1] + B * polys_[k - 2]);
        }
        return polys_[n];
    }

private:
    RecurrenceParams params_;
    std::vector<RatPoly> polys_;
    unsigned cap_;
};

inline RatPoly gen_W(const RecurrenceParams& params, unsigned n) {
    return WSequence(params).at(n);
}

// Failures are indices where a cross-check broke; an implementation bug, not
// an input condition, so they are reported rather than thrown.
struct ConsistencyReport {
    std::string check;
    std::vector<unsigned> failures;
    unsigned n_checked = 0;
    bool ok() const { return failures.empty(); }
};

// Recomputes W_n from W_{n-2}, W_{n-4} through the order-four recurrence
//   W_n = (A^2 + 2B) W_{n-2} - B^2 W_{n-4},  n >= 4,
// and demands exact polynomial equality with forward generation.
inline ConsistencyReport verify_rec2(const RecurrenceParams& params, unsigned n_max) {
    if (n_max < 4) throw std::invalid_argument("verify_rec2: n_max must be >= 4");
    ConsistencyReport rep{"rec2", {}, n_max};
    WSequence ws(params);
    RatPoly A = params.A(), B = params.B();
    RatPoly A2_2B = A * A + B * Rational(2);
    RatPoly B2 = B * B;
    for (unsigned n = 4; n <= n_max; ++n) {
        RatPoly via_rec2 = A2_2B * ws.at(n - 2) - B2 * ws.at(n - 4);
        if (via_rec2 != ws.at(n)) rep.failures.push_back(n);
    }
    return rep;
}

// Truncated power-series quotient: coefficients of num/den through t^N.
// den[0] must be a nonzero constant.
inline std::vector<RatPoly> series_divide(const std::vector<RatPoly>& num,
                                          const std::vector<RatPoly>& den, unsigned N) {
    if (den.empty() || den[0].degree() != 0)
        throw std::invalid_argument("series_divide: denominator unit term must be a nonzero constant");
    Rational unit = den[0].coefficients()[0];
    std::vector<RatPoly> out;
    out.reserve(N + 1);
    for (unsigned n = 0; n <= N; ++n) {
        RatPoly acc = n < num.size() ? num[n] : RatPoly();
        for (unsigned k = 1; k <= n && k < den.size(); ++k) acc -= den[k] * out[n - k];
        out.push_back(acc * (Rational(1) / unit));
    }
    return out;
}

// Expands (1 + (z - A) t) / (1 - A t - B t^2) as a series in t and matches
// every coefficient polynomial against forward generation.
inline ConsistencyReport gf_check(const RecurrenceParams& params, unsigned N) {
    ConsistencyReport rep{"generating-function", {}, N};
    RatPoly A = params.A(), B = params.B();
    std::vector<RatPoly> num{RatPoly{Rational(1)}, RatPoly::z() - A};
    std::vector<RatPoly> den{RatPoly{Rational(1)}, -A, -B};
    std::vector<RatPoly> series = series_divide(num, den, N);
    WSequence ws(params);
    for (unsigned n = 0; n <= N; ++n)
        if (series[n] != ws.at(n)) rep.failures.push_back(n);
    return rep;
}

// Reduced sequence in the degenerate regime ad = bc, where (a z + b)^{floor(n/2)}
// divides W_n exactly. U_n follows the parity recurrence
//   U_n = U_{n-1} + c' U_{n-2}   (n even),   U_n = A U_{n-1} + c' U_{n-2}   (n odd),
// with U_0 = 1, U_1 = z and c' = c/a; every generated U_n is checked against
// the exact quotient W_n / A^{floor(n/2)}.
class USequence {
public:
    explicit USequence(RecurrenceParams params, unsigned cap = max_sequence_index())
        : params_(std::move(params)), ws_(params_, cap), cap_(cap) {
        if (params_.regime() != 0)
            throw WrongRegime("USequence: requires ad = bc, got params " + params_.str());
        polys_.push_back(RatPoly{Rational(1)});
        polys_.push_back(RatPoly::z());
    }

    const RatPoly& at(unsigned n) {
        if (n > cap_) throw std::out_of_range("USequence: n exceeds cap");
        if (polys_.size() <= n) {
            RatPoly A = params_.A();
            Rational cp = params_.c / params_.a;
            for (unsigned k = polys_.size(); k <= n; ++k) {
                RatPoly next = (k % 2 == 0) ? polys_[k - 1] + polys_[k - 2] * cp
                                            : A * polys_[k - 1] + polys_[k - 2] * cp;
                if (k % 2 == 0) a_power_ *= A;  // A^{floor(k/2)}
                check_quotient(k, next);
                polys_.push_back(std::move(next));
            }
        }
        return polys_[n];
    }

    WSequence& ws() { return ws_; }

private:
    void check_quotient(unsigned n, const RatPoly& candidate) {
        if (candidate.degree() != static_cast<int>((n + 1) / 2))
            throw std::logic_error("USequence: wrong degree at n=" + std::to_string(n));
        if (candidate * a_power_ != ws_.at(n))
            throw std::logic_error("USequence: parity recurrence disagrees with exact quotient at n=" +
                                   std::to_string(n));
    }

    RecurrenceParams params_;
    WSequence ws_;
    std::vector<RatPoly> polys_;
    RatPoly a_power_{Rational(1)};
    unsigned cap_;
};

inline RatPoly gen_U(const RecurrenceParams& params, unsigned n) {
    return USequence(params).at(n);
}

}  // namespace rootgeo
