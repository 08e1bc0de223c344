#pragma once

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rootgeo/closed_forms.hpp"
#include "rootgeo/complex_roots.hpp"
#include "rootgeo/interlacing.hpp"
#include "rootgeo/limits.hpp"
#include "rootgeo/poly.hpp"
#include "rootgeo/quadext.hpp"
#include "rootgeo/rational.hpp"
#include "rootgeo/sequence.hpp"
#include "rootgeo/sturm.hpp"

namespace rootgeo {

using json = nlohmann::json;

// Format / round to the requested significant digits so the JSON and CSV
// emitters carry identical numeric content.
inline std::string format_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

inline double round_digits(double v, int digits) {
    return std::strtod(format_double(v, digits).c_str(), nullptr);
}

inline json to_json(const Rational& r) { return r.str(); }

// Symbolic fields plus a floating approximation.
inline json to_json(const QuadExt& x, int digits = 15) {
    return json{{"q0", x.q0().str()},
                {"q1", x.q1().str()},
                {"radicand", x.radicand().str()},
                {"approx", round_digits(x.to_double(), digits)}};
}

// Coefficient strings, lowest degree first.
inline json to_json(const RatPoly& p) {
    json arr = json::array();
    for (const Rational& c : p.coefficients()) arr.push_back(c.str());
    return arr;
}

inline RatPoly poly_from_json(const json& arr) {
    std::vector<Rational> coeffs;
    for (const auto& item : arr) coeffs.push_back(Rational::parse(item.get<std::string>()));
    return RatPoly(std::move(coeffs));
}

inline json to_json(const CriticalPoints& cp, int digits = 15) {
    json j;
    j["x_A"] = cp.x_A.str();
    j["x_B"] = cp.x_B.str();
    j["delta_delta"] = cp.delta_delta.str();
    j["delta_g"] = cp.delta_g.str();
    auto put = [&](const char* key, const std::optional<QuadExt>& v) {
        if (v) j[key] = to_json(*v, digits);
    };
    put("x_delta_minus", cp.x_delta_minus);
    put("x_delta_plus", cp.x_delta_plus);
    put("x_g_minus", cp.x_g_minus);
    put("x_g_plus", cp.x_g_plus);
    if (cp.x_h) j["x_h"] = cp.x_h->str();
    put("h_at_x_delta_minus", cp.h_at_xd_minus);
    put("h_at_x_delta_plus", cp.h_at_xd_plus);
    put("n_minus", cp.n_minus);
    put("n_plus", cp.n_plus);
    put("u", cp.u);
    put("v", cp.v);
    return j;
}

inline json to_json(const FamilyClass& fc) {
    json j;
    j["tag"] = family_tag_name(fc.tag);
    if (fc.threshold_N) j["threshold_N"] = *fc.threshold_N;
    if (fc.guarantee)
        j["guarantee"] = *fc.guarantee == GuaranteeKind::two_zeros_outside ? "two_zeros_outside"
                                                                           : "zero_between";
    return j;
}

inline json to_json(const LimitSetDescriptor& d, int digits = 15) {
    json j;
    if (d.interval) {
        j["interval"] = json{{"lo", to_json(d.interval->first, digits)},
                             {"hi", to_json(d.interval->second, digits)}};
    }
    json iso = json::array();
    for (const QuadExt& p : d.isolated_points) iso.push_back(to_json(p, digits));
    j["isolated_points"] = iso;
    if (d.case_tag) j["case"] = limit_case_name(*d.case_tag);
    json anchors = json::array();
    for (const QuadExt& p : d.always_nonisolated) anchors.push_back(to_json(p, digits));
    j["always_nonisolated"] = anchors;
    return j;
}

inline json to_json(const ConsistencyReport& r) {
    return json{{"check", r.check}, {"n_checked", r.n_checked}, {"failures", r.failures},
                {"ok", r.ok()}};
}

inline json to_json(const IsolatedRealRoot& r, int digits = 15) {
    json j;
    j["multiplicity"] = r.multiplicity;
    if (r.is_exact) {
        j["exact"] = r.point().str();
        j["approx"] = round_digits(r.point().to_double(), digits);
    } else {
        j["lo"] = r.lo.str();
        j["hi"] = r.hi.str();
        j["approx"] = round_digits(r.midpoint().to_double(), digits);
    }
    return j;
}

inline json to_json(const ComplexRootApprox& r, int digits = 15) {
    return json{{"re", round_digits(r.re, digits)},
                {"im", round_digits(r.im, digits)},
                {"radius", round_digits(r.radius, digits)},
                {"is_real", r.is_real()},
                {"multiplicity", r.multiplicity}};
}

inline json to_json(const InterlacingReport& rep) {
    json j;
    json counts = json::array();
    for (const CountRow& row : rep.counts)
        counts.push_back(json{{"n", row.n}, {"counts", row.counts}, {"expected", row.expected},
                              {"ok", row.ok}});
    j["counts"] = counts;
    json inter = json::array();
    for (const InterlaceCheck& c : rep.interlacing)
        inter.push_back(json{{"n", c.n}, {"k", c.k}, {"interval", c.where},
                             {"direction", c.from_left ? "left" : "right"}, {"ok", c.ok},
                             {"detail", c.detail}});
    j["interlacing"] = inter;
    if (!rep.multiplicities.empty()) {
        json mult = json::array();
        for (const MultiplicityRow& m : rep.multiplicities)
            mult.push_back(json{{"n", m.n}, {"observed", m.observed}, {"expected", m.expected},
                                {"ok", m.ok}});
        j["multiplicities"] = mult;
    }
    json ext = json::array();
    for (const InterlaceCheck& c : rep.extended)
        ext.push_back(json{{"n", c.n}, {"interval", c.where}, {"ok", c.ok}, {"detail", c.detail}});
    j["extended"] = ext;
    j["failures"] = rep.failures;
    j["ok"] = rep.ok();
    j["extended_ok"] = rep.extended_ok();
    return j;
}

inline json to_json(const BkwVerdict& v, int digits = 15) {
    return json{{"re", round_digits(v.point.real(), digits)},
                {"im", round_digits(v.point.imag(), digits)},
                {"f", round_digits(v.f_value, digits)},
                {"alpha_minus_re", round_digits(v.alpha_minus.real(), digits)},
                {"alpha_minus_im", round_digits(v.alpha_minus.imag(), digits)},
                {"alpha_plus_re", round_digits(v.alpha_plus.real(), digits)},
                {"alpha_plus_im", round_digits(v.alpha_plus.imag(), digits)},
                {"member", v.member},
                {"via", bkw_condition_name(v.via)},
                {"exact", v.exact}};
}

inline json to_json(const EmpiricalCloud& c, int digits = 15) {
    json pts = json::array();
    for (const CloudPoint& p : c.points) {
        json row = to_json(p.root, digits);
        row["distance"] = round_digits(p.distance, digits);
        pts.push_back(row);
    }
    return json{{"n", c.n},
                {"full_limit_set", c.full_limit_set},
                {"max_distance", round_digits(c.max_distance, digits)},
                {"points", pts}};
}

inline json to_json(const OnsetTable& t) {
    json rows = json::array();
    for (const OnsetRow& r : t.rows) {
        json row{{"n", r.n}, {"distinct", r.distinct}, {"with_multiplicity", r.with_multiplicity},
                 {"asserted", r.asserted}, {"count_ok", r.count_ok}};
        if (r.location_ok) row["location_ok"] = *r.location_ok;
        rows.push_back(row);
    }
    return json{{"family", to_json(t.family)}, {"rows", rows}, {"ok", t.ok()}};
}

// Root clouds as CSV: one row per root, numbers rounded like the JSON emitter.
inline void write_cloud_csv(std::ostream& os, unsigned n,
                            const std::vector<ComplexRootApprox>& roots, int digits = 15,
                            const std::vector<double>* distances = nullptr) {
    os << "n,re,im,radius,is_real,multiplicity";
    if (distances) os << ",distance";
    os << "\n";
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const ComplexRootApprox& r = roots[i];
        os << n << ',' << format_double(r.re, digits) << ',' << format_double(r.im, digits) << ','
           << format_double(r.radius, digits) << ',' << (r.is_real() ? 1 : 0) << ','
           << r.multiplicity;
        if (distances) os << ',' << format_double((*distances)[i], digits);
        os << "\n";
    }
}

}  // namespace rootgeo
