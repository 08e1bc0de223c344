// rootgeo: exact root geometry of the degree-two polynomial recurrence
//   W_n(z) = (a z + b) W_{n-1}(z) + (c z + d) W_{n-2}(z),  W_0 = 1, W_1 = z
// with positive rational parameters. Subcommands generate the sequence,
// classify the family, isolate/approximate roots, and verify the interval
// count, interlacing, limit-set and real-zero-onset statements exactly.

#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootgeo/io.hpp"

using namespace rootgeo;

namespace {

struct CommonOpts {
    std::string a, b, c, d;
    std::string format = "json";
    std::string output;
    int digits = 15;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--a", o.a, "parameter a > 0 (rational: 3, 3/2, or 1.5)")->required();
    sub->add_option("--b", o.b, "parameter b > 0")->required();
    sub->add_option("--c", o.c, "parameter c > 0")->required();
    sub->add_option("--d", o.d, "parameter d > 0")->required();
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", o.output, "write to this file instead of stdout");
    sub->add_option("--digits", o.digits, "significant digits for floating output")
        ->check(CLI::Range(1, 17));
}

RecurrenceParams parse_params(const CommonOpts& o) {
    return RecurrenceParams(Rational::parse(o.a), Rational::parse(o.b), Rational::parse(o.c),
                            Rational::parse(o.d));
}

class Out {
public:
    explicit Out(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(Out& out, const json& j) { out.stream() << j.dump(2) << "\n"; }

// key,value rows with dotted paths; arrays index numerically
void flatten_csv(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_csv(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(Out& out, const CommonOpts& o, const json& j) {
    if (o.format == "json") {
        emit_json(out, j);
    } else {
        out.stream() << "key,value\n";
        flatten_csv(j, "", out.stream());
    }
}

int run_gen(const CommonOpts& o, unsigned n) {
    RecurrenceParams p = parse_params(o);
    RatPoly w = gen_W(p, n);
    Out out(o.output);
    if (o.format == "csv") {
        out.stream() << "n,k,coefficient\n";
        for (std::size_t k = 0; k < w.coefficients().size(); ++k)
            out.stream() << n << ',' << k << ',' << w.coefficients()[k].str() << "\n";
    } else {
        emit_json(out, json{{"command", "gen"},
                            {"params", {{"a", o.a}, {"b", o.b}, {"c", o.c}, {"d", o.d}}},
                            {"n", n},
                            {"degree", w.degree()},
                            {"coefficients", to_json(w)}});
    }
    return 0;
}

int run_classify(const CommonOpts& o) {
    RecurrenceParams p = parse_params(o);
    json j{{"command", "classify"},
           {"family", to_json(classify_family(p))},
           {"critical_points", to_json(characteristic_data(p), o.digits)},
           {"limit_set", to_json(limit_set(p), o.digits)}};
    Out out(o.output);
    emit(out, o, j);
    return 0;
}

int run_roots(const CommonOpts& o, unsigned n_min, unsigned n_max, const std::string& mode,
              double tol) {
    RecurrenceParams p = parse_params(o);
    WSequence ws(p);
    bool want_exact = mode == "exact" || mode == "both";
    bool want_cloud = mode == "cloud" || mode == "both";
    Out out(o.output);

    if (o.format == "csv") {
        out.stream() << "n,re,im,radius,is_real,multiplicity\n";
        for (unsigned n = n_min; n <= n_max; ++n) {
            std::vector<ComplexRootApprox> rows;
            if (want_cloud) {
                rows = complex_roots(ws.at(n), tol);
            } else {
                for (auto& r : isolate_real_roots(ws.at(n))) {
                    r.refine_below(Rational::from_double(tol));
                    rows.push_back({r.midpoint().to_double(), 0.0, r.width().to_double(),
                                    r.multiplicity});
                }
            }
            for (const auto& r : rows)
                out.stream() << n << ',' << format_double(r.re, o.digits) << ','
                             << format_double(r.im, o.digits) << ','
                             << format_double(r.radius, o.digits) << ',' << (r.is_real() ? 1 : 0)
                             << ',' << r.multiplicity << "\n";
        }
        return 0;
    }

    json per_n = json::array();
    for (unsigned n = n_min; n <= n_max; ++n) {
        json entry{{"n", n}};
        if (want_exact) {
            json iso = json::array();
            for (auto& r : isolate_real_roots(ws.at(n))) {
                r.refine_below(Rational::from_double(tol));
                iso.push_back(to_json(r, o.digits));
            }
            entry["real_roots"] = iso;
        }
        if (want_cloud) {
            json cloud = json::array();
            for (const auto& r : complex_roots(ws.at(n), tol))
                cloud.push_back(to_json(r, o.digits));
            entry["cloud"] = cloud;
        }
        per_n.push_back(entry);
    }
    emit_json(out, json{{"command", "roots"}, {"results", per_n}});
    return 0;
}

struct VerifyToggles {
    bool rec2 = true;
    bool gf = true;
    bool signs = true;
    bool closed = true;
};

int run_verify(const CommonOpts& o, unsigned n_max, const VerifyToggles& t) {
    RecurrenceParams p = parse_params(o);
    json j{{"command", "verify"}, {"n_max", n_max}};
    bool ok = true;

    if (t.rec2 && n_max >= 4) {
        ConsistencyReport rec2 = verify_rec2(p, n_max);
        j["rec2"] = to_json(rec2);
        ok = ok && rec2.ok();
    }
    if (t.gf) {
        ConsistencyReport gf = gf_check(p, n_max);
        j["generating_function"] = to_json(gf);
        ok = ok && gf.ok();
    }

    CriticalPoints cp = characteristic_data(p);
    WSequence ws(p);
    if (t.signs) {
        json signs{{"checked", 0}, {"failures", json::array()}};
        unsigned checked = 0;
        for (unsigned n = 0; n <= n_max; ++n) {
            try {
                sign_at_xA(p, n, true);
            } catch (const std::logic_error&) {
                signs["failures"].push_back(json{{"point", "x_A"}, {"n", n}});
                ok = false;
            }
            ++checked;
            if (cp.x_delta_minus) {
                int predicted = predicted_sign_at_xdelta(p, Sign::minus, n);
                if (predicted != poly_eval(ws.at(n), *cp.x_delta_minus).sign()) {
                    signs["failures"].push_back(json{{"point", "x_delta_minus"}, {"n", n}});
                    ok = false;
                }
                ++checked;
                if (p.regime() > 0) {
                    if (predicted_sign_at_xdelta(p, Sign::plus, n) !=
                        poly_eval(ws.at(n), *cp.x_delta_plus).sign()) {
                        signs["failures"].push_back(json{{"point", "x_delta_plus"}, {"n", n}});
                        ok = false;
                    }
                    ++checked;
                }
            }
        }
        signs["checked"] = checked;
        j["sign_tables"] = signs;
    }

    if (t.closed) {
        json closed{{"checked", 0}, {"failures", json::array()}};
        unsigned cchecked = 0;
        for (unsigned n = 1; n <= n_max; ++n) {
            for (Sign s : {Sign::minus, Sign::plus}) {
                if (cp.x_g_minus) {
                    try {
                        closed_value_at_xg(p, s, n, true);
                    } catch (const std::logic_error&) {
                        closed["failures"].push_back(json{{"point", "x_g"}, {"n", n}});
                        ok = false;
                    }
                    ++cchecked;
                }
                if (cp.x_delta_minus) {
                    try {
                        closed_value_at_xdelta(p, s, n, true);
                    } catch (const std::logic_error&) {
                        closed["failures"].push_back(json{{"point", "x_delta"}, {"n", n}});
                        ok = false;
                    }
                    ++cchecked;
                }
            }
        }
        closed["checked"] = cchecked;
        j["closed_values"] = closed;

        if (cp.n_minus && cp.n_plus) {
            QuadExt diff = *cp.n_plus - *cp.n_minus;
            QuadExt rhs = QuadExt(Rational(8) * p.b) * QuadExt::sqrt(cp.delta_delta) /
                          (QuadExt(p.a * p.a) * *cp.h_at_xd_minus * *cp.h_at_xd_plus);
            bool id_ok = QuadExt::compare(diff, rhs) == 0;
            j["n_difference_identity"] = id_ok;
            ok = ok && id_ok;
        }
    }

    j["ok"] = ok;
    Out out(o.output);
    emit(out, o, j);
    return ok ? 0 : 1;
}

int run_interlace(const CommonOpts& o, unsigned n_max) {
    RecurrenceParams p = parse_params(o);
    if (p.regime() > 0) {
        std::cerr << "interlace: ad > bc, so the interval-count and interlacing statements do "
                     "not apply; the real-zero onset analysis does (use `onset`).\n";
        return 2;
    }
    InterlacingReport rep =
        p.regime() < 0 ? verify_interlacing(p, n_max) : verify_equal_case(p, n_max);
    json j{{"command", "interlace"},
           {"regime", p.regime() < 0 ? "strict" : "equal"},
           {"report", to_json(rep)}};
    Out out(o.output);
    emit(out, o, j);
    return rep.ok() ? 0 : 1;
}

int run_limits(const CommonOpts& o, unsigned n, double tol) {
    RecurrenceParams p = parse_params(o);
    CriticalPoints cp = characteristic_data(p);
    LimitSetDescriptor L = limit_set(p);
    bool ok = true;

    json verdicts = json::array();
    auto record = [&](const char* name, const QuadExt& x, int expect_member) {
        BkwVerdict v = bkw_classify_exact(p, x);
        json row = to_json(v, o.digits);
        row["point_name"] = name;
        if (expect_member >= 0) {
            bool pass = v.member == (expect_member == 1);
            row["expected_member"] = expect_member == 1;
            row["pass"] = pass;
            ok = ok && pass;
        }
        verdicts.push_back(row);
    };

    record("x_A", QuadExt(cp.x_A), 1);  // a limit of zeros in every regime
    if (cp.x_delta_minus) {
        record("x_delta_minus", *cp.x_delta_minus, 1);
        record("x_delta_plus", *cp.x_delta_plus, 1);
    }
    if (p.regime() < 0) {
        // full description available: isolated points are members, and x_g
        // points that the case analysis excludes are not
        bool minus_isolated = false, plus_isolated = false;
        for (const QuadExt& q : L.isolated_points) {
            if (QuadExt::compare(q, *cp.x_g_minus) == 0) minus_isolated = true;
            if (QuadExt::compare(q, *cp.x_g_plus) == 0) plus_isolated = true;
        }
        bool minus_on_interval = QuadExt::compare(*cp.x_g_minus, *cp.x_delta_minus) == 0;
        record("x_g_minus", *cp.x_g_minus, minus_isolated || minus_on_interval ? 1 : 0);
        record("x_g_plus", *cp.x_g_plus, plus_isolated ? 1 : 0);
        // sampled interior points of the critical interval
        double lo = cp.x_delta_minus->to_double(), hi = cp.x_delta_plus->to_double();
        unsigned member_samples = 0;
        for (int k = 1; k < 20; ++k) {
            BkwVerdict v = bkw_classify(p, {lo + (hi - lo) * k / 20.0, 0.0});
            if (v.member) ++member_samples;
        }
        json interior{{"samples", 19}, {"members", member_samples}};
        ok = ok && member_samples == 19;
        json j_int = interior;
        verdicts.push_back(json{{"point_name", "interval_interior"}, {"detail", j_int},
                                {"pass", member_samples == 19}});
    } else {
        if (cp.x_g_minus) {
            record("x_g_minus", *cp.x_g_minus, -1);
            record("x_g_plus", *cp.x_g_plus, -1);
        }
    }

    EmpiricalCloud cloud = empirical_limits(p, n, tol);
    json j{{"command", "limits"},
           {"family", to_json(classify_family(p))},
           {"limit_set", to_json(L, o.digits)},
           {"bkw", verdicts},
           {"empirical", to_json(cloud, o.digits)},
           {"ok", ok}};

    Out out(o.output);
    if (o.format == "csv") {
        std::vector<ComplexRootApprox> roots;
        std::vector<double> dist;
        for (const auto& pt : cloud.points) {
            roots.push_back(pt.root);
            dist.push_back(pt.distance);
        }
        write_cloud_csv(out.stream(), cloud.n, roots, o.digits, &dist);
    } else {
        emit_json(out, j);
    }
    return ok ? 0 : 1;
}

int run_onset(const CommonOpts& o, unsigned n_max) {
    RecurrenceParams p = parse_params(o);
    if (p.regime() <= 0) {
        std::cerr << "onset: ad <= bc, so every polynomial in the family is real-rooted and "
                     "the onset analysis does not apply; the interval-count and interlacing "
                     "statements do (use `interlace`).\n";
        return 2;
    }
    OnsetTable table = real_zero_onset(p, n_max);
    Out out(o.output);
    if (o.format == "csv") {
        out.stream() << "n,distinct,with_multiplicity,asserted,count_ok,location_ok\n";
        for (const auto& row : table.rows)
            out.stream() << row.n << ',' << row.distinct << ',' << row.with_multiplicity << ','
                         << row.asserted << ',' << row.count_ok << ','
                         << (row.location_ok ? (*row.location_ok ? "1" : "0") : "") << "\n";
    } else {
        emit_json(out, json{{"command", "onset"}, {"table", to_json(table)}});
    }
    return table.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rootgeo: exact root geometry of W_n(z) = (a z + b) W_{n-1} + (c z + d) W_{n-2}.\n"
        "The degree cap for sequence generation defaults to 200; the ROOTGEO_MAX_N\n"
        "environment variable overrides it."};
    app.require_subcommand(1);

    CommonOpts o;
    unsigned gen_n = 0;
    auto* gen = app.add_subcommand("gen", "emit the exact coefficients of W_n");
    add_common(gen, o);
    gen->add_option("--n", gen_n, "index of the polynomial")->required();

    auto* classify = app.add_subcommand(
        "classify", "family class, critical points, and the limit-of-zeros set");
    add_common(classify, o);

    unsigned roots_n = 0, roots_min = 0, roots_max = 0;
    std::string roots_mode = "both";
    double roots_tol = 1e-10;
    auto* roots = app.add_subcommand("roots", "exact real-root isolation and complex root cloud");
    add_common(roots, o);
    auto* opt_n = roots->add_option("--n", roots_n, "single index");
    auto* opt_min = roots->add_option("--n-min", roots_min, "range start");
    auto* opt_max = roots->add_option("--n-max", roots_max, "range end");
    roots->add_option("--mode", roots_mode, "exact | cloud | both")
        ->check(CLI::IsMember({"exact", "cloud", "both"}));
    roots->add_option("--tol", roots_tol, "target accuracy for approximations");

    unsigned verify_n = 10;
    VerifyToggles toggles;
    auto* verify = app.add_subcommand(
        "verify", "cross-validate generation: order-four recurrence, generating function, "
                  "sign tables, closed values");
    add_common(verify, o);
    verify->add_option("--n-max", verify_n, "verify up to this index");
    verify->add_flag("!--no-rec2", toggles.rec2, "skip the order-four recurrence check");
    verify->add_flag("!--no-gf", toggles.gf, "skip the generating-function check");
    verify->add_flag("!--no-signs", toggles.signs, "skip the sign-table checks");
    verify->add_flag("!--no-closed", toggles.closed, "skip the closed-value checks");

    unsigned inter_n = 10;
    auto* inter = app.add_subcommand(
        "interlace", "interval counts and strict interlacing (regime selected automatically)");
    add_common(inter, o);
    inter->add_option("--n-max", inter_n, "check up to this index");

    unsigned limits_n = 40;
    double limits_tol = 1e-10;
    auto* limits = app.add_subcommand(
        "limits", "Beraha-Kahane-Weiss verdicts at the critical points plus an empirical "
                  "root cloud against the limit set");
    add_common(limits, o);
    limits->add_option("--n", limits_n, "cloud index");
    limits->add_option("--tol", limits_tol, "root approximation tolerance");

    unsigned onset_n = 20;
    auto* onset = app.add_subcommand(
        "onset", "real-zero counts and the guaranteed-onset checks for ad > bc");
    add_common(onset, o);
    onset->add_option("--n-max", onset_n, "tabulate up to this index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) return run_gen(o, gen_n);
        if (classify->parsed()) return run_classify(o);
        if (roots->parsed()) {
            if (*opt_n) {
                roots_min = roots_max = roots_n;
            } else if (!*opt_min || !*opt_max) {
                std::cerr << "roots: provide --n or both --n-min and --n-max\n";
                return 2;
            }
            if (roots_min > roots_max) {
                std::cerr << "roots: --n-min must not exceed --n-max\n";
                return 2;
            }
            return run_roots(o, roots_min, roots_max, roots_mode, roots_tol);
        }
        if (verify->parsed()) return run_verify(o, verify_n, toggles);
        if (inter->parsed()) return run_interlace(o, inter_n);
        if (limits->parsed()) return run_limits(o, limits_n, limits_tol);
        if (onset->parsed()) return run_onset(o, onset_n);
    } catch (const WrongRegime& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "index out of range: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
