#pragma once

// Command-line front end. Kept in a header so tests can call run() directly.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rankzeta/rankzeta.hpp"

namespace rankzeta::cli {

using nlohmann::json;

struct Globals {
    std::uint64_t max_enum = default_enum_cap;
    unsigned threads = 1;
    bool json_out = false;
    bool allow_wide = false;
};

struct Input {
    std::optional<RankCode> code;
    WeightDistribution dist;
    std::optional<WeightDistribution> dual_dist;  // when the dual was enumerable
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot write '" + path + "'");
    out << body;
}

inline bool starts_with_magic(const std::string& text, const std::string& magic) {
    for (const auto& l : detail::split_lines(text)) {
        if (l.text.empty()) continue;
        return detail::tokens(l.text).front() == magic;
    }
    return false;
}

inline RankCode load_code(const std::string& path, const Globals& g) {
    const std::string text = read_file(path);
    if (!starts_with_magic(text, "rmc")) throw ParseError(1, "'" + path + "' is not an rmc file");
    return parse_rmc(text, g.allow_wide);
}

inline Input load_input(const std::string& path, const Globals& g) {
    const std::string text = read_file(path);
    if (starts_with_magic(text, "rdist")) return Input{std::nullopt, parse_rdist(text, g.allow_wide), std::nullopt};
    if (!starts_with_magic(text, "rmc")) throw ParseError(1, "'" + path + "' is neither an rmc nor an rdist file");
    RankCode C = parse_rmc(text, g.allow_wide);
    WeightDistribution W = weight_distribution(C, g.threads, g.max_enum);
    std::optional<WeightDistribution> dual;
    const long long dual_dim = static_cast<long long>(C.m() * C.n() - C.k());
    if (ipow(C.q(), static_cast<unsigned long>(dual_dim)) <= g.max_enum) {
        dual = weight_distribution(dual_code(C), g.threads, g.max_enum);
        W.params().d_dual = dual->params().d;
    }
    return Input{std::move(C), std::move(W), std::move(dual)};
}

inline std::vector<FieldElem> parse_vector(const std::string& s, const FieldSpec& F, std::size_t n) {
    std::vector<FieldElem> v;
    if (s.find(',') != std::string::npos) {
        for (const auto& t : detail::tokens(s, ',')) {
            const long long x = detail::parse_int(t, 0, "vector entry");
            if (x >= static_cast<long long>(F.order())) throw InvalidParameter("vector entry " + t + " outside the field");
            v.push_back(FieldElem{static_cast<std::uint32_t>(x)});
        }
    } else {
        for (char c : s) {
            if (c < '0' || c > '9' || static_cast<std::uint32_t>(c - '0') >= F.order())
                throw InvalidParameter("invalid vector '" + s + "' (use digits like 001 or a comma list)");
            v.push_back(FieldElem{static_cast<std::uint32_t>(c - '0')});
        }
    }
    if (v.size() != n) throw InvalidParameter("vector '" + s + "' must have " + std::to_string(n) + " entries");
    return v;
}

// ---------------------------------------------------------------------------
// JSON helpers; rationals are strings.

inline json rat_list(const std::vector<Rat>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json params_json(const CodeParams& p) {
    json j{{"q", p.q}, {"m", p.m}, {"n", p.n}, {"k", p.k}, {"d", p.d}};
    j["d_dual"] = p.d_dual ? json(*p.d_dual) : json(nullptr);
    return j;
}

inline json zeta_json(const ZetaPolynomial& z) {
    json j{{"P", z.P.to_string("T")}, {"coefficients", rat_list(z.P.coefficients())}, {"degree", z.degree()}, {"d", z.d},
           {"mass", z.mass.str()}};
    j["d_dual"] = z.d_dual ? json(*z.d_dual) : json(nullptr);
    return j;
}

inline json roots_json(const RootReport& r) {
    json a = json::array();
    for (const auto& e : r.roots)
        a.push_back({{"re", e.z.re.str()}, {"im", e.z.im.str()}, {"abs", e.z.abs().str()}, {"multiplicity", e.multiplicity},
                     {"abs_times_qm_half", e.abs_scaled}, {"critical", e.critical}, {"residual", e.residual}});
    json pairs = json::array();
    for (const auto& p : r.pairing) pairs.push_back({{"a", p.a}, {"b", p.b}, {"error", p.error}});
    return {{"roots", a}, {"pairing", pairs}, {"pairing_total", r.pairing_total}, {"precision_bits", r.precision}};
}

inline std::string distribution_string(const WeightDistribution& W) {
    std::string s;
    for (std::size_t t = 0; t < W.counts().size(); ++t) s += (t ? "," : "") + W.counts()[t].str();
    return s;
}

// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

/// Cross-module identities for one distribution; throws Inconsistency on failure.
inline std::vector<Check> cross_checks(const Input& in, const ZetaPolynomial& zp, const MomentVector& mv, const Globals& g) {
    std::vector<Check> out;
    auto add = [&](const std::string& name, bool ok, const std::string& why = {}) {
        out.push_back({name, ok, why});
        if (!ok) throw Inconsistency(name + (why.empty() ? "" : ": " + why));
    };
    const auto& W = in.dist;
    add("P(1) = 1", zp.P(Rat(1)) == 1);
    const auto dec = mrd_decomposition(W);
    add("MRD decomposition equals zeta coefficients", dec == zp.P.padded(dec.size()));
    add("enumerator from zeta reproduces W", enumerator_from_zeta(zp) == W.enumerator());
    add("moments from zeta series", b_from_zeta(zp, mv.b.size()) == mv.b);
    const ZetaPolynomial dz = dual_zeta(zp);
    if (dz.d <= dz.n) add("dual zeta is an involution", dual_zeta(dz) == zp);
    if (W.params().d_dual) {
        add("degree matches n - d - d_dual + 2", zp.degree() == W.params().n - W.params().d - *W.params().d_dual + 2);
        const auto v = boundary_check(mv);
        add("boundary moments", v.empty(), v.empty() ? "" : v.front());
    }
    if (in.dual_dist && in.dual_dist->params().d <= in.dual_dist->params().n)
        add("dual zeta matches the enumerated dual code", zeta_from_distribution(*in.dual_dist).P == dz.P);
    if (in.code) {
        Integer subspaces = 0;
        for (long long u = 0; u <= W.params().n; ++u) subspaces += qbin_integer(W.params().n, u, W.params().q);
        if (subspaces <= 4096) add("direct moments equal distribution moments", moments_direct(*in.code).B == mv.B);
        add("Singleton bound", W.params().k <= W.params().m * (W.params().n - W.params().d + 1));
    }
    if (W.params().d < W.params().n) add("distance bound holds", distance_bound(zp).satisfied);
    (void)g;
    return out;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zeta functions of rank-metric codes", "rankzeta"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--max-enum", g.max_enum, "Largest codeword count to enumerate")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for enumeration")->capture_default_str();
    app.add_flag("--json", g.json_out, "Machine-readable output");
    app.add_flag("--allow-wide", g.allow_wide, "Accept codes with n > m");

    std::string file;
    auto* analyze = app.add_subcommand("analyze", "Full report with cross-checks");
    analyze->add_option("file", file, ".rmc or .rdist input")->required();
    auto* zeta = app.add_subcommand("zeta", "Zeta polynomial");
    zeta->add_option("file", file)->required();
    auto* dual = app.add_subcommand("dual", "Zeta polynomial of the dual code");
    dual->add_option("file", file)->required();

    auto* roots = app.add_subcommand("roots", "Complex zeros of the zeta polynomial");
    roots->add_option("file", file)->required();
    std::string csv_path, svg_path;
    long precision = 256;
    double tol = 1e-8;
    roots->add_option("--csv", csv_path, "Write roots as CSV");
    roots->add_option("--svg", svg_path, "Write a scatter plot");
    roots->add_option("--precision-bits", precision)->capture_default_str();
    roots->add_option("--tol", tol, "Criticality tolerance")->capture_default_str();

    auto* mrd = app.add_subcommand("mrd", "MRD enumerators");
    long long q = 2, m = 1, n = 1, d = 1;
    bool want_enum = false, want_norm = false, want_zeta = false;
    mrd->add_option("--q", q)->required();
    mrd->add_option("--m", m)->required();
    mrd->add_option("--n", n)->required();
    mrd->add_option("--d", d)->required();
    auto* f_enum = mrd->add_flag("--enumerator", want_enum);
    auto* f_norm = mrd->add_flag("--normalized", want_norm);
    auto* f_zeta = mrd->add_flag("--zeta", want_zeta);
    f_enum->excludes(f_norm)->excludes(f_zeta);
    f_norm->excludes(f_zeta);

    auto* construct = app.add_subcommand("construct", "Build codes and distributions");
    construct->require_subcommand(1);
    std::string out_path;
    auto* gab = construct->add_subcommand("gabidulin", "Gabidulin code (.rmc)");
    gab->add_option("--q", q)->required();
    gab->add_option("--m", m)->required();
    gab->add_option("--n", n)->required();
    gab->add_option("--d", d)->required();
    gab->add_option("-o,--output", out_path, "Output file (default: standard output)");
    auto* full = construct->add_subcommand("fullspace", "All m x n matrices");
    long long embed_degree = 1;
    bool as_rdist = false;
    full->add_option("--q", q)->required();
    full->add_option("--m", m)->required();
    full->add_option("--n", n)->required();
    full->add_option("--embed-degree", embed_degree, "Matrices over GF(q^c) embedded over GF(q)")->capture_default_str();
    full->add_flag("--rdist", as_rdist, "Write the analytic distribution instead of generators");
    full->add_option("-o,--output", out_path, "Output file (default: standard output)");
    auto* emb = construct->add_subcommand("embed", "Embed an extension-field code over its prime field");
    unsigned degree = 0;
    emb->add_option("file", file)->required();
    emb->add_option("--degree", degree)->required();
    emb->add_option("-o,--output", out_path, "Output file (default: standard output)");

    std::string hyperplane, hvec;
    auto* punc = app.add_subcommand("puncture", "Project onto the hyperplane v^perp");
    punc->add_option("file", file)->required();
    punc->add_option("--hyperplane", hyperplane, "Normal vector v of H = v^perp")->required();
    punc->add_option("-o,--output", out_path);
    auto* shor = app.add_subcommand("shorten", "Shorten at h, then project onto v^perp");
    shor->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    shor->add_option("file", file)->required();
    shor->add_option("--hyperplane", hyperplane)->required();
    shor->add_option("--h", hvec)->required();
    shor->add_option("-o,--output", out_path);

    auto* bound = app.add_subcommand("bound", "Minimum-distance bound from the zeta polynomial");
    bound->add_option("file", file)->required();
    auto* moments = app.add_subcommand("moments", "Binomial moments");
    bool direct = false;
    moments->add_option("file", file)->required();
    moments->add_flag("--direct-oracle", direct, "Also sum over all subspaces and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return static_cast<int>(ErrorKind::usage);
    }

    auto emit = [&](const json& j, const std::string& text) {
        if (g.json_out) out << j.dump(2) << "\n";
        else out << text;
    };

    try {
        if (*analyze) {
            const Input in = load_input(file, g);
            const MomentVector mv = moments_from_distribution(in.dist);
            const ZetaPolynomial zp = zeta_from_distribution(in.dist);
            const auto checks = cross_checks(in, zp, mv, g);
            const ZetaPolynomial dz = dual_zeta(zp);
            const NormalizedWE nw = normalized_we(in.dist);
            std::optional<DistanceBound> db;
            if (zp.d < zp.n) db = distance_bound(zp);
            std::optional<RootReport> rr;
            if (zp.degree() >= 1) rr = classify_critical(find_roots(zp.P), zp.q, zp.m);

            json j;
            CodeParams p = in.dist.params();
            if (!p.d_dual) p.d_dual = zp.d_dual;
            j["params"] = params_json(p);
            j["distribution"] = rat_list(in.dist.enumerator().coefficients());
            j["enumerator"] = in.dist.enumerator().to_string();
            j["moments"] = {{"B", rat_list(mv.B)}, {"b", rat_list(mv.b)}, {"average_cardinalities", rat_list(mv.average_cardinalities())}};
            j["zeta"] = zeta_json(zp);
            j["dual_zeta"] = zeta_json(dz);
            j["mrd_decomposition"] = rat_list(mrd_decomposition(in.dist));
            j["normalized_enumerator"] = nw.poly.to_string("T");
            j["distance_bound"] = db ? json{{"a", db->a.str()}, {"argument", db->argument.str()}, {"value", db->value}, {"satisfied", db->satisfied}}
                                     : json(nullptr);
            j["roots"] = rr ? roots_json(*rr) : json(nullptr);
            json cj = json::array();
            for (const auto& c : checks) cj.push_back({{"name", c.name}, {"ok", c.ok}});
            j["checks"] = cj;

            std::ostringstream t;
            t << "code: q=" << p.q << " m=" << p.m << " n=" << p.n << " k=" << p.k << " d=" << p.d;
            if (p.d_dual) t << " d_dual=" << *p.d_dual;
            t << "\n";
            t << "W(x,y) = " << in.dist.enumerator().to_string() << "\n";
            t << "b = (";
            for (std::size_t i = 0; i < mv.b.size(); ++i) t << (i ? ", " : "") << mv.b[i];
            t << ")\n";
            t << "P(T) = " << zp.P.to_string("T") << "\n";
            t << "dual P(T) = " << dz.P.to_string("T") << "  (d = " << dz.d << ")\n";
            t << "normalized W(T) = " << nw.poly.to_string("T") << "\n";
            if (db) t << "distance bound: d <= " << db->value << (db->satisfied ? "" : "  VIOLATED") << "\n";
            if (rr) {
                t << "zeros:\n";
                for (const auto& e : rr->roots)
                    t << "  " << e.z.re.str() << (e.z.im.sign() < 0 ? " - " : " + ") << e.z.im.abs().str() << "i"
                      << (e.multiplicity > 1 ? "  (x" + std::to_string(e.multiplicity) + ")" : "") << "  |z|q^(m/2) = " << e.abs_scaled
                      << (e.critical ? "  critical" : "") << "\n";
            }
            t << "checks: " << checks.size() << " passed\n";
            emit(j, t.str());
        } else if (*zeta) {
            const Input in = load_input(file, g);
            const ZetaPolynomial zp = zeta_from_distribution(in.dist);
            emit(zeta_json(zp), "P(T) = " + zp.P.to_string("T") + "\n");
        } else if (*dual) {
            const Input in = load_input(file, g);
            const ZetaPolynomial dz = dual_zeta(zeta_from_distribution(in.dist));
            emit(zeta_json(dz), "P_dual(T) = " + dz.P.to_string("T") + "\ndual minimum distance: " + std::to_string(dz.d) + "\n");
        } else if (*roots) {
            const Input in = load_input(file, g);
            const ZetaPolynomial zp = zeta_from_distribution(in.dist);
            const RootReport rr = classify_critical(find_roots(zp.P, precision), zp.q, zp.m, tol);
            if (!csv_path.empty()) write_file(csv_path, roots_csv(rr));
            if (!svg_path.empty()) write_file(svg_path, roots_svg(rr));
            emit(roots_json(rr), roots_csv(rr));
        } else if (*mrd) {
            const BiHomPoly W = mrd_enumerator(q, m, n, d);
            if (want_norm) {
                const auto nw = normalized_we(W, q, m);
                emit(json{{"normalized", nw.poly.to_string("T")}, {"coefficients", rat_list(nw.poly.coefficients())}}, nw.poly.to_string("T") + "\n");
            } else if (want_zeta) {
                if (d > n) throw InvalidParameter("the trivial code has no zeta polynomial");
                const auto zp = zeta_from_enumerator(W, q, m);
                emit(zeta_json(zp), zp.P.to_string("T") + "\n");
            } else {
                emit(json{{"enumerator", W.to_string()}, {"coefficients", rat_list(W.coefficients())}}, W.to_string() + "\n");
            }
        } else if (*construct) {
            std::string body;
            if (*gab) {
                body = serialize_rmc(construct_gabidulin(q, m, n, d));
            } else if (*full) {
                if (embed_degree < 1) throw InvalidParameter("--embed-degree must be positive");
                if (as_rdist) {
                    if (embed_degree == 1) body = serialize_rdist(full_space_distribution(q, m, n, g.allow_wide));
                    else {
                        if (m != n) throw InvalidParameter("embedded full space needs m = n");
                        body = serialize_rdist(embedded_full_space_distribution(q, embed_degree, n));
                    }
                } else {
                    const auto [p, e] = FieldSpec::split_prime_power(static_cast<std::uint64_t>(q));
                    const FieldSpec F = FieldSpec::make(static_cast<std::uint32_t>(p), e * static_cast<unsigned>(embed_degree));
                    RankCode C = RankCode::full(F, static_cast<std::size_t>(m), static_cast<std::size_t>(n), g.allow_wide);
                    if (embed_degree > 1) C = embed_extension(C, static_cast<unsigned>(embed_degree));
                    body = serialize_rmc(C);
                }
            } else if (*emb) {
                body = serialize_rmc(embed_extension(load_code(file, g), degree));
            }
            if (out_path.empty()) out << body;
            else write_file(out_path, body);
        } else if (*punc || *shor) {
            const RankCode C = load_code(file, g);
            const Subspace H = hyperplane_of(C.spec(), parse_vector(hyperplane, C.spec(), C.n()));
            const RankCode R = *punc ? puncture(C, H) : shorten_proj(C, parse_vector(hvec, C.spec(), C.n()), H);
            const WeightDistribution W = weight_distribution(R, g.threads, g.max_enum);
            if (!out_path.empty()) write_file(out_path, serialize_rmc(R));
            emit(json{{"params", params_json(W.params())}, {"distribution", distribution_string(W)}, {"enumerator", W.enumerator().to_string()}},
                 "W(x,y) = " + W.enumerator().to_string() + "\n");
        } else if (*bound) {
            const Input in = load_input(file, g);
            const ZetaPolynomial zp = zeta_from_distribution(in.dist);
            const DistanceBound b = distance_bound(zp);
            std::ostringstream t;
            t << "a = " << b.a << "\nd = " << zp.d << " <= " << b.value << (b.satisfied ? "" : "  VIOLATED") << "\n";
            emit(json{{"a", b.a.str()}, {"argument", b.argument.str()}, {"d", zp.d}, {"satisfied", b.satisfied}, {"value", b.value}}, t.str());
            if (!b.satisfied) throw Inconsistency("distance bound violated");
        } else if (*moments) {
            const Input in = load_input(file, g);
            const MomentVector mv = moments_from_distribution(in.dist);
            json j{{"B", rat_list(mv.B)}, {"b", rat_list(mv.b)}, {"average_cardinalities", rat_list(mv.average_cardinalities())}};
            std::ostringstream t;
            t << "B = (";
            for (std::size_t i = 0; i < mv.B.size(); ++i) t << (i ? ", " : "") << mv.B[i];
            t << ")\nb = (";
            for (std::size_t i = 0; i < mv.b.size(); ++i) t << (i ? ", " : "") << mv.b[i];
            t << ")\n";
            if (direct) {
                if (!in.code) throw InvalidParameter("--direct-oracle needs an .rmc code");
                const MomentVector md = moments_direct(*in.code);
                if (!(md.B == mv.B)) throw Inconsistency("direct subspace moments differ from the distribution formula");
                j["direct_oracle"] = "agree";
                t << "direct oracle: agree\n";
            }
            emit(j, t.str());
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return static_cast<int>(ErrorKind::resource_limit);
    }
    return 0;
}

}  // namespace rankzeta::cli
