#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "endo/verify/suite.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace endo;
using verify::Status;

namespace {

/// configuration or input problem: exit 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

void atomic_write(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp" + std::to_string(static_cast<long>(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw UsageError("cannot write " + tmp.string());
        f << content;
        if (!f.flush()) throw UsageError("write failed for " + tmp.string());
    }
    fs::rename(tmp, p);
}

std::string num(long double x) {
    if (std::fabs(x) < 1e-15L) x = 0;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12Lg", x);
    return buf;
}

json cnum(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

// ---------------------------------------------------------------- configuration

const std::map<std::string, std::vector<std::string>> kKeys = {
    {"hitchin", {"a", "b", "sigma0", "w", "tol"}},
    {"spectral", {"genus", "N"}},
    {"endoscopy", {"p", "m", "a", "b", "torsion", "deg", "char_order", "char_index", "s_exp", "s_order", "samples"}},
    {"whittaker", {"p", "m", "a", "b", "torsion", "char_order", "char_index", "s_exp", "s_order", "D", "N", "window"}},
    {"fractional", {"group", "p", "a", "b", "torsion", "deg", "char_order", "char_index"}},
    {"verify-all", {}},
};
const std::vector<std::string> kCommon = {"command", "out", "seed", "csv", "svg", "cache_dir"};

struct Config {
    std::string command;
    json v = json::object();

    bool has(const std::string& k) const { return v.contains(k) && !v[k].is_null(); }
    std::string str(const std::string& k, const std::string& def) const {
        if (!has(k)) return def;
        const auto& x = v[k];
        if (x.is_string()) return x.get<std::string>();
        if (x.is_number_integer()) return std::to_string(x.get<long long>());
        if (x.is_number()) return num(x.get<double>());
        if (x.is_boolean()) return x.get<bool>() ? "true" : "false";
        throw UsageError("key '" + k + "' must be a string or number");
    }
    long long integer(const std::string& k, long long def) const {
        if (!has(k)) return def;
        const auto& x = v[k];
        if (x.is_number_integer()) return x.get<long long>();
        if (x.is_string()) {
            try {
                size_t pos = 0;
                long long r = std::stoll(x.get<std::string>(), &pos);
                if (pos == x.get<std::string>().size()) return r;
            } catch (...) {
            }
        }
        throw UsageError("key '" + k + "' must be an integer");
    }
    bool flag(const std::string& k) const {
        if (!has(k)) return false;
        if (v[k].is_boolean()) return v[k].get<bool>();
        throw UsageError("key '" + k + "' must be a boolean");
    }
    Rational rational(const std::string& k, const std::string& def) const {
        std::string s = str(k, def);
        try {
            return parse_rational(s);
        } catch (...) {
            throw UsageError("key '" + k + "' is not a rational number: " + s);
        }
    }
};

void validate_keys(const Config& c) {
    auto it = kKeys.find(c.command);
    if (it == kKeys.end()) throw UsageError("unknown command '" + c.command + "'");
    for (const auto& [k, val] : c.v.items()) {
        bool known = std::find(kCommon.begin(), kCommon.end(), k) != kCommon.end() ||
                     std::find(it->second.begin(), it->second.end(), k) != it->second.end();
        if (!known) throw UsageError("unknown key '" + k + "' for command " + c.command);
    }
}

// ---------------------------------------------------------------- report

struct Report {
    std::string command;
    json config;
    json records = json::array();
    json summary = json::object();
    json flags = json::object();
    json timing = json::object();

    void add(const std::string& name, const std::string& anchor, Status s, json witness = json::object()) {
        records.push_back({{"name", name}, {"anchor", anchor}, {"status", verify::status_name(s)}, {"witness", std::move(witness)}});
    }
    bool all_pass() const {
        for (const auto& r : records)
            if (r["status"] != "pass") return false;
        return true;
    }
    json body() const {
        return {{"command", command}, {"config", config}, {"records", records}, {"summary", summary}, {"flags", flags}};
    }
};

Status st(bool ok) { return ok ? Status::Pass : Status::Fail; }

// ---------------------------------------------------------------- cache

fs::path cache_dir(const Config& c) {
    if (c.has("cache_dir")) return c.str("cache_dir", "");
    if (const char* e = std::getenv("ENDOSCOPY_CACHE_DIR")) return e;
    if (const char* h = std::getenv("HOME")) return fs::path(h) / ".cache" / "endoscopy";
    return ".endoscopy_cache";
}

json point_json(const ff::ECPoint& P) {
    if (P.inf) return "inf";
    return json::array({P.x.code(), P.y.code()});
}

// cache document schema: tools/census.schema.json
json census_payload(long long p, long long m, long long a, long long b, const ff::Census& C) {
    json pts = json::array();
    for (const auto& x : C.points) {
        json orbit = json::array();
        for (const auto& P : x.orbit) orbit.push_back(point_json(P));
        pts.push_back({{"degree", x.degree}, {"rep", point_json(x.rep)}, {"orbit", orbit}});
    }
    return {{"censusVersion", 1}, {"curve", {{"p", p}, {"m", m}, {"a", a}, {"b", b}}}, {"N", C.N},
            {"count_by_degree", C.count_by_degree}, {"rational_counts", C.rational_counts}, {"points", pts}};
}

std::string census_file(long long p, long long m, long long a, long long b, unsigned N) {
    return "census_p" + std::to_string(p) + "_m" + std::to_string(m) + "_a" + std::to_string(a) + "_b" +
           std::to_string(b) + "_N" + std::to_string(N) + ".json";
}

struct CacheEntry {
    fs::path path;
    std::string digest;  // stored digest, or of the raw bytes when unreadable
    bool corrupt = false;
    std::string problem;
    json payload;
};

CacheEntry read_cache(const fs::path& p) {
    CacheEntry e;
    e.path = p;
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string raw = ss.str();
    json doc;
    try {
        doc = json::parse(raw);
    } catch (const std::exception& ex) {
        e.corrupt = true;
        e.digest = sha256_hex(raw);
        e.problem = "unparseable";
        return e;
    }
    if (!doc.is_object() || !doc.contains("sha256") || !doc.contains("payload") || !doc["sha256"].is_string()) {
        e.corrupt = true;
        e.digest = sha256_hex(raw);
        e.problem = "missing digest or payload";
        return e;
    }
    e.digest = doc["sha256"].get<std::string>();
    e.payload = doc["payload"];
    if (sha256_hex(e.payload.dump()) != e.digest) {
        e.corrupt = true;
        e.problem = "digest mismatch";
    }
    return e;
}

void write_cache(const fs::path& p, const json& payload) {
    json doc = {{"sha256", sha256_hex(payload.dump())}, {"payload", payload}};
    atomic_write(p, doc.dump(1) + "\n");
}

/// recompute the census a payload describes and compare
json reverify_census(const json& P, bool& ok) {
    if (P.value("censusVersion", 0) != 1) throw std::runtime_error("unsupported censusVersion");
    const auto& K = P.at("curve");
    const long long p = K.at("p"), m = K.at("m"), a = K.at("a"), b = K.at("b");
    auto E = ff::WCurve::short_form(ff::Tower(static_cast<unsigned long long>(p), static_cast<unsigned>(m)), a, b);
    auto C = ff::enumerate_closed_points(E, P.at("N").get<unsigned>());
    json fresh = census_payload(p, m, a, b, C);
    ok = fresh == P && C.zeta_identity();
    return {{"count_by_degree", C.count_by_degree}, {"zeta_identity", C.zeta_identity()}, {"matches_stored", fresh == P}};
}

// ---------------------------------------------------------------- svg

struct Svg {
    std::string body;
    double W, H;
    Svg(double w, double h) : W(w), H(h) {}
    void text(double x, double y, const std::string& s, int size = 12) {
        body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) + "\" font-family=\"sans-serif\">" + s + "</text>\n";
    }
    void dot(double x, double y, const char* color) {
        body += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"0.9\" fill=\"" + color + "\"/>\n";
    }
    void rect(double x, double y, double w, double h) {
        body += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
                "\" fill=\"none\" stroke=\"#999\"/>\n";
    }
    std::string str() const {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" + num(H) + "\">\n" + body + "</svg>\n";
    }
};

// implicit real curve F(x, y) = 0 sampled as y = +-sqrt(G(x)) on a panel
template <class G>
void panel(Svg& s, double ox, double oy, double size, double range, const std::string& title, G g, const char* color) {
    s.rect(ox, oy, size, size);
    s.text(ox + 4, oy + 14, title, 11);
    for (int k = 0; k <= 800; ++k) {
        double x = -range + 2 * range * k / 800.0;
        double v = g(x);
        if (!(v >= 0) || !std::isfinite(v)) continue;
        double y = std::sqrt(v);
        for (double yy : {y, -y}) {
            if (std::fabs(yy) > range) continue;
            s.dot(ox + (x + range) / (2 * range) * size, oy + (range - yy) / (2 * range) * size, color);
        }
    }
}

// ---------------------------------------------------------------- commands

ff::WCurve ff_curve(const Config& c, long long& p, long long& m, long long& a, long long& b) {
    p = c.integer("p", 5);
    m = c.integer("m", 1);
    a = c.integer("a", -1);
    b = c.integer("b", 0);
    if (p < 3 || p > 1000) throw UsageError("p must be an odd prime below 1000");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw UsageError("p = " + std::to_string(p) + " is not prime");
    if (m < 1 || m > 6) throw UsageError("m must lie in [1, 6]");
    return ff::WCurve::short_form(ff::Tower(static_cast<unsigned long long>(p), static_cast<unsigned>(m)), a, b);
}

ff::EndoscopicDatum ff_datum(const Config& c, const ff::WCurve& E) {
    const int t = static_cast<int>(c.integer("torsion", 0));
    auto D0 = ff::make_datum(E, t);
    const long order = c.integer("char_order", 1);
    const long idx = c.integer("char_index", 0);
    std::vector<long> chi;
    if (order > 1) {
        auto chis = ff::characters_of_order(D0, order);
        if (idx < 0 || idx >= static_cast<long>(chis.size()))
            throw UsageError("no character of order " + std::to_string(order) + " with index " + std::to_string(idx));
        chi = chis[static_cast<size_t>(idx)];
    } else if (order != 1) {
        throw UsageError("char_order must be positive");
    }
    return ff::make_datum(E, t, chi, c.integer("s_exp", 0), c.integer("s_order", 1));
}

void cmd_hitchin(const Config& c, Report& R, const fs::path& out) {
    const Rational a = c.rational("a", "-1"), b = c.rational("b", "0");
    const double tol = std::stod(c.str("tol", "1e-9"));
    Complex s0;
    try {
        s0 = hitchin::parse_complex(c.str("sigma0", "1"));
    } catch (...) {
        throw UsageError("sigma0 is not a complex number");
    }
    auto C = hitchin::CurveParams::make(a, b, s0);
    auto S = hitchin::singular_fibers(C);
    R.add("singular-fibers", "disc_u(g_w) = disc(f) f(w)^2 with exponents (2,2,2) at the roots e_i",
          st(S.certified && S.exponents == std::array<int, 3>{2, 2, 2}),
          {{"exponents", S.exponents}, {"disc_f", to_string(S.disc_f)}, {"samples", S.samples.size()}});

    std::vector<hitchin::FiberReport> fibers;
    const std::string w = c.str("w", "all-singular");
    if (w == "all-singular") {
        for (int i = 0; i < 3; ++i) fibers.push_back(hitchin::analyze_split_fiber(C, i));
    } else {
        std::stringstream ss(w);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            Rational wr;
            try {
                wr = parse_rational(tok);
            } catch (...) {
                throw UsageError("w entry '" + tok + "' is not rational");
            }
            fibers.push_back(hitchin::analyze_fiber(C, wr));
        }
    }
    long split = 0, dps = 0;
    for (const auto& F : fibers) {
        json wit = {{"w", cnum(F.w)}, {"split", F.split}};
        bool ok = true;
        if (F.split) {
            ++split;
            json d = json::array();
            for (const auto& p : F.double_points) d.push_back({{"u", cnum(p.u)}, {"rho", cnum(p.rho)}, {"dP_dw", cnum(p.dP_dw)}});
            dps += static_cast<long>(F.double_points.size());
            wit["double_points"] = d;
            wit["components"] = F.components;
            ok = F.identity_exact && F.total_space_smooth && F.double_points.size() == 2;
        } else {
            wit["quartic_disc"] = cnum(F.quartic_disc);
        }
        R.add("fiber w=" + num(F.w.real()) + (F.w.imag() != 0 ? "+" + num(F.w.imag()) + "i" : ""),
              F.split ? "over w = e_i the fiber splits into two components meeting in two double points of a smooth total space"
                      : "away from the roots the fiber quartic has nonzero discriminant",
              st(ok), wit);
    }
    for (int i = 0; i < 3; ++i) {
        auto T = hitchin::q_action(C, i);
        bool ok = T.involution && T.preserves_surface && T.fixes_own_double_points;
        for (int j = 0; j < 3; ++j)
            if (j != i) ok = ok && T.action_on_fiber[j] == -1;
        R.add("q-action T" + std::to_string(i + 1), "T_i is an involution preserving P = 0 and w, fixing the double points over e_i and swapping components elsewhere",
              st(ok), {{"action_on_fibers", T.action_on_fiber}});
    }
    auto M = hitchin::cotangent_model(C, Complex(0.3L, 0.1L));
    Real worst = 0;
    json res = json::array();
    for (const auto& r : M.residues) {
        worst = std::max(worst, std::abs(r[0] - s0));
        res.push_back(cnum(r[0]));
    }
    R.add("cotangent-model", "B = -dA/dz and every polar residue of v equals sigma_0",
          st(M.b_is_minus_dA && M.zero_match <= tol && worst <= 10 * tol),
          {{"zero_match", num(M.zero_match)}, {"polar_residues", res}, {"total_residue", cnum(M.total_residue)},
           {"borel_choice", M.borel_choice}, {"sqrt_convention", M.sqrt_convention}});
    R.summary = {{"split_fibers", split}, {"double_points", dps}};

    if (c.flag("svg")) {
        const double size = 260;
        Svg s(size * static_cast<double>(fibers.size()) + 20, 2 * size + 60);
        s.text(10, 18, "real slices of complex surfaces (u real, rho real)", 13);
        double x0 = 10;
        const bool real_roots = std::fabs(C.e[0].imag()) + std::fabs(C.e[1].imag()) + std::fabs(C.e[2].imag()) < 1e-12;
        for (const auto& F : fibers) {
            const double wr = static_cast<double>(F.w.real());
            panel(s, x0, 30, size, 3, "(u, rho) at w = " + num(wr), [&](double u) {
                Complex uu(u, 0);
                Complex g = -(2.0L * uu + F.w) * C.f_at(uu) + C.fprime_at(uu) * C.fprime_at(uu) / 4.0L;
                return static_cast<double>(g.real());
            }, "#1f4e9c");
            if (real_roots) {
                const double e1 = static_cast<double>(C.e[0].real()), e2 = static_cast<double>(C.e[1].real()),
                             e3 = static_cast<double>(C.e[2].real());
                panel(s, x0, 40 + size, size, 2, "(b1, b2) improper quadric at w = " + num(wr), [&](double b1) {
                    return (wr - e3 - (e1 - e3) * b1 * b1) / (e2 - e3);
                }, "#9c1f1f");
            }
            x0 += size;
        }
        atomic_write(out / "hitchin_slices.svg", s.str());
    }
}

void cmd_spectral(const Config& c, Report& R) {
    const int g = static_cast<int>(c.integer("genus", 2));
    const long N = c.integer("N", 8);
    if (g < 1 || g > 3) throw UsageError("genus must be 1, 2 or 3");
    std::vector<spectral::CoverMarker> markers = g == 1 ? spectral::genus_one_markers() : std::vector{spectral::CoverMarker::standard(g)};
    for (const auto& mk : markers) {
        auto P = spectral::prym_components(mk, N);
        R.add("prym " + mk.str(), "the O2* reduction of the monodromy relation has exactly two components", st(P.components == 2),
              {{"N", P.N}, {"solutions", P.solutions}, {"components", P.components}, {"component_sizes", P.component_sizes},
               {"representatives", P.labels}});
    }
    auto G = spectral::gluing_action(g);
    const long want = g == 1 ? 2 : (1L << (2 * g - 2));
    R.add("gluing", "the distinguished element fixes exactly the gluings with u v = 0 on every pair", st(G.fixed == want),
          {{"pairs", G.pairs}, {"configurations", G.configurations}, {"fixed", G.fixed}, {"codimension", G.codimension}});
    using spectral::ComponentModule;
    auto T = spectral::graded_thooft(ComponentModule::proper(), ComponentModule::improper());
    auto W = spectral::wilson_matrix(ComponentModule::irreps());
    auto rows = [](const spectral::IntMatrix& M) {
        json j = json::array();
        for (size_t i = 0; i < M.rows(); ++i) {
            json r = json::array();
            for (size_t k = 0; k < M.cols(); ++k) r.push_back(M(i, k));
            j.push_back(r);
        }
        return j;
    };
    R.add("thooft", "T~^2 = 1 + T on the graded component module", st(T.identity_holds),
          {{"T", rows(T.T)}, {"T~", rows(T.TTilde)}, {"T~^2", rows(T.TTilde_squared)}});
    R.add("wilson", "W~^2 = 1 + W and W_p matches T_p up to the component swap", st(W.tilde_identity && W.matches_after_swap),
          {{"W", rows(W.W)}, {"eigenvalue_on_(1,1)", W.eigenvalue}, {"caveat", W.caveat}});
}

void check_census_cache(const Config& c, Report& R, long long p, long long m, long long a, long long b, const ff::Census& C) {
    const fs::path file = cache_dir(c) / census_file(p, m, a, b, C.N);
    json payload = census_payload(p, m, a, b, C);
    if (fs::exists(file)) {
        auto e = read_cache(file);
        if (e.corrupt) {
            R.add("census-cache", "a stored census is only used when its digest verifies", Status::Fail,
                  {{"file", file.filename().string()}, {"digest", e.digest}, {"problem", e.problem}});
            return;
        }
        R.add("census-cache", "the stored census agrees with a fresh enumeration", st(e.payload == payload),
              {{"file", file.filename().string()}, {"digest", e.digest}});
        return;
    }
    write_cache(file, payload);
    R.flags["census_cached"] = file.filename().string();
}

void cmd_endoscopy(const Config& c, Report& R, const fs::path& out) {
    long long p, m, a, b;
    auto E = ff_curve(c, p, m, a, b);
    const long long N = c.integer("deg", 2);
    if (N < 1 || N > 8) throw UsageError("deg must lie in [1, 8]");
    auto C = ff::enumerate_closed_points(E, static_cast<unsigned>(N));
    auto D = ff_datum(c, E);
    R.add("census", "sum_{d | n} d N_d = #E(F_{q^n}) for every n up to the degree bound", st(C.zeta_identity()),
          {{"count_by_degree", C.count_by_degree}, {"rational_counts", C.rational_counts}});
    check_census_cache(c, R, p, m, a, b, C);

    std::string csv = "point,degree,split,a_x,b_x,sigma_prime_trace,check\n";
    long bad = 0, nonsplit = 0;
    json first_bad;
    for (const auto& x : C.points) {
        auto F = ff::sigma_frobenius(x, D, false);
        auto chk = ff::sigma_prime_check(x, F);
        nonsplit += !F.split;
        if (!(chk.ok && chk.shape_ok)) {
            if (!bad) first_bad = x.key.str();
            ++bad;
        }
        csv += "\"" + x.key.str() + "\"," + std::to_string(x.degree) + "," + (F.split ? "1" : "0") + "," + std::to_string(F.a) + ",\"" +
               F.b.str() + "\",\"" + chk.adjoint_trace.str() + "\"," + (chk.ok && chk.shape_ok ? "pass" : "fail") + "\n";
    }
    R.add("sigma-prime", "a_x + (-1)^deg x b_x is the adjoint trace of sigma'(Fr_x), with a_x = +-1 and b_x = 0 when a_x = -1",
          st(bad == 0), {{"points", C.points.size()}, {"non_split", nonsplit}, {"failures", bad}, {"first_failure", first_bad}});

    // principal divisors sampled from the seed
    std::mt19937 rng(static_cast<unsigned>(c.integer("seed", 2024)));
    const auto& F = E.tower().base();
    std::uniform_int_distribution<long> U(0, static_cast<long>(F.size()) - 1);
    const long want = c.integer("samples", 30);
    std::vector<ff::RationalFunctionFF> samples;
    for (int tries = 0; tries < 50 * want && static_cast<long>(samples.size()) < want; ++tries) {
        ff::CurveFactor g{FFPoly{F.element(static_cast<uint32_t>(U(rng))), F.element(static_cast<uint32_t>(U(rng)))},
                          FFPoly{F.element(static_cast<uint32_t>(U(rng) % 2))}, "g"};
        ff::CurveFactor h{FFPoly{F.element(static_cast<uint32_t>(U(rng))), F.one()}, FFPoly{}, "h"};
        if (g.A.is_zero() && g.B.is_zero()) continue;
        auto fn = ff::RationalFunctionFF::of(g) * ff::RationalFunctionFF::of(h, -1);
        try {
            auto dv = ff::divisor(E, C, fn);
            bool fits = true;
            for (const auto& [k, n] : dv.terms())
                fits = fits && (ff::split_classify(C.at(k), D).split || ff::extension_fits(D, 2 * k.degree));
            if (fits) samples.push_back(fn);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Resource) throw;
        }
    }
    auto recs = ff::character_consistency(D, C, samples);
    long rbad = 0;
    for (const auto& r : recs) rbad += !r.ok;
    R.add("reciprocity", "over a principal divisor the non-split signs and the mu-values each multiply to 1",
          recs.empty() ? Status::Inconclusive : st(rbad == 0), {{"samples", recs.size()}, {"failures", rbad}});
    R.flags["image_in_klein_four"] = ff::image_in_klein_four(D, C);
    R.summary = {{"points", C.points.size()}, {"non_split", nonsplit}};
    if (c.flag("csv")) atomic_write(out / "endoscopy.csv", csv);
}

ff::PointKey parse_point(const ff::WCurve& E, const std::string& s) {
    if (s == "inf") return ff::infinity_key();
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("point '" + s + "' must be x,y");
    try {
        return ff::rational_key(E, std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1)));
    } catch (const Error&) {
        throw;
    } catch (...) {
        throw UsageError("point '" + s + "' must be x,y with integer coordinates");
    }
}

void cmd_whittaker(const Config& c, Report& R, const fs::path& out) {
    long long p, m, a, b;
    auto E = ff_curve(c, p, m, a, b);
    if (m != 1) throw UsageError("the coset search runs over prime fields (m = 1)");
    const long long N = c.integer("N", 3);
    if (N < 1 || N > 4) throw UsageError("N must lie in [1, 4]");
    auto C = ff::enumerate_closed_points(E, static_cast<unsigned>(N));
    auto D = ff_datum(c, E);
    ff::DivisorFF Dv;
    std::stringstream ss(c.str("D", ""));
    std::string tok;
    while (std::getline(ss, tok, ';'))
        if (!tok.empty()) {
            auto k = parse_point(E, tok);
            if (!C.contains(k)) throw UsageError("point " + tok + " is not on the curve");
            Dv.add(k, 1);
        }
    whittaker::CosetOptions opt;
    opt.window = c.integer("window", 3);
    if (opt.window < 1 || opt.window > 8) throw UsageError("window must lie in [1, 8]");
    auto rep = whittaker::coset_vanishing(D, C, Dv, ff::RationalFunctionFF::one(), opt);
    json wit = {{"D", Dv.str()}, {"verdict", whittaker::verdict_name(rep.verdict)}, {"parity_weight", rep.parity_weight},
                {"predicted_vanishing", rep.predicted_vanishing}, {"shifts_tried", rep.shifts_tried},
                {"supports_checked", rep.supports_checked}};
    if (rep.witness) {
        json sup = json::object();
        for (const auto& [x, mk] : rep.witness->support) sup[x.str()] = {mk.first, mk.second};
        wit["witness"] = {{"shift", rep.witness->shift}, {"target", rep.witness->target.str()}, {"support", sup},
                          {"value", rep.witness->value.str()}};
    } else {
        const size_t show = std::min<size_t>(rep.vanishing_log.size(), 5);
        wit["vanishing_log_head"] = std::vector<std::string>(rep.vanishing_log.begin(), rep.vanishing_log.begin() + static_cast<long>(show));
    }
    Status s = rep.verdict == whittaker::Verdict::Inconclusive ? Status::Inconclusive : st(rep.agrees);
    R.add("coset-vanishing", "the Whittaker coset vanishes identically iff <delta + D> is odd; otherwise a nonzero support is exhibited", s, wit);
    R.flags["image_in_klein_four"] = rep.klein_four_flag;
    R.summary = {{"verdict", whittaker::verdict_name(rep.verdict)}};
    (void)out;
}

void cmd_fractional(const Config& c, Report& R, const fs::path& out) {
    using namespace hecke;
    const std::string name = c.str("group", "S3");
    FiniteGroupData G;
    if (name == "Z2") G = abelian_group({2});
    else if (name == "Z2xZ2") G = abelian_group({2, 2});
    else if (name == "Z4") G = abelian_group({4});
    else if (name == "S3") G = s3_group();
    else if (name == "trivial") G = abelian_group({});
    else throw UsageError("group must be one of Z2, Z2xZ2, Z4, S3, trivial");
    auto chk = validate(G);
    R.add("character-table", "rows and columns of the character table are orthogonal and the table is square", st(chk.ok()),
          {{"classes", G.num_classes()}, {"irreps", G.irrep_names}});
    EigenSystem S(G);
    bool eig = true, tw = true;
    for (size_t h = 0; h < G.order(); ++h) {
        CMat right(G.order(), G.order());
        for (size_t g = 0; g < G.order(); ++g) right(static_cast<size_t>(G.mul[g][h]), g) = CyclotomicValue(1);
        const std::string x = "h=" + G.element_names[h];
        S.add_point(x, isotypic_decompose(G, regular_rep(G), right));
        auto F = fourier_diagonalize(S, x);
        eig = eig && F.eigen_ok;
        tw = tw && F.twisted_ok;
    }
    R.add("eigen-identity", "T_V,x fhat_[gamma] = A_x,[gamma] fhat_[gamma] for every class", st(eig), {{"points", G.order()}});
    R.add("twisted-trace", "A_x,[gamma] = Tr(sigma(Fr_x) gamma, V) for every class", st(tw), {{"points", G.order()}});
    R.add("round-trip", "the inverse Fourier transform undoes the forward one", st(inverse_fourier(S).round_trip));
    S.add_point("sigma=1", isotypic_decompose(G, regular_rep(G), CMat::identity(G.order())));
    auto F = fourier_diagonalize(S, "sigma=1");
    std::string csv = "class,size,eigenvalue,twisted_trace\n";
    json vals = json::array();
    for (size_t k = 0; k < F.classes.size(); ++k) {
        csv += "\"" + F.classes[k] + "\"," + std::to_string(G.class_size(k)) + ",\"" + F.eigenvalues[k].str() + "\",\"" +
               F.twisted_traces[k].str() + "\"\n";
        vals.push_back(F.eigenvalues[k].str());
    }
    R.summary = {{"group", G.name}, {"regular_eigenvalues", vals}};
    if (c.has("p")) {
        long long p, m, a, b;
        auto E = ff_curve(c, p, m, a, b);
        const long long N = c.integer("deg", 4);
        if (N < 1 || N > 6) throw UsageError("deg must lie in [1, 6]");
        auto C = ff::enumerate_closed_points(E, static_cast<unsigned>(N));
        auto rows = z2_splice(ff_datum(c, E), C, static_cast<unsigned>(N));
        long bad = 0;
        for (const auto& r : rows) bad += !r.ok;
        R.add("z2-splice", "(a_x, b_x) fed into the Z2 system give T = [[a,b],[b,a]] and fhat eigenvalues equal to the sigma' traces",
              st(bad == 0), {{"points", rows.size()}, {"failures", bad}});
    }
    if (c.flag("csv")) atomic_write(out / "fourier.csv", csv);
}

void cmd_verify_all(const Config& c, Report& R) {
    verify::SuiteOptions o;
    o.seed = static_cast<unsigned>(c.integer("seed", 2024));
    for (const auto& item : verify::acceptance_suite()) {
        auto r = verify::run_item(item, o);
        json wit = json::object();
        for (const auto& [k, v] : r.witness) wit[k] = v;
        R.add(std::to_string(r.id) + " " + r.name, r.anchor, r.status, wit);
        R.timing[r.name] = r.seconds;
    }
}

// ---------------------------------------------------------------- cache command

int cmd_cache(const Config& c, const std::string& action) {
    const fs::path dir = cache_dir(c);
    json out = {{"cache_dir", dir.string()}, {"action", action}};
    int code = 0;
    if (action == "list" || action == "verify") {
        json entries = json::array();
        if (fs::exists(dir)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(dir))
                if (e.path().extension() == ".json") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                auto e = read_cache(f);
                json j = {{"file", f.filename().string()}, {"digest", e.digest}};
                if (e.corrupt) {
                    j["status"] = "corrupt";
                    j["problem"] = e.problem;
                    code = 1;
                } else if (action == "verify") {
                    bool ok = false;
                    try {
                        j["recomputed"] = reverify_census(e.payload, ok);
                    } catch (const std::exception& ex) {
                        j["problem"] = ex.what();
                    }
                    j["status"] = ok ? "pass" : "fail";
                    if (!ok) code = 1;
                } else {
                    j["status"] = "ok";
                }
                entries.push_back(j);
            }
        }
        out["entries"] = entries;
    } else if (action == "clear") {
        long removed = 0;
        if (fs::exists(dir)) {
            // move aside first so readers never see a half-cleared directory
            fs::path trash = dir;
            trash += ".clearing" + std::to_string(static_cast<long>(::getpid()));
            fs::rename(dir, trash);
            for (const auto& e : fs::directory_iterator(trash)) removed += e.path().extension() == ".json";
            fs::remove_all(trash);
        }
        out["removed"] = removed;
    } else {
        throw UsageError("cache action must be list, clear or verify");
    }
    std::cout << out.dump(2) << "\n";
    if (code) {
        json err = {{"error", {{"kind", kind_name(ErrorKind::CorruptCache)}, {"message", "cache check failed"}}}};
        std::cerr << err.dump() << "\n";
    }
    return code;
}

int error_exit(const std::string& kind, const std::string& msg, int code) {
    json err = {{"error", {{"kind", kind}, {"message", msg}}}};
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"endoscopy toolkit: Hitchin fibers, spectral covers and function-field endoscopy checks"};
    app.require_subcommand(1);
    std::string config_path, cache_action;
    std::map<std::string, std::string> flags;
    bool csv = false, svg = false;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON run configuration (tools/config.schema.json)");
        s->add_option("--out", flags["out"], "output directory");
        s->add_option("--seed", flags["seed"], "sampling seed");
        s->add_option("--cache-dir", flags["cache_dir"], "cache directory (default $ENDOSCOPY_CACHE_DIR)");
        s->add_flag("--csv", csv, "write CSV tables");
        s->add_flag("--svg", svg, "write SVG plots");
    };
    auto opt = [&](CLI::App* s, const std::string& key, const std::string& help) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        s->add_option(flag, flags[key], help)->allow_extra_args(false);
    };
    auto* hit = app.add_subcommand("hitchin", "genus-one Hitchin fibers, Q-action and cotangent model");
    opt(hit, "a", "curve coefficient a (rational)");
    opt(hit, "b", "curve coefficient b (rational)");
    opt(hit, "sigma0", "residue parameter (complex, e.g. 3/2 or i)");
    opt(hit, "w", "fiber values: all-singular or a comma list of rationals");
    opt(hit, "tol", "numeric tolerance");
    auto* spe = app.add_subcommand("spectral", "Prym components, gluing census and operator algebra");
    opt(spe, "genus", "genus 1, 2 or 3");
    opt(spe, "N", "root-of-unity grid order");
    auto* endo_ = app.add_subcommand("endoscopy", "closed points, Frobenius classes and reciprocity over F_q");
    auto* whi = app.add_subcommand("whittaker", "Whittaker coset vanishing for a divisor of rational points");
    auto* fra = app.add_subcommand("fractional", "finite-group Fourier calculus for fractional Hecke systems");
    for (auto* s : {endo_, whi, fra}) {
        opt(s, "p", "field characteristic");
        opt(s, "a", "curve coefficient a (integer)");
        opt(s, "b", "curve coefficient b (integer)");
        opt(s, "torsion", "index of the rational 2-torsion point");
        opt(s, "char_order", "order of the character of E'(F_q)");
        opt(s, "char_index", "which character of that order");
    }
    for (auto* s : {endo_, whi}) {
        opt(s, "m", "field degree over F_p");
        opt(s, "s_exp", "degree twist exponent");
        opt(s, "s_order", "degree twist order");
    }
    opt(endo_, "deg", "degree bound N of the census");
    opt(endo_, "samples", "number of principal divisors to sample");
    opt(whi, "D", "divisor as x,y;x,y (degree-one points)");
    opt(whi, "N", "census degree bound");
    opt(whi, "window", "weight window for each point");
    opt(fra, "group", "Z2, Z2xZ2, Z4, S3 or trivial");
    opt(fra, "deg", "degree bound for the function-field splice");
    auto* ver = app.add_subcommand("verify-all", "run every acceptance check");
    auto* cac = app.add_subcommand("cache", "list, clear or verify cached censuses");
    cac->add_option("action", cache_action, "list | clear | verify")->required();
    cac->add_option("--cache-dir", flags["cache_dir"], "cache directory");
    for (auto* s : {hit, spe, endo_, whi, fra, ver}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return error_exit("usage", e.what(), 2);
    }

    auto* sub = app.get_subcommands().front();
    Config cfg;
    cfg.command = sub->get_name();
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw UsageError("cannot read config " + config_path);
            json j;
            try {
                j = json::parse(f);
            } catch (const std::exception& e) {
                throw UsageError(std::string("malformed config: ") + e.what());
            }
            if (!j.is_object()) throw UsageError("config must be a JSON object");
            if (j.contains("command") && j["command"] != cfg.command)
                throw UsageError("config is for command " + j["command"].dump() + ", not " + cfg.command);
            for (const auto& [k, v] : j.items()) cfg.v[k] = v;
        }
        for (const auto& [k, v] : flags)
            if (!v.empty()) cfg.v[k] = v;
        if (csv) cfg.v["csv"] = true;
        if (svg) cfg.v["svg"] = true;
        if (cfg.command == "cache") return cmd_cache(cfg, cache_action);
        validate_keys(cfg);
        cfg.v.erase("command");

        const fs::path out = cfg.str("out", ".");
        Report R;
        R.command = cfg.command;
        R.config = cfg.v;
        R.config.erase("out");
        R.config.erase("cache_dir");
        auto t0 = std::chrono::steady_clock::now();
        if (cfg.command == "hitchin") cmd_hitchin(cfg, R, out);
        else if (cfg.command == "spectral") cmd_spectral(cfg, R);
        else if (cfg.command == "endoscopy") cmd_endoscopy(cfg, R, out);
        else if (cfg.command == "whittaker") cmd_whittaker(cfg, R, out);
        else if (cfg.command == "fractional") cmd_fractional(cfg, R, out);
        else cmd_verify_all(cfg, R);
        R.timing["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        json body = R.body();
        json report = body;
        report["digest"] = sha256_hex(body.dump());
        atomic_write(out / "report.json", report.dump(2) + "\n");
        json meta = {{"timestamp", static_cast<long long>(std::time(nullptr))}, {"timing", R.timing}, {"digest", report["digest"]}};
        atomic_write(out / "metadata.json", meta.dump(2) + "\n");
        for (const auto& r : R.records)
            std::cout << "[" << r["status"].get<std::string>() << "] " << r["name"].get<std::string>() << "\n";
        std::cout << (R.all_pass() ? "all checks passed" : "some checks did not pass") << "; report: " << (out / "report.json").string() << "\n";
        return R.all_pass() ? 0 : 1;
    } catch (const UsageError& e) {
        return error_exit("config", e.what(), 2);
    } catch (const Error& e) {
        return error_exit(kind_name(e.kind()), e.what(), e.kind() == ErrorKind::InternalConsistency ? 1 : 2);
    } catch (const fs::filesystem_error& e) {
        return error_exit("io", e.what(), 2);
    } catch (const std::exception& e) {
        return error_exit("internal", e.what(), 1);
    }
}
