#include "mero/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mero/borel.hpp"
#include "mero/classical.hpp"
#include "mero/faddeev.hpp"
#include "mero/registry.hpp"
#include "mero/special.hpp"

namespace mero::cli {

namespace {

const double unset = std::numeric_limits<double>::quiet_NaN();
bool given(double x) { return !std::isnan(x); }

struct RunConfig {
    std::string problem = "faddeev";
    std::string w = "1", gamma = "0.2", xi = "0.5";
    double alpha = unset, theta = 0, theta_tilde = unset, q = unset;
    double a = unset, b = unset, c = unset, epsilon = unset;
    double tol = 1e-10;
    std::string n = "2";
    std::string theorem = "T1";
    std::string orders = "2,4,6,8,10";
    int scan = 64;
    double delta1 = unset;
    std::string format = "json";
    std::string output;
    std::string cache_dir;
};

// One run: the parsed config plus everything derived from it.
struct Ctx {
    RunConfig cfg;
    ProblemDef def;
    cplx w{}, gamma{};
    Json inputs = Json::object();
};

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

ProblemDef resolve_def(const RunConfig& cfg)
{
    ProblemDef d = lookup_problem(cfg.problem);
    if (d.kind == ProblemKind::faddeev) {
        if (given(cfg.theta_tilde))
            d.theta_tilde = cfg.theta_tilde;
    } else if (d.kind == ProblemKind::classical) {
        auto& s = d.spec;
        if (given(cfg.alpha))
            s.alpha = cfg.alpha;
        if (given(cfg.theta_tilde))
            s.theta_tilde = cfg.theta_tilde;
        if (given(cfg.a))
            s.a = cfg.a;
        if (given(cfg.b))
            s.b = cfg.b;
        if (given(cfg.c))
            s.c = cfg.c;
        if (given(cfg.epsilon))
            s.epsilon = cfg.epsilon;
    }
    return d;
}

Ctx make_ctx(const RunConfig& cfg)
{
    if (!(cfg.tol >= 1e-14 && cfg.tol <= 1e-2))
        throw ConfigError("tol must lie in [1e-14, 1e-2]");
    Ctx c;
    c.cfg = cfg;
    c.def = resolve_def(cfg);
    c.w = parse_complex(cfg.w);
    c.gamma = parse_complex(cfg.gamma);
    const bool hurwitz = c.def.kind == ProblemKind::classical && c.def.spec.id == classical::Example::hurwitz_zeta;
    if (given(cfg.q)) {
        if (!hurwitz)
            throw ConfigError("--q applies to hurwitz_zeta only");
        c.gamma = cfg.q - 1.0;
    }
    c.inputs["problem"] = c.def.name;
    c.inputs["w"] = complex_json(c.w);
    c.inputs["gamma"] = complex_json(c.gamma);
    if (given(cfg.q))
        c.inputs["q"] = cfg.q;
    if (c.def.kind == ProblemKind::faddeev) {
        c.inputs["theta_tilde"] = c.def.theta_tilde;
    } else if (c.def.kind == ProblemKind::classical) {
        const auto& s = c.def.spec;
        c.inputs["alpha"] = s.alpha;
        if (s.id == classical::Example::airy)
            c.inputs["theta_tilde"] = s.theta_tilde;
        if (s.id == classical::Example::gauss_2f1) {
            c.inputs["a"] = s.a;
            c.inputs["b"] = s.b;
            c.inputs["c"] = s.c;
        }
        c.inputs["epsilon"] = s.epsilon;
    }
    c.inputs["tol"] = cfg.tol;
    return c;
}

void require_envelopes(const Ctx& c, const TransformProblem& p)
{
    if (c.def.kind != ProblemKind::composed)
        return;
    auto rep = check_envelopes(p, c.w, c.gamma);
    if (!rep.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "declared envelopes fail the spot-check (kernel ratio %.3g, function ratio %.3g)",
                      rep.kernel_ratio, rep.function_ratio);
        throw DomainViolation(buf, "HypothesisViolation");
    }
}

Json record(const std::string& sub, const Ctx& c)
{
    Json j;
    j["schema"] = schema_version;
    j["subcommand"] = sub;
    j["inputs"] = c.inputs;
    return j;
}

class Csv {
public:
    explicit Csv(std::vector<std::string> header) { row(header); }
    void row(const std::vector<std::string>& fields)
    {
        for (std::size_t k = 0; k < fields.size(); ++k)
            s_ << (k ? "," : "") << csv_field(fields[k]);
        s_ << "\r\n";
    }
    std::string str() const { return s_.str(); }

private:
    std::ostringstream s_;
};

struct Output {
    Json json;
    std::string csv;
};

// --- subcommands -------------------------------------------------------------------

Output cmd_eval(const Ctx& c)
{
    auto p = build_problem(c.def);
    require_envelopes(c, p);
    QuadratureResult r;
    const bool hurwitz = c.def.kind == ProblemKind::classical && c.def.spec.id == classical::Example::hurwitz_zeta;
    if (hurwitz && c.gamma == 0.0) {
        auto e = moment_h_full(p, 0, c.w, c.cfg.tol);
        r.value = e.value;
        r.error = e.error;
    } else {
        // the quadrature also stops on relative accuracy; tighten until the absolute estimate is under tol
        double t = c.cfg.tol;
        r = evaluate_g_full(p, c.w, c.gamma, t);
        for (int k = 0; k < 3 && r.error >= c.cfg.tol && t > 1e-15; ++k) {
            t = std::max(1e-15, 0.5 * t * c.cfg.tol / r.error);
            r = evaluate_g_full(p, c.w, c.gamma, t);
        }
    }
    Output o;
    o.json = record("eval", c);
    o.json["value"] = complex_json(r.value);
    o.json["error"] = r.error;
    Json derived = Json::object();
    if (c.def.kind == ProblemKind::faddeev)
        derived["log_S"] = complex_json(r.value / 4.0);
    if (c.def.kind == ProblemKind::classical && c.gamma == 1.0) {
        const auto& s = c.def.spec;
        if (s.id == classical::Example::airy)
            derived["Ai"] = complex_json(r.value / (2 * pi * I));
        if (s.id == classical::Example::gauss_2f1)
            derived["2F1"] = complex_json(1.0 + r.value / (pi * I) *
                                                    std::exp(lgamma_c(s.c) - lgamma_c(s.a) - lgamma_c(s.b)));
    }
    if (!derived.empty())
        o.json["derived"] = derived;
    Csv csv({"re", "im", "error"});
    csv.row({csv_number(r.value.real()), csv_number(r.value.imag()), csv_number(r.error)});
    o.csv = csv.str();
    return o;
}

Output cmd_expand(const Ctx& c)
{
    auto p = build_problem(c.def);
    require_envelopes(c, p);
    const auto ns = parse_int_list(c.cfg.n);
    if (ns.size() != 1)
        throw ConfigError("expand takes a single order n");
    const int n = ns[0];
    Output o;
    o.json = record("expand", c);
    o.json["inputs"]["n"] = n;
    Json rows = Json::array();
    Csv csv({"m", "re_c", "im_c", "re_term", "im_term"});
    CompensatedSum<cplx> total;
    if (n >= -p.n0()) {
        FormalGammaSeries g = assemble_formal_series(p, c.w, n, c.cfg.tol);
        for (int m = -g.n0; m <= n; ++m) {
            cplx cm = g.coeff(m), term = cm * std::pow(c.gamma, m);
            total.add(term);
            rows.push_back({{"m", m}, {"c", complex_json(cm)}, {"term", complex_json(term)}});
            csv.row({std::to_string(m), csv_number(cm.real()), csv_number(cm.imag()), csv_number(term.real()),
                     csv_number(term.imag())});
        }
    }
    o.json["split"] = p.split;
    o.json["terms"] = rows;
    o.json["value"] = complex_json(total.value());
    o.csv = csv.str();
    return o;
}

DecayHypotheses with_override(DecayHypotheses h, const RunConfig& cfg)
{
    if (given(cfg.delta1))
        h.delta1 = cfg.delta1;
    return h;
}

std::vector<ErrorCertificate> certify_at(const Ctx& c, const TransformProblem& p, int n)
{
    const std::string& thm = c.cfg.theorem;
    const bool override_ok = thm == "T1" || thm == "T77";
    if (given(c.cfg.delta1) && !override_ok)
        throw ConfigError("--delta1 applies to T1 and T77 only");
    switch (c.def.kind) {
    case ProblemKind::faddeev: {
        const double tt = c.def.theta_tilde;
        if (thm == "FE")
            return faddeev::verify_FE(c.w, c.gamma, tt, n);
        if (thm == "T1")
            return {thm1_bound(p, with_override(faddeev::hypotheses(c.w, c.gamma, tt, n), c.cfg), n, c.w, c.gamma)};
        if (thm == "T1_5")
            return {faddeev::thm15(c.w, c.gamma, tt, n)};
        if (thm == "T1_75")
            return {faddeev::thm175(c.w, c.gamma, tt, n)};
        break;
    }
    case ProblemKind::classical: {
        const auto& s = c.def.spec;
        if (thm == "T1")
            return {thm1_bound(p, with_override(classical::thm1_hypotheses(s, c.w, c.gamma), c.cfg), n, c.w,
                               c.gamma)};
        if (thm == "T77")
            return {thm77_bound(p, with_override(classical::thm77_hypotheses(s, c.w, c.gamma), c.cfg), n, c.w,
                                c.gamma)};
        break;
    }
    case ProblemKind::composed:
        if (thm == "T1")
            return {thm1_bound(p, with_override(composed_hypotheses(c.def.composed), c.cfg), n, c.w, c.gamma)};
        break;
    }
    throw ConfigError("theorem '" + thm + "' is not available for problem " + c.def.name);
}

Output cmd_certify(const Ctx& c)
{
    static const std::set<std::string> theorems{"FE", "T1", "T1_5", "T1_75", "T77"};
    if (!theorems.count(c.cfg.theorem))
        throw ConfigError("unknown theorem '" + c.cfg.theorem + "'");
    auto p = build_problem(c.def);
    require_envelopes(c, p);
    const auto ns = parse_int_list(c.cfg.n);
    std::vector<std::vector<ErrorCertificate>> results(ns.size());
    std::vector<std::exception_ptr> errors(ns.size());
    // fan out over n; results are kept in input order
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < ns.size(); ++k) {
        try {
            results[k] = certify_at(c, p, ns[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    Output o;
    o.json = record("certify", c);
    o.json["inputs"]["theorem"] = c.cfg.theorem;
    o.json["inputs"]["n"] = ns;
    if (given(c.cfg.delta1))
        o.json["inputs"]["delta1"] = c.cfg.delta1;
    Json certs = Json::array();
    Csv csv({"theorem", "n", "bound", "measured", "pass", "reason"});
    bool all = true;
    for (const auto& group : results) {
        for (const auto& cert : group) {
            certs.push_back(certificate_json(cert));
            all = all && cert.pass;
            csv.row({cert.theorem, std::to_string(cert.n), csv_number(cert.bound), csv_number(cert.measured),
                     cert.pass ? "true" : "false", cert.reason});
        }
    }
    o.json["certificates"] = certs;
    o.json["all_pass"] = all;
    o.csv = csv.str();
    return o;
}

void require_faddeev(const Ctx& c, const char* what)
{
    if (c.def.kind != ProblemKind::faddeev)
        throw ConfigError(std::string(what) + " needs a closed-form Borel function; only faddeev provides one");
}

Output cmd_borel(const Ctx& c)
{
    require_faddeev(c, "borel");
    const cplx xi = parse_complex(c.cfg.xi);
    const double tol = c.cfg.tol;
    auto p = build_problem(c.def);
    const cplx closed = faddeev::BwF(c.w, xi, std::min(tol, 1e-13));
    auto integral = borel_via_integral(p, c.w, xi, faddeev::inv_laplace_phi, tol);
    auto poles = borel_via_pole_sum(faddeev::pole_shell, faddeev::kernel_moment(c.w), {}, xi, tol);
    // Laplace-Borel reconstruction of g at (gamma, theta), split index 1
    auto B = faddeev::borel_function(c.w);
    const cplx g_minus = faddeev::coeff(-1) * moment_h(p, -1, c.w, tol) / c.gamma;
    const cplx recon = laplace_borel_reconstruct(B, g_minus, c.cfg.theta, c.gamma, tol);
    const cplx g = evaluate_g(p, c.w, c.gamma, tol);
    Output o;
    Ctx cc = c;
    cc.inputs["theta"] = c.cfg.theta;
    cc.inputs["xi"] = complex_json(xi);
    o.json = record("borel", cc);
    o.json["value"] = complex_json(closed);
    o.json["integral"] = {{"value", complex_json(integral.value)}, {"error", integral.error}};
    o.json["pole_sum"] = {{"value", complex_json(poles.value)}, {"error", poles.error}, {"terms", poles.terms}};
    o.json["delta_integral"] = std::abs(closed - integral.value);
    o.json["delta_pole_sum"] = std::abs(closed - poles.value);
    o.json["reconstruction"] = {
        {"value", complex_json(recon)}, {"g", complex_json(g)}, {"delta", std::abs(recon - g)}};
    Csv csv({"re", "im", "re_integral", "im_integral", "delta_integral", "delta_pole_sum"});
    csv.row({csv_number(closed.real()), csv_number(closed.imag()), csv_number(integral.value.real()),
             csv_number(integral.value.imag()), csv_number(std::abs(closed - integral.value)),
             csv_number(std::abs(closed - poles.value))});
    o.csv = csv.str();
    return o;
}

double wrap(double a) { return std::remainder(a, 2 * pi); }

Output cmd_stokes(const Ctx& c)
{
    require_faddeev(c, "stokes");
    if (c.cfg.scan < 2)
        throw ConfigError("--scan needs at least 2 directions");
    const double tol = c.cfg.tol;
    auto B = faddeev::borel_function(c.w);
    const double tg = std::arg(c.gamma);

    std::vector<double> dirs;
    for (cplx p : faddeev::BwF_poles(c.w, 200.0)) {
        double a = std::arg(p);
        bool seen = false;
        for (double d : dirs)
            seen = seen || std::abs(wrap(d - a)) < 1e-9;
        if (!seen)
            dirs.push_back(a);
    }

    const int N = c.cfg.scan;
    Json scan = Json::array();
    Csv csv({"theta", "re", "im", "marker"});
    std::vector<double> th(N);
    std::vector<cplx> val(N);
    std::vector<std::string> err(N);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < N; ++k) {
        th[k] = tg - pi / 2 + pi * (k + 1) / (N + 1);
        try {
            val[k] = laplace_along_ray(B.eval, B.growth, th[k], c.gamma, tol);
        } catch (const Error& e) {
            err[k] = e.kind();
        }
    }
    for (int k = 0; k < N; ++k) {
        std::string marker;
        for (double d : dirs) {
            double rel = wrap(d - th[k]);
            double lo = k ? wrap(th[k - 1] - th[k]) : -pi;
            if (rel <= 0 && rel > lo && std::abs(wrap(d - tg)) < pi / 2)
                marker = "jump";
        }
        if (!err[k].empty())
            marker = err[k];
        Json row{{"theta", th[k]}, {"value", err[k].empty() ? complex_json(val[k]) : Json(nullptr)}};
        if (!marker.empty())
            row["marker"] = marker;
        scan.push_back(row);
        csv.row({csv_number(th[k]), err[k].empty() ? csv_number(val[k].real()) : "",
                 err[k].empty() ? csv_number(val[k].imag()) : "", marker});
    }

    // Jump across the Stokes direction nearest Arg(gamma); with no pole direction inside the
    // admissible half-plane, gamma is rotated onto the first direction Arg(i pi (pi - w)).
    double tj = std::arg(I * pi * (pi - c.w));
    bool rotated = true;
    double best = pi / 2;
    for (double d : dirs) {
        double gap = std::abs(wrap(d - tg));
        if (gap < best) {
            best = gap;
            tj = d;
            rotated = false;
        }
    }
    const cplx gj = rotated ? std::polar(std::abs(c.gamma), tj) : c.gamma;
    double eps = 0.5 * (pi / 2 - std::abs(wrap(tj - std::arg(gj))));
    for (double d : dirs) {
        double gap = std::abs(wrap(d - tj));
        if (gap > 1e-9)
            eps = std::min(eps, 0.5 * gap);
    }
    eps = std::min(eps, pi / 4);
    auto sd = stokes_jump(B, tj, gj, eps, tol);

    Output o;
    o.json = record("stokes", c);
    o.json["inputs"]["scan"] = N;
    o.json["scan"] = scan;
    Json jump{{"theta", tj},
              {"gamma", complex_json(gj)},
              {"gamma_rotated", rotated},
              {"eps", eps},
              {"poles", sd.poles.size()},
              {"residue_sum", complex_json(sd.jump)},
              {"lateral", complex_json(sd.lateral)},
              {"lateral_error", sd.lateral_error},
              {"delta", std::abs(sd.jump - sd.lateral)}};
    o.json["jump"] = jump;
    o.csv = csv.str();
    return o;
}

Output cmd_roots(const Ctx& c)
{
    Output o;
    o.json["schema"] = schema_version;
    o.json["subcommand"] = "roots";
    const auto orders = parse_int_list(c.cfg.orders);
    o.json["inputs"] = {{"orders", orders}};
    Json rows = Json::array();
    Csv csv({"order", "r"});
    for (int n : orders) {
        if (n < 1)
            throw ConfigError("root orders start at 1");
        double r = faddeev::rn_root(n);
        rows.push_back({{"order", n}, {"r", r}});
        csv.row({std::to_string(n), csv_number(r)});
    }
    o.json["roots"] = rows;
    o.csv = csv.str();
    return o;
}

struct Check {
    std::string name;
    double value, expected, tol;
};

Output cmd_verify(const Ctx& c)
{
    const double tol = c.cfg.tol;
    std::vector<Check> checks;
    const std::pair<int, double> table[] = {{2, 2.42067585291066},
                                            {4, 2.64172230058665},
                                            {6, 2.75972744591817},
                                            {8, 2.83308766213237},
                                            {10, 2.88302232511053}};
    for (auto [n, r] : table)
        checks.push_back({"root r_" + std::to_string(n), faddeev::rn_root(n), r, 1e-10});
    checks.push_back({"Gamma(1/2)", classical::gamma_eval(0.5, 1.0, 0.75, tol).real(), std::sqrt(pi), 1e-6});
    checks.push_back({"zeta(2)", classical::zeta_eval(2.0, 1.0, 0.75, tol).real(), pi * pi / 6, 1e-6});
    checks.push_back({"1/Gamma(1)", classical::recip_gamma_eval(1.0, 1.0, 0.75, tol).real(), 1.0, 1e-6});
    const cplx h1 = moment_h(faddeev::problem(0), 1, 1.0, tol);
    checks.push_back({"faddeev h_1(1) closed form", std::abs(h1 - faddeev::h1_closed(1.0)), 0.0, 1e-8});
    const cplx b0 = faddeev::BwF(1.0, 0.0);
    checks.push_back({"faddeev B_w(0) = a_1 h_1", std::abs(b0 - faddeev::coeff(1) * faddeev::h1_closed(1.0)), 0.0,
                      1e-12});
    for (const auto& cert : faddeev::verify_FE(1.0, 0.2, 0.0, 2))
        checks.push_back({cert.theorem + " n=2", cert.measured / cert.bound, 0.0, 1.0});

    Output o;
    o.json["schema"] = schema_version;
    o.json["subcommand"] = "verify";
    o.json["inputs"] = {{"tol", tol}};
    Json rows = Json::array();
    Csv csv({"check", "value", "expected", "pass"});
    bool all = true;
    for (const auto& k : checks) {
        bool pass = std::abs(k.value - k.expected) <= k.tol;
        all = all && pass;
        rows.push_back({{"check", k.name}, {"value", k.value}, {"expected", k.expected}, {"pass", pass}});
        csv.row({k.name, csv_number(k.value), csv_number(k.expected), pass ? "true" : "false"});
    }
    o.json["checks"] = rows;
    o.json["all_pass"] = all;
    o.csv = csv.str();
    if (!all)
        o.json["failed"] = true;
    return o;
}

Json error_json(const std::string& kind, const std::string& msg, int code)
{
    return Json{{"schema", "mero.error/1"}, {"error", kind}, {"message", msg}, {"exit_code", code}};
}

void add_common(CLI::App* s, RunConfig& cfg)
{
    s->add_option("--problem", cfg.problem, "built-in problem id or definition file");
    s->add_option("--w", cfg.w, "w as re+imi");
    s->add_option("--gamma", cfg.gamma, "gamma as re+imi");
    s->add_option("--alpha", cfg.alpha, "kernel/function split parameter");
    s->add_option("--theta", cfg.theta, "Laplace direction");
    s->add_option("--theta-tilde", cfg.theta_tilde, "contour rotation angle");
    s->add_option("--q", cfg.q, "Hurwitz shift (sets gamma = q - 1)");
    s->add_option("--a", cfg.a, "2F1 parameter a");
    s->add_option("--b", cfg.b, "2F1 parameter b");
    s->add_option("--c", cfg.c, "2F1 parameter c");
    s->add_option("--epsilon", cfg.epsilon, "Hankel offset");
    s->add_option("--tol", cfg.tol, "absolute tolerance in [1e-14, 1e-2]");
    s->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--output,-o", cfg.output, "write the record here instead of stdout");
    s->add_option("--cache-dir", cfg.cache_dir, "moment cache directory (default $MERO_CACHE_DIR)");
}

} // namespace

Json complex_json(cplx z) { return Json{{"re", number_or_null(z.real())}, {"im", number_or_null(z.imag())}}; }

Json certificate_json(const ErrorCertificate& c)
{
    Json j{{"theorem", c.theorem},     {"n", c.n},
           {"w", complex_json(c.w)},   {"gamma", complex_json(c.gamma)},
           {"constant", number_or_null(c.constant)}, {"bound", number_or_null(c.bound)},
           {"alt_bound", number_or_null(c.alt_bound)}, {"measured", number_or_null(c.measured)},
           {"quad_error", number_or_null(c.quad_error)}, {"pass", c.pass}};
    if (!c.reason.empty())
        j["reason"] = c.reason;
    return j;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"')
            q += '"';
        q += ch;
    }
    return q + '"';
}

std::string csv_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<int> parse_int_list(const std::string& s)
{
    auto to_int = [&](const std::string& t) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(t, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != t.size())
            throw ConfigError("malformed integer list '" + s + "'");
        return v;
    };
    std::vector<int> out;
    auto dots = s.find("..");
    if (dots != std::string::npos) {
        int lo = to_int(s.substr(0, dots)), hi = to_int(s.substr(dots + 2));
        if (hi < lo || hi - lo > 10000)
            throw ConfigError("bad range '" + s + "'");
        for (int k = lo; k <= hi; ++k)
            out.push_back(k);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_int(item));
    if (out.empty())
        throw ConfigError("empty integer list");
    return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    CLI::App app{"Meromorphic transforms: evaluation, expansion, certified bounds, Borel sums"};
    app.require_subcommand(1);
    std::map<std::string, CLI::App*> subs;
    const std::pair<const char*, const char*> names[] = {
        {"eval", "evaluate g_gamma(w)"},
        {"expand", "terms a_m h_m(w) gamma^m up to n"},
        {"certify", "remainder certificates over an n-range"},
        {"borel", "Borel sum B_w(xi) with representation cross-checks"},
        {"stokes", "Laplace scan over directions and the Stokes jump"},
        {"roots", "root table r_n"},
        {"verify", "built-in self-checks"}};
    for (auto [name, help] : names) {
        auto* s = app.add_subcommand(name, help);
        add_common(s, cfg);
        subs[name] = s;
    }
    subs["expand"]->add_option("--n", cfg.n, "truncation order");
    subs["certify"]->add_option("--n", cfg.n, "order, range a..b or list");
    subs["certify"]->add_option("--theorem", cfg.theorem)->check(
        CLI::IsMember({"FE", "T1", "T1_5", "T1_75", "T77"}));
    subs["certify"]->add_option("--delta1", cfg.delta1, "override the declared kernel decay rate");
    subs["borel"]->add_option("--xi", cfg.xi, "Borel variable as re+imi");
    subs["stokes"]->add_option("--scan", cfg.scan, "number of directions");
    subs["roots"]->add_option("--orders", cfg.orders, "comma list or range of orders");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << error_json("UsageError", e.what(), 1).dump() << '\n';
        return 1;
    }

    try {
        std::string dir = cfg.cache_dir;
        if (dir.empty())
            if (const char* env = std::getenv("MERO_CACHE_DIR"))
                dir = env;
        if (!dir.empty())
            std::filesystem::create_directories(dir);
        set_moment_cache_dir(dir);

        std::string sub = app.get_subcommands().front()->get_name();
        Output o;
        if (sub == "roots") {
            Ctx c;
            c.cfg = cfg;
            o = cmd_roots(c);
        } else if (sub == "verify") {
            Ctx c;
            c.cfg = cfg;
            if (!(cfg.tol >= 1e-14 && cfg.tol <= 1e-2))
                throw ConfigError("tol must lie in [1e-14, 1e-2]");
            o = cmd_verify(c);
        } else {
            Ctx c = make_ctx(cfg);
            if (sub == "eval")
                o = cmd_eval(c);
            else if (sub == "expand")
                o = cmd_expand(c);
            else if (sub == "certify")
                o = cmd_certify(c);
            else if (sub == "borel")
                o = cmd_borel(c);
            else
                o = cmd_stokes(c);
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.json["wall_time_s"] = wall;
        const std::string text = cfg.format == "csv" ? o.csv : o.json.dump(2) + "\n";
        if (cfg.output.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.output, std::ios::binary);
            if (!f)
                throw ConfigError("cannot write '" + cfg.output + "'");
            f << text;
        }
        if (o.json.contains("failed"))
            return 3;
        return 0;
    } catch (const Error& e) {
        err << error_json(e.kind(), e.what(), e.exit_code()).dump() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << error_json("InternalError", e.what(), 3).dump() << '\n';
        return 3;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"mero"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace mero::cli
