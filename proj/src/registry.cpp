#include "mero/registry.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>

#include "mero/faddeev.hpp"
#include "mero/special.hpp"

namespace mero {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v)
{
    double x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("'" + key + "' expects a real number, got '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v)
{
    int x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    return x;
}

// Consumes known keys of one section; whatever is left over is an error.
class Section {
public:
    Section(std::string name, std::map<std::string, std::string> kv) : name_(std::move(name)), kv_(std::move(kv)) {}

    void real(const char* key, double& out) { take(key, [&](const std::string& v) { out = to_real(key, v); }); }
    void integer(const char* key, int& out) { take(key, [&](const std::string& v) { out = to_int(key, v); }); }
    void text(const char* key, std::string& out) { take(key, [&](const std::string& v) { out = v; }); }
    void complex(const char* key, cplx& out) { take(key, [&](const std::string& v) { out = parse_complex(v); }); }

    void finish() const
    {
        if (!kv_.empty())
            throw ConfigError("unknown key '" + kv_.begin()->first + "' in section [" + name_ + "]");
    }

private:
    template <class F>
    void take(const char* key, F&& f)
    {
        auto it = kv_.find(key);
        if (it == kv_.end())
            return;
        f(it->second);
        kv_.erase(it);
    }

    std::string name_;
    std::map<std::string, std::string> kv_;
};

void require_one_of(const std::string& what, const std::string& v, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (v == a)
            return;
    throw ConfigError("unknown " + what + " '" + v + "'");
}

LaurentSeries exp_laurent(double rate)
{
    LaurentSeries f;
    f.n0 = 0;
    f.R_f = inf;
    f.coeff = [rate](int m) -> cplx {
        if (m < 0)
            return 0.0;
        if (rate == 0)
            return m == 0 ? 1.0 : 0.0;
        double s = (rate < 0 && m % 2) ? -1.0 : 1.0;
        return s * std::exp(m * std::log(std::abs(rate)) - std::lgamma(m + 1.0));
    };
    f.log_abs = [rate](int m) {
        if (m < 0 || (rate == 0 && m > 0))
            return -inf;
        return m == 0 ? 0.0 : m * std::log(std::abs(rate)) - std::lgamma(m + 1.0);
    };
    f.kappa_closed = [rate](double r) { return std::exp(std::abs(rate) * r); };
    return f;
}

// The deformed variant passes through 0; it carries the cos(theta) bound of the theorems.
Contour composed_contour(const ComposedDef& c, bool deformed = false)
{
    if (c.contour == "rotated_line")
        return make_rotated_line(c.theta_tilde, deformed ? 0.0 : c.offset);
    if (c.contour == "hankel")
        return make_hankel(c.epsilon, deformed);
    // offset doubles as the radius of the joining arc
    return make_wedge(c.in_angle, c.out_angle, deformed ? 0.0 : c.offset);
}

} // namespace

IniDoc parse_ini(std::istream& in)
{
    IniDoc doc;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header" + where);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty() || doc.count(section))
                throw ConfigError("empty or repeated section [" + section + "]" + where);
            doc[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value" + where);
        if (section.empty())
            throw ConfigError("key outside any section" + where);
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key" + where);
        if (!doc[section].emplace(key, value).second)
            throw ConfigError("repeated key '" + key + "'" + where);
    }
    return doc;
}

std::vector<std::string> builtin_ids()
{
    return {"faddeev", "gamma", "recip_gamma", "riemann_zeta", "hurwitz_zeta", "gauss_2f1", "airy"};
}

ProblemDef lookup_problem(const std::string& id_or_path)
{
    if (id_or_path == "faddeev")
        return ProblemDef{};
    for (const auto& id : builtin_ids()) {
        if (id == id_or_path) {
            ProblemDef d;
            d.kind = ProblemKind::classical;
            d.name = id;
            d.spec.id = classical::parse_example(id);
            return d;
        }
    }
    if (!std::filesystem::exists(id_or_path))
        throw ConfigError("unknown problem '" + id_or_path + "' (neither a built-in id nor a file)");
    std::ifstream in(id_or_path);
    if (!in)
        throw ConfigError("cannot read problem file '" + id_or_path + "'");
    return parse_problem_def(in);
}

ProblemDef parse_problem_def(std::istream& in)
{
    IniDoc doc = parse_ini(in);
    static const std::set<std::string> known{"problem", "parameters", "kernel", "function",
                                             "decay",   "contour",    "domain"};
    for (const auto& [name, kv] : doc)
        if (!known.count(name))
            throw ConfigError("unknown section [" + name + "]");
    auto section = [&](const std::string& name) {
        auto it = doc.find(name);
        return Section(name, it == doc.end() ? std::map<std::string, std::string>{} : it->second);
    };

    ProblemDef d;
    std::string builtin, name;
    Section prob = section("problem");
    prob.text("builtin", builtin);
    prob.text("name", name);
    prob.finish();

    if (!builtin.empty()) {
        static const std::set<std::string> composed_only{"kernel", "function", "decay", "contour", "domain"};
        for (const auto& s : composed_only)
            if (doc.count(s))
                throw ConfigError("section [" + s + "] is not allowed with a built-in problem");
        auto ids = builtin_ids();
        if (std::find(ids.begin(), ids.end(), builtin) == ids.end())
            throw ConfigError("unknown built-in problem '" + builtin + "'");
        d = lookup_problem(builtin);
        if (!name.empty())
            d.name = name;
        Section par = section("parameters");
        if (d.kind == ProblemKind::faddeev) {
            par.real("theta_tilde", d.theta_tilde);
        } else {
            par.real("alpha", d.spec.alpha);
            par.real("theta_tilde", d.spec.theta_tilde);
            par.real("a", d.spec.a);
            par.real("b", d.spec.b);
            par.real("c", d.spec.c);
            par.real("epsilon", d.spec.epsilon);
        }
        par.finish();
        return d;
    }

    if (doc.count("parameters"))
        throw ConfigError("section [parameters] needs problem.builtin");
    for (const char* s : {"kernel", "function", "decay", "contour"})
        if (!doc.count(s))
            throw ConfigError(std::string("composed problem is missing section [") + s + "]");
    d.kind = ProblemKind::composed;
    d.name = name.empty() ? "composed" : name;
    ComposedDef& c = d.composed;

    Section ker = section("kernel");
    ker.text("kind", c.kernel);
    ker.real("alpha", c.kernel_alpha);
    ker.real("shift", c.kernel_shift);
    ker.complex("scale", c.kernel_scale);
    ker.finish();
    require_one_of("kernel", c.kernel, {"faddeev", "mellin", "laplace"});

    Section fun = section("function");
    fun.text("kind", c.function);
    fun.real("rate", c.rate);
    fun.finish();
    require_one_of("function", c.function, {"exp", "inv_sinh"});

    Section dec = section("decay");
    dec.integer("k0", c.k0);
    dec.real("delta1", c.delta1);
    dec.real("c_w", c.c_w);
    dec.real("delta2", c.delta2);
    dec.real("c", c.c);
    dec.real("c_tilde", c.c_tilde);
    dec.finish();
    if (!(c.delta1 > 0) || c.delta2 < 0 || !(c.c_w > 0) || !(c.c > 0) || !(c.c_tilde >= c.c) || c.k0 < 0)
        throw ConfigError("decay constants need delta1 > 0, delta2 >= 0, c_w > 0, c_tilde >= c > 0, k0 >= 0");

    Section con = section("contour");
    con.text("kind", c.contour);
    con.real("theta_tilde", c.theta_tilde);
    con.real("offset", c.offset);
    con.real("epsilon", c.epsilon);
    con.real("in_angle", c.in_angle);
    con.real("out_angle", c.out_angle);
    con.finish();
    require_one_of("contour", c.contour, {"rotated_line", "hankel", "wedge"});

    Section dom = section("domain");
    dom.real("gamma_abs_max", c.gamma_abs_max);
    dom.real("gamma_arg_max", c.gamma_arg_max);
    dom.integer("split", c.split);
    dom.finish();
    return d;
}

DecayHypotheses composed_hypotheses(const ComposedDef& c)
{
    DecayHypotheses h;
    h.delta1 = c.delta1;
    h.delta2 = c.delta2;
    h.c = c.c;
    h.k0 = c.k0;
    h.n0 = c.function == "inv_sinh" ? 1 : 0;
    if (c.function == "inv_sinh")
        h.f_envelope_from = 2.0;
    const Contour con = composed_contour(c, true);
    h.d = con.d();
    h.b = cos_theta_bound(con);
    const double cw = c.c_w, ct = c.c_tilde;
    h.c_w = [cw](cplx) { return cw; };
    h.c_tilde = [ct](cplx) { return ct; };
    return h;
}

TransformProblem build_problem(const ProblemDef& d, Exec exec)
{
    if (d.kind == ProblemKind::faddeev)
        return faddeev::problem(d.theta_tilde, exec);
    if (d.kind == ProblemKind::classical)
        return classical::make_problem(d.spec, exec);

    const ComposedDef c = d.composed;
    TransformProblem p;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s(%s,%s,%s,a=%.17g,s=%.17g,r=%.17g)", d.name.c_str(), c.kernel.c_str(),
                  c.function.c_str(), c.contour.c_str(), c.kernel_alpha, c.kernel_shift, c.rate);
    p.id = buf;
    p.exec = exec;
    p.moments = std::make_shared<MomentTable>(p.id);

    const double ka = c.kernel_alpha, ks = c.kernel_shift;
    const cplx sc = c.kernel_scale;
    if (c.kernel == "faddeev")
        p.kernel.K = [sc](cplx w, cplx z) { return sc * faddeev::kernel(w, z); };
    else if (c.kernel == "mellin")
        p.kernel.K = [sc, ka, ks](cplx w, cplx z) { return sc * pow_principal(z, w + ks) * std::exp(ka * z); };
    else
        p.kernel.K = [sc, ka](cplx w, cplx z) { return sc * std::exp((ka - w) * z); };
    p.kernel.k0 = c.k0;
    p.kernel.delta1 = c.delta1;
    const double cw = c.c_w, ct = c.c_tilde;
    p.kernel.c_w = [cw](cplx) { return cw; };

    if (c.function == "exp") {
        const double rate = c.rate;
        p.function.f = [rate](cplx u) { return std::exp(rate * u); };
        p.function.laurent = exp_laurent(rate);
    } else {
        p.function.f = faddeev::inv_sinh;
        p.function.laurent = faddeev::laurent();
        p.function.envelope_from = 2.0;
    }
    p.function.delta2 = c.delta2;
    p.function.c = c.c;
    p.function.c_tilde = [ct](cplx) { return ct; };

    auto contour = [c](cplx, cplx) { return composed_contour(c); };
    auto deformed = [c](cplx, cplx) { return composed_contour(c, true); };
    p.contours = {contour, deformed, contour};
    const double gmax = c.gamma_abs_max, amax = c.gamma_arg_max;
    p.in_U = [gmax, amax](cplx g) { return g != 0.0 && std::abs(g) <= gmax && std::abs(std::arg(g)) < amax; };
    p.split = c.split;
    return p;
}

} // namespace mero
