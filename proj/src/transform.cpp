#include "mero/transform.hpp"

#include <algorithm>
#include <fstream>
#include <cctype>

#include "json.hpp"

namespace mero {

namespace {

std::mutex dir_mu;
std::string cache_dir;

std::string sanitize(const std::string& id)
{
    std::string s;
    for (char ch : id)
        s += std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' ? ch : '_';
    return s;
}

std::string cache_path(const std::string& id)
{
    std::string dir = moment_cache_dir();
    if (dir.empty())
        return {};
    return dir + "/" + sanitize(id) + ".jsonl";
}

QuadOptions options_for(const TransformProblem& p, double tol)
{
    QuadOptions o;
    o.abs_tol = tol;
    o.rel_tol = tol;
    o.tail_delta = p.delta() > 0 ? p.delta() : 1.0;
    o.exec = p.exec;
    return o;
}

} // namespace

void set_moment_cache_dir(const std::string& dir)
{
    std::lock_guard lk(dir_mu);
    cache_dir = dir;
}

std::string moment_cache_dir()
{
    std::lock_guard lk(dir_mu);
    return cache_dir;
}

void MomentTable::load_once() const
{
    std::call_once(loaded_, [this] {
        std::string path = cache_path(id_);
        if (path.empty())
            return;
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) {
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded())
                continue; // torn line from an interrupted write
            Key k{j["m"].get<int>(), j["wr"].get<double>(), j["wi"].get<double>(), j["tol"].get<double>()};
            map_[k] = {cplx(j["re"].get<double>(), j["im"].get<double>()), j["err"].get<double>()};
        }
    });
}

bool MomentTable::lookup(int m, cplx w, double tol, Entry& out) const
{
    load_once();
    std::shared_lock lk(mu_);
    auto it = map_.find({m, w.real(), w.imag(), tol});
    if (it == map_.end())
        return false;
    out = it->second;
    return true;
}

void MomentTable::insert(int m, cplx w, double tol, Entry e)
{
    load_once();
    std::unique_lock lk(mu_);
    auto [it, fresh] = map_.emplace(Key{m, w.real(), w.imag(), tol}, e);
    if (!fresh)
        return;
    std::string path = cache_path(id_);
    if (path.empty())
        return;
    nlohmann::json j{{"m", m}, {"wr", w.real()}, {"wi", w.imag()}, {"tol", tol},
                     {"re", e.value.real()}, {"im", e.value.imag()}, {"err", e.error}};
    std::ofstream out(path, std::ios::app);
    out << j.dump() << '\n';
}

std::size_t MomentTable::size() const
{
    load_once();
    std::shared_lock lk(mu_);
    return map_.size();
}

QuadratureResult evaluate_g_on(const TransformProblem& p, const Contour& c, cplx w, cplx gamma, double tol)
{
    const auto& K = p.kernel.K;
    const auto& f = p.function.f;
    return integrate(c, [&](cplx z) { return K(w, z) * f(gamma * z); }, options_for(p, tol));
}

QuadratureResult evaluate_g_full(const TransformProblem& p, cplx w, cplx gamma, double tol)
{
    if (gamma == 0.0)
        throw DomainViolation("gamma must be nonzero");
    if (p.in_W && !p.in_W(w))
        throw DomainViolation("w = " + format_complex(w) + " outside the W-domain of " + p.id);
    if (p.in_U && !p.in_U(gamma))
        throw DomainViolation("gamma = " + format_complex(gamma) + " outside the U-domain of " + p.id);
    return evaluate_g_on(p, p.contours.original(w, gamma), w, gamma, tol);
}

cplx evaluate_g(const TransformProblem& p, cplx w, cplx gamma, double tol)
{
    return evaluate_g_full(p, w, gamma, tol).value;
}

MomentTable::Entry moment_h_full(const TransformProblem& p, int m, cplx w, double tol)
{
    MomentTable::Entry e;
    if (p.moments && p.moments->lookup(m, w, tol, e))
        return e;
    if (p.in_W && !p.in_W(w))
        throw DomainViolation("w = " + format_complex(w) + " outside the W-domain of " + p.id);
    QuadOptions o = options_for(p, tol);
    const double d1 = p.kernel.delta1 > 0 ? p.kernel.delta1 : 1.0;
    o.tail_delta = d1;
    // the tail of |z|^{m-k0} e^{-delta1 |z|} peaks near (m - k0)/delta1
    o.min_extent = 1.5 * std::max(0, m - p.k0()) / d1;
    const auto& K = p.kernel.K;
    auto r = integrate(p.contours.original(w, 0.0), [&](cplx z) { return K(w, z) * std::pow(z, m); }, o);
    e = {r.value, r.error};
    if (p.moments)
        p.moments->insert(m, w, tol, e);
    return e;
}

cplx moment_h(const TransformProblem& p, int m, cplx w, double tol)
{
    return moment_h_full(p, m, w, tol).value;
}

cplx truncated_series(const TransformProblem& p, int n, cplx w, cplx gamma, double tol)
{
    CompensatedSum<cplx> s;
    for (int m = -p.n0(); m <= n; ++m) {
        cplx a = p.function.laurent.a(m);
        if (a == 0.0)
            continue;
        s.add(a * moment_h(p, m, w, tol) * std::pow(gamma, m));
    }
    return s.value();
}

FormalGammaSeries assemble_formal_series(const TransformProblem& p, cplx w, int M, double tol)
{
    FormalGammaSeries g;
    g.n0 = p.n0();
    g.split = p.split;
    for (int m = -g.n0; m <= M; ++m) {
        cplx a = p.function.laurent.a(m);
        g.c.push_back(a == 0.0 ? cplx(0) : a * moment_h(p, m, w, tol));
    }
    return g;
}

EnvelopeReport check_envelopes(const TransformProblem& p, cplx w, cplx gamma)
{
    EnvelopeReport rep;
    const auto& cf = p.contours.deformed ? p.contours.deformed : p.contours.original;
    Contour c = cf(w, gamma);
    const double extent = 20.0 / std::max(p.kernel.delta1, 0.1);
    for (cplx z : sample_points(c, 32, extent)) {
        double az = std::abs(z);
        if (az < 1e-12)
            continue;
        if (p.kernel.c_w) {
            double env = p.kernel.c_w(w) * std::exp(-p.kernel.delta1 * az) * std::pow(az, -p.k0());
            rep.kernel_ratio = std::max(rep.kernel_ratio, std::abs(p.kernel.K(w, z)) / env);
        }
        if (p.function.c_tilde && std::abs(gamma) * az >= p.function.envelope_from) {
            double env = p.function.c_tilde(gamma) * std::exp(p.function.delta2 * az) *
                         std::pow(std::abs(gamma) * az, -p.n0());
            rep.function_ratio = std::max(rep.function_ratio, std::abs(p.function.f(gamma * z)) / env);
        }
    }
    rep.ok = rep.kernel_ratio <= 1 + 1e-9 && rep.function_ratio <= 1 + 1e-9;
    return rep;
}

} // namespace mero
