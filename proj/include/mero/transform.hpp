#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "mero/contour.hpp"
#include "mero/quadrature.hpp"
#include "mero/series.hpp"

namespace mero {

struct KernelSpec {
    std::function<cplx(cplx w, cplx z)> K;
    int k0 = 0;
    double delta1 = 0;
    std::function<double(cplx w)> c_w;
    std::function<std::vector<cplx>(cplx w)> poles;
};

struct FunctionSpec {
    std::function<cplx(cplx)> f;
    LaurentSeries laurent;
    double delta2 = 0;
    double c = 1;
    std::function<double(cplx gamma)> c_tilde;
    // the c_tilde envelope is only claimed on |gamma z| >= envelope_from
    double envelope_from = 0;
    // poles of z -> f(gamma z)
    std::function<std::vector<cplx>(cplx gamma, double max_modulus)> poles;
};

// Contours may depend on gamma; gamma = 0 asks for the contour used for moments.
struct ContourFamily {
    std::function<Contour(cplx w, cplx gamma)> original;
    std::function<Contour(cplx w, cplx gamma)> deformed;
    std::function<Contour(cplx w, cplx gamma)> borel;
};

class MomentTable {
public:
    struct Entry {
        cplx value;
        double error;
    };

    explicit MomentTable(std::string problem_id) : id_(std::move(problem_id)) {}

    bool lookup(int m, cplx w, double tol, Entry& out) const;
    void insert(int m, cplx w, double tol, Entry e);
    std::size_t size() const;

private:
    using Key = std::tuple<int, double, double, double>;
    void load_once() const;

    std::string id_;
    mutable std::shared_mutex mu_;
    mutable std::once_flag loaded_;
    mutable std::map<Key, Entry> map_;
};

// Directory for the JSON-lines moment cache; empty disables persistence.
void set_moment_cache_dir(const std::string& dir);
std::string moment_cache_dir();

struct TransformProblem {
    std::string id;
    KernelSpec kernel;
    FunctionSpec function;
    ContourFamily contours;
    std::function<bool(cplx w)> in_W;
    std::function<bool(cplx gamma)> in_U;
    int split = 0;
    std::shared_ptr<MomentTable> moments;
    Exec exec = Exec::parallel;

    int n0() const { return function.laurent.n0; }
    int k0() const { return kernel.k0; }
    double delta() const { return kernel.delta1 - function.delta2; }
};

QuadratureResult evaluate_g_full(const TransformProblem& p, cplx w, cplx gamma, double tol);
cplx evaluate_g(const TransformProblem& p, cplx w, cplx gamma, double tol);
// Same integral over an explicitly supplied contour.
QuadratureResult evaluate_g_on(const TransformProblem& p, const Contour& c, cplx w, cplx gamma, double tol);

MomentTable::Entry moment_h_full(const TransformProblem& p, int m, cplx w, double tol);
cplx moment_h(const TransformProblem& p, int m, cplx w, double tol);

cplx truncated_series(const TransformProblem& p, int n, cplx w, cplx gamma, double tol);
FormalGammaSeries assemble_formal_series(const TransformProblem& p, cplx w, int M, double tol);

struct EnvelopeReport {
    bool ok = true;
    double kernel_ratio = 0;   // worst |K| / envelope
    double function_ratio = 0; // worst |f| / envelope
};

// Spot-check of the kernel and function envelopes at 32 points of the deformed contour.
EnvelopeReport check_envelopes(const TransformProblem& p, cplx w, cplx gamma);

} // namespace mero
