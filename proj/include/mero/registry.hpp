#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "mero/bounds.hpp"
#include "mero/classical.hpp"
#include "mero/transform.hpp"

// Problem registry: built-in examples by id, or problems composed from primitives in a
// sectioned key = value file.
namespace mero {

// [section] -> key -> value, in file order of sections
using IniDoc = std::map<std::string, std::map<std::string, std::string>>;

IniDoc parse_ini(std::istream& in);

enum class ProblemKind { faddeev, classical, composed };

struct ComposedDef {
    std::string kernel = "laplace"; // faddeev | mellin | laplace
    double kernel_alpha = 0;
    double kernel_shift = 0;
    cplx kernel_scale = 1.0;
    int k0 = 0;
    double delta1 = 0;
    double c_w = 1;

    std::string function = "exp"; // exp | inv_sinh
    double rate = 1;
    double delta2 = 0;
    double c = 1;
    double c_tilde = 1;

    std::string contour = "rotated_line"; // rotated_line | hankel | wedge
    double theta_tilde = 0;
    double offset = 0;
    double epsilon = 1;
    double in_angle = -pi / 3, out_angle = pi / 3;

    double gamma_abs_max = inf;
    double gamma_arg_max = pi / 2;
    int split = 0;
};

struct ProblemDef {
    ProblemKind kind = ProblemKind::faddeev;
    std::string name = "faddeev";
    double theta_tilde = 0; // faddeev
    classical::ExampleSpec spec;
    ComposedDef composed;
};

std::vector<std::string> builtin_ids();

// Id of a built-in problem, or a path to a definition file.
ProblemDef lookup_problem(const std::string& id_or_path);
ProblemDef parse_problem_def(std::istream& in);

// Validates the declared envelopes of composed problems at load (hard error on failure).
TransformProblem build_problem(const ProblemDef& d, Exec exec = Exec::parallel);

// Theorem-1 decay data as declared for a composed problem.
DecayHypotheses composed_hypotheses(const ComposedDef& c);

} // namespace mero
