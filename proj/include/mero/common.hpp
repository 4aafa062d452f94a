#pragma once

#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace mero {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr cplx I{0.0, 1.0};

// Magnitude above which an integrand sample is treated as a pole hit.
inline constexpr double overflow_guard = 1e300;

enum class Exec { serial, parallel };

// Failure kinds map onto CLI exit codes: config 1, domain 2, numerical 3.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg, int code)
        : std::runtime_error(msg), kind_(std::move(kind)), code_(code) {}
    const std::string& kind() const { return kind_; }
    int exit_code() const { return code_; }

private:
    std::string kind_;
    int code_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError", msg, 1) {}
};

struct DomainViolation : Error {
    explicit DomainViolation(const std::string& msg, std::string kind = "DomainViolation")
        : Error(std::move(kind), msg, 2) {}
};

struct NumericalError : Error {
    NumericalError(std::string kind, const std::string& msg) : Error(std::move(kind), msg, 3) {}
};

inline NumericalError non_convergence(const std::string& msg) { return {"NonConvergence", msg}; }
inline NumericalError pole_too_close(const std::string& msg) { return {"PoleTooClose", msg}; }
inline DomainViolation inadmissible(const std::string& msg) { return DomainViolation(msg, "Inadmissible"); }

// Neumaier compensated sum.
template <class T>
struct CompensatedSum {
    T sum{};
    T comp{};
    void add(T x)
    {
        T t = sum + x;
        comp += compensation(sum, x, t);
        sum = t;
    }
    T value() const { return sum + comp; }

private:
    static double part(double a, double b, double t)
    {
        return std::abs(a) >= std::abs(b) ? (a - t) + b : (b - t) + a;
    }
    static T compensation(T a, T b, T t)
    {
        if constexpr (std::is_same_v<T, double>)
            return part(a, b, t);
        else
            return T(part(a.real(), b.real(), t.real()), part(a.imag(), b.imag(), t.imag()));
    }
};

std::string format_complex(cplx z);
cplx parse_complex(const std::string& s);

} // namespace mero
