#pragma once
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbivol {

// Base class for every error thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument values (zero log argument, non-positive modulus, ...).
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// Malformed textual input; carries the 1-based line number when known.
struct parse_error : error {
    int line;
    parse_error(const std::string& msg, int line_ = 0) : error(msg), line(line_) {}
};

// Structurally invalid diagram (bad incidence, wrong label multiplicities,
// multiple components, ...).
struct structural_error : error {
    explicit structural_error(const std::string& msg) : error(msg) {}
};

// Diagram whose strand does not alternate over/under.
struct non_alternating_error : structural_error {
    explicit non_alternating_error(const std::string& msg) : structural_error(msg) {}
};

// Parameters outside the hyperbolic range.
struct nonhyperbolic_error : error {
    explicit nonhyperbolic_error(const std::string& msg) : error(msg) {}
};

// A shape ratio collapsed onto {0, 1} (or a required denominator vanished).
struct degenerate_error : error {
    explicit degenerate_error(const std::string& msg) : error(msg) {}
};

// Closed-form assembly produced inconsistent values on identified segments
// (signals a wrong root or square-root branch).
struct inconsistency_error : error {
    explicit inconsistency_error(const std::string& msg) : error(msg) {}
};

// Iteration failed to converge; carries the best iterate found.
struct convergence_error : error {
    std::vector<std::complex<double>> best;
    explicit convergence_error(const std::string& msg,
                               std::vector<std::complex<double>> best_ = {})
        : error(msg), best(std::move(best_)) {}
};

// Cone-angle continuation lost the branch; reports the last good parameter.
struct continuation_error : error {
    double t_last;
    continuation_error(const std::string& msg, double t_last_)
        : error(msg), t_last(t_last_) {}
};

// Input failed a documented precondition (e.g. residual too large).
struct precondition_error : error {
    explicit precondition_error(const std::string& msg) : error(msg) {}
};

// No polynomial root yields a nondegenerate assembled solution.
struct no_geometric_solution_error : error {
    explicit no_geometric_solution_error(const std::string& msg) : error(msg) {}
};

}  // namespace orbivol
