#pragma once

#include <string>
#include <vector>

#include "wavetail/errors.hpp"
#include "wavetail/symbolic.hpp"

namespace wavetail {

// One product term of the nonlinearity. Factor counts only; the concrete
// derivative directions live in the scenario layer.
struct NonlinearTerm {
    int factors = 0;      // N: number of field factors, >= 2
    int derivs = 0;       // J: total derivative count across factors
    int tangential = 0;   // T: how many of the J derivatives are tangential
    bool second_order = false;    // some factor carries two derivatives (quasilinear)
    bool total_derivative = false;  // term is d_(i)(phi^n)-shaped
    bool dt_structured = false;     // the outer derivative is d_t

    void validate() const {
        if (factors < 2) fail(ErrKind::ValidationError, "term needs at least two factors");
        if (tangential > derivs) fail(ErrKind::ValidationError, "tangential count exceeds derivative count");
        if (derivs < 0 || tangential < 0) fail(ErrKind::ValidationError, "negative counts");
        if (derivs > 2 * factors) fail(ErrKind::ValidationError, "more than two derivatives per factor");
        if (total_derivative && derivs != 1)
            fail(ErrKind::ValidationError, "total-derivative term must carry exactly one outer derivative");
    }

    // phi^2 dphi shape: slow initial decay, needs the r^gamma jumpstart.
    bool is_phi2_dphi_shaped() const { return factors == 3 && derivs == 1 && tangential == 0; }
};

// Background decay increment plus the nonlinearity description.
struct ProblemSpec {
    double sigma = 0.5;           // numeric sigma used to resolve comparisons
    bool sigma_reduced = true;    // irrational-reduction convention in force
    bool has_background = true;   // false: all coefficient amplitudes vanish
    std::vector<NonlinearTerm> terms;

    void validate() const {
        if (sigma <= 0) fail(ErrKind::ValidationError, "sigma must be positive");
        for (const auto& t : terms) {
            t.validate();
            if (t.is_phi2_dphi_shaped() && sigma <= 0.25)
                fail(ErrKind::ValidationError,
                     "phi^2 dphi nonlinearity requires sigma > 1/4, got sigma=" + std::to_string(sigma));
        }
    }

    Sym sigma_sym() const { return Sym::sigma(); }

    bool needs_jumpstart() const {
        for (const auto& t : terms)
            if (t.is_phi2_dphi_shaped()) return true;
        return false;
    }
};

}  // namespace wavetail
