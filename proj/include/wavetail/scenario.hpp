#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavetail/background.hpp"
#include "wavetail/nonlinearity.hpp"

namespace wavetail {

// One concrete product term c * f1 * f2 * ... for the solver. Factors are
// phi (0), dphi = d_t phi (1), dbar = (d_t + d_r) phi (1, tangential),
// ddphi = d_t^2 phi (2). A dt(...) wrapper marks d_t total-derivative shape.
struct TermSpec {
    double coeff = 1.0;
    std::vector<int> factor_derivs;
    std::vector<bool> factor_tangential;
    bool dt_wrapped = false;

    NonlinearTerm counts() const {
        NonlinearTerm t;
        t.factors = static_cast<int>(factor_derivs.size());
        for (std::size_t i = 0; i < factor_derivs.size(); ++i) {
            t.derivs += factor_derivs[i];
            if (factor_tangential[i]) t.tangential += factor_derivs[i];
            if (factor_derivs[i] >= 2) t.second_order = true;
        }
        t.total_derivative = dt_wrapped;
        t.dt_structured = dt_wrapped;
        return t;
    }
};

struct GridSpec {
    double dr = 1.0 / 32.0;
    double cfl = 0.9;  // Delta t = cfl * dr / (1 + sup|h|)
    double r_max = 64.0;
    double t_max = 32.0;
    double slice_dt = 1.0;  // full-slice capture stride
};

struct Scenario {
    BackgroundModel background;
    std::vector<TermSpec> terms;
    double epsilon = 1e-2;
    double r0 = 2.0;
    double width = 1.0;
    std::string data_mode = "time-symmetric";  // or "outgoing"
    GridSpec grid;
    double probe_r_lo = 1.0, probe_r_hi = 2.0;
    double blowup_ceiling = 1e3;
    bool sigma_reduced = true;
    std::string normalized_text;

    ProblemSpec problem() const {
        ProblemSpec p;
        p.sigma = background.sigma;
        p.sigma_reduced = sigma_reduced;
        p.has_background = !background.trivial();
        for (const auto& t : terms) p.terms.push_back(t.counts());
        p.validate();
        return p;
    }

    std::uint64_t hash() const;  // FNV-1a of the normalized text
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace wavetail
