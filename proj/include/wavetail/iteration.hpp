#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavetail/conversions.hpp"
#include "wavetail/decay_bound.hpp"
#include "wavetail/nonlinearity.hpp"

namespace wavetail {

struct TraceStep {
    int sweep = 0;
    std::string track;  // phi1 | phi2 | phi3 | data | combined
    std::string rule;
    std::optional<DecayBound> in;
    DecayBound out;
    std::string note;
};

struct IterationTrace {
    std::vector<TraceStep> steps;

    void add(int sweep, const std::string& track, const std::string& rule,
             std::optional<DecayBound> in, const DecayBound& out, const std::string& note = "") {
        steps.push_back({sweep, track, rule, std::move(in), out, note});
    }

    // Line format: step=<k> track=<t> rule=<name> in=(a,b,e;region) out=(...)
    std::string to_text() const;

    // Combined bound after each sweep, in order.
    std::vector<DecayBound> combined_sequence() const;
};

struct IterateResult {
    DecayBound final;
    IterationTrace trace;
    int sweeps = 0;
};

// Free-data decay increment kappa: the u-exponent of the data contribution is
// 1 + kappa.
Sym data_decay_kappa(const ProblemSpec& spec);

// Default r^gamma jumpstart exponent for phi^2 dphi terms.
Sym default_jumpstart_gamma(const ProblemSpec& spec);

// Run the bootstrap in one region until the combined bound stops improving.
IterateResult iterate_exterior(const ProblemSpec& spec);
IterateResult iterate_interior(const ProblemSpec& spec);

// Closed-form final rate; must agree with the iterated fixed points.
DecayBound predicted_final_rate(const ProblemSpec& spec);

}  // namespace wavetail
