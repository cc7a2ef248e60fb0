#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavetail/par.hpp"
#include "wavetail/scenario.hpp"

namespace wavetail {

// Evolution record: full psi and d_t psi slices at a fixed capture stride,
// a dense band-maximum probe series, the conserved discrete energy, and
// per-dyadic-slab residual norms. psi(t,0) = 0 throughout.
struct FieldHistory {
    GridSpec grid;
    double dt = 0;
    std::uint64_t scenario_hash = 0;
    std::vector<double> r;

    std::vector<double> slice_times;
    std::vector<std::vector<double>> psi;
    std::vector<std::vector<double>> dtpsi;

    double probe_r_lo = 1, probe_r_hi = 2;
    std::vector<double> probe_times;
    std::vector<double> probe_band_abs_max;  // sup over the probe band of |phi|
    std::vector<double> probe_mid_phi;       // phi at the band midpoint

    std::vector<double> energy_times;
    std::vector<double> energy;

    struct ResidualSlab {
        double t_lo = 0, t_hi = 0;
        double l2 = 0;
    };
    std::vector<ResidualSlab> residual_slabs;

    std::size_t n_r() const { return r.size(); }
    std::size_t n_slices() const { return slice_times.size(); }

    // capture stride; the first gap is shortened by the startup step
    double slice_stride() const {
        if (slice_times.size() > 2) return slice_times[2] - slice_times[1];
        if (slice_times.size() > 1) return slice_times[1] - slice_times[0];
        return grid.slice_dt;
    }

    // phi = psi / r with the even-extension value on the axis.
    double phi_at(std::size_t slice, std::size_t j) const;
    double dtphi_at(std::size_t slice, std::size_t j) const;
    std::size_t slice_index(double t) const;  // nearest capture index
};

// One evolution state, stepped by leapfrog with a predictor-corrector pass
// for time-derivative nonlinearities.
class Stepper {
  public:
    Stepper(const Scenario& sc, Exec exec);

    void step();
    double t() const { return t_; }
    double dt() const { return dt_; }
    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& psi() const { return cur_; }
    const std::vector<double>& psi_prev() const { return prev_; }
    std::vector<double> dtpsi() const;  // centered when possible
    double energy() const;              // leapfrog-conserved discrete energy
    double max_abs_phi() const;
    double residual_l2() const;  // 4th-order spatial defect of the stored step

    const Scenario& scenario() const { return sc_; }
    Exec exec() const { return exec_; }

  private:
    friend FieldHistory run_scenario(const Scenario&, Exec);
    double nonlinear_source(std::size_t j, double phi, double dtphi, double drphi, double ddtphi) const;
    void evaluate_rhs(const std::vector<double>& dtpsi_est, std::vector<double>& accel) const;

    Scenario sc_;
    Exec exec_;
    std::vector<double> r_, h_, B_, V_;
    double dt_ = 0, t_ = 0;
    std::vector<double> prev_, cur_, next_, accel_, accel_prev_, dtpsi_est_;
    long long nstep_ = 0;
};

FieldHistory run_scenario(const Scenario& sc, Exec exec = default_exec());

// Immediate error on any non-finite stored value.
void validate_finite(const FieldHistory& h);

// Synthetic history from closed-form phi(t,r), d_t phi(t,r): used by the
// measurement tests.
FieldHistory synthetic_history(const GridSpec& grid, double (*phi)(double, double),
                               double (*dtphi)(double, double));

// Derived lattice fields Z^J phi on the capture slices, Z in {d_t, d_r, S}.
// Words may carry at most one time derivative (the capture stride is too
// coarse for d_t^2); violations raise OrderTooHigh.
struct VfWord {
    int dt = 0;      // number of leading d_t (0 or 1)
    int dr = 0;      // number of d_r
    int s = 0;       // number of scaling fields (0 or 1, and dt must be 0)
    std::string name() const;
    int order() const { return dt + dr + s; }
};
std::vector<VfWord> vf_words_up_to(int max_order);

// Values of Z^J phi over one capture slice (4th-order radial stencils).
std::vector<double> apply_vector_fields(const FieldHistory& h, std::size_t slice, const VfWord& word);

}  // namespace wavetail
