#include "wavetail/solver.hpp"

#include <algorithm>
#include <cmath>

#include "wavetail/errors.hpp"

namespace wavetail {

namespace {

// C-infinity bump, peak 1, support |x| < 1.
double bump(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

double bump_d(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    double d = 1.0 - x * x;
    return bump(x) * (-2.0 * x / (d * d));
}

}  // namespace

double FieldHistory::phi_at(std::size_t slice, std::size_t j) const {
    if (j == 0) {
        double p1 = psi[slice][1] / r[1];
        double p2 = psi[slice][2] / r[2];
        return (4.0 * p1 - p2) / 3.0;  // even extension of phi
    }
    return psi[slice][j] / r[j];
}

double FieldHistory::dtphi_at(std::size_t slice, std::size_t j) const {
    if (j == 0) {
        double p1 = dtpsi[slice][1] / r[1];
        double p2 = dtpsi[slice][2] / r[2];
        return (4.0 * p1 - p2) / 3.0;
    }
    return dtpsi[slice][j] / r[j];
}

std::size_t FieldHistory::slice_index(double t) const {
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t i = 0; i < slice_times.size(); ++i) {
        double d = std::fabs(slice_times[i] - t);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

Stepper::Stepper(const Scenario& sc, Exec exec) : sc_(sc), exec_(exec) {
    const GridSpec& g = sc.grid;
    std::size_t n = static_cast<std::size_t>(std::llround(g.r_max / g.dr)) + 1;
    r_.resize(n);
    h_.resize(n);
    B_.resize(n);
    V_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        r_[j] = static_cast<double>(j) * g.dr;
        auto c = sc.background.eval(r_[j]);
        h_[j] = c.h;
        B_[j] = c.B;
        V_[j] = c.V;
    }
    if (g.cfl <= 0.0 || g.cfl > 1.0) fail(ErrKind::CflViolation, "need 0 < cfl <= 1");
    double speed_cap = 1.0 + sc.background.sup_h();
    double dt0 = g.cfl * g.dr / speed_cap;
    // snap so an integer number of steps lands exactly on t_max; at cfl = 1 on
    // an unperturbed background this keeps dt = dr exactly
    long long nsteps = static_cast<long long>(std::ceil(g.t_max / dt0 - 1e-12));
    dt_ = g.t_max / static_cast<double>(nsteps);
    if (dt_ > g.dr / speed_cap * (1.0 + 1e-12))
        fail(ErrKind::CflViolation, "time step exceeds the stability bound");

    // data: phi(0,r) = eps * bump((r - r0)/w)
    prev_.assign(n, 0.0);
    cur_.assign(n, 0.0);
    next_.assign(n, 0.0);
    accel_.assign(n, 0.0);
    accel_prev_.assign(n, 0.0);
    dtpsi_est_.assign(n, 0.0);
    std::vector<double> psi0(n, 0.0), dtpsi0(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double x = (r_[j] - sc.r0) / sc.width;
        psi0[j] = sc.epsilon * r_[j] * bump(x);
        if (sc.data_mode == "outgoing")
            dtpsi0[j] = -sc.epsilon * (bump(x) + r_[j] * bump_d(x) / sc.width);
    }
    // Taylor start: psi^1 = psi^0 + dt dtpsi^0 + dt^2/2 a^0.
    prev_ = psi0;
    cur_ = psi0;  // the rhs evaluation reads the current level
    evaluate_rhs(dtpsi0, accel_);
    for (std::size_t j = 1; j + 1 < n; ++j)
        next_[j] = psi0[j] + dt_ * dtpsi0[j] + 0.5 * dt_ * dt_ * accel_[j];
    next_[0] = 0.0;
    next_[n - 1] = psi0[n - 1] - (dt_ / sc.grid.dr) * (psi0[n - 1] - psi0[n - 2]);
    cur_ = next_;
    t_ = dt_;
    nstep_ = 1;
}

double Stepper::nonlinear_source(std::size_t j, double phi, double dtphi, double drphi,
                                 double ddtphi) const {
    (void)j;
    double total = 0.0;
    for (const auto& term : sc_.terms) {
        double prod = term.coeff;
        for (std::size_t f = 0; f < term.factor_derivs.size(); ++f) {
            double v;
            switch (term.factor_derivs[f]) {
                case 0: v = phi; break;
                case 1: v = term.factor_tangential[f] ? (dtphi + drphi) : dtphi; break;
                default: v = ddtphi; break;
            }
            prod *= v;
        }
        total += prod;
    }
    return total;
}

// accel = [D2 psi - B dtpsi - V psi + r*C] / (1+h) evaluated on cur_,
// with the supplied d_t psi estimate for the damping and nonlinear terms.
void Stepper::evaluate_rhs(const std::vector<double>& dtpsi_est, std::vector<double>& accel) const {
    const std::size_t n = r_.size();
    const double dr = sc_.grid.dr;
    const double inv_dr2 = 1.0 / (dr * dr);
    const bool have_nl = !sc_.terms.empty();
    const double cmod = sc_.background.modulation(t_);
    const std::vector<double>& psi = cur_;
    accel.assign(n, 0.0);
    parallel_for(n - 2, exec_, [&](std::size_t idx) {
        std::size_t j = idx + 1;
        double lap = (psi[j + 1] - 2.0 * psi[j] + psi[j - 1]) * inv_dr2;
        double src = 0.0;
        if (have_nl) {
            double phi = psi[j] / r_[j];
            double dtphi = dtpsi_est[j] / r_[j];
            double phi_m = (j == 1) ? ((4.0 * psi[1] / r_[1] - psi[2] / r_[2]) / 3.0) : psi[j - 1] / r_[j - 1];
            double phi_p = psi[j + 1] / r_[j + 1];
            double drphi = (phi_p - phi_m) / (2.0 * dr);
            double ddtphi = accel_prev_[j] / r_[j];  // last acceleration as the d_t^2 estimate
            src = r_[j] * nonlinear_source(j, phi, dtphi, drphi, ddtphi);
        }
        accel[j] = (lap - cmod * B_[j] * dtpsi_est[j] - cmod * V_[j] * psi[j] + src) / (1.0 + cmod * h_[j]);
    });
}

void Stepper::step() {
    const std::size_t n = r_.size();
    accel_prev_ = accel_;
    const double dt = dt_, dr = sc_.grid.dr;
    const bool implicit_damping = sc_.background.a_B != 0.0;

    // pass 1: backward-difference d_t psi estimate
    parallel_for(n, exec_, [&](std::size_t j) { dtpsi_est_[j] = (cur_[j] - prev_[j]) / dt; });
    evaluate_rhs(dtpsi_est_, accel_);
    const double cmod = sc_.background.modulation(t_);
    auto advance_with = [&](const std::vector<double>& accel, std::vector<double>& out) {
        parallel_for(n - 2, exec_, [&](std::size_t idx) {
            std::size_t j = idx + 1;
            if (implicit_damping) {
                // centered damping solved pointwise:
                // (1+h)(next-2c+p)/dt^2 + B(next-p)/(2dt) = lap - V c + src
                double a = (1.0 + cmod * h_[j]) / (dt * dt);
                double b = cmod * B_[j] / (2.0 * dt);
                double rhs_wo_dt = accel[j] * (1.0 + cmod * h_[j]) + cmod * B_[j] * dtpsi_est_[j];
                out[j] = (rhs_wo_dt + a * (2.0 * cur_[j] - prev_[j]) + b * prev_[j]) / (a + b);
            } else {
                out[j] = 2.0 * cur_[j] - prev_[j] + dt * dt * accel[j];
            }
        });
        out[0] = 0.0;
        out[n - 1] = cur_[n - 1] - (dt / dr) * (cur_[n - 1] - cur_[n - 2]);
    };
    advance_with(accel_, next_);

    // pass 2 (corrector): centered d_t psi from the predictor
    if (!sc_.terms.empty() || implicit_damping) {
        parallel_for(n, exec_, [&](std::size_t j) { dtpsi_est_[j] = (next_[j] - prev_[j]) / (2.0 * dt); });
        evaluate_rhs(dtpsi_est_, accel_);
        advance_with(accel_, next_);
    }

    std::swap(prev_, cur_);
    std::swap(cur_, next_);
    t_ += dt;
    ++nstep_;
}

std::vector<double> Stepper::dtpsi() const {
    std::size_t n = r_.size();
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = (cur_[j] - prev_[j]) / dt_ + 0.5 * dt_ * accel_[j];
    return d;
}

double Stepper::energy() const {
    const std::size_t n = r_.size();
    const double dt = dt_, dr = sc_.grid.dr;
    return block_sum(n - 1, exec_, [&](std::size_t j) {
        double kin = (cur_[j] - prev_[j]) / dt;
        double gp = (prev_[j + 1] - prev_[j]) / dr;
        double gc = (cur_[j + 1] - cur_[j]) / dr;
        double pot = V_[j] * cur_[j] * prev_[j];
        return 0.5 * dr * ((1.0 + h_[j]) * kin * kin + gp * gc + pot);
    });
}

double Stepper::max_abs_phi() const {
    const std::size_t n = r_.size();
    return block_max(n - 1, exec_, [&](std::size_t idx) {
        std::size_t j = idx + 1;
        return std::fabs(cur_[j] / r_[j]);
    });
}

double Stepper::residual_l2() const {
    // 4th-order spatial defect: (D2 - D4) psi in the interior, L2 in 3D measure.
    const std::size_t n = r_.size();
    const double dr = sc_.grid.dr;
    double s = block_sum(n - 4, exec_, [&](std::size_t idx) {
        std::size_t j = idx + 2;
        double d2 = (cur_[j + 1] - 2.0 * cur_[j] + cur_[j - 1]) / (dr * dr);
        double d4 = (-cur_[j + 2] + 16.0 * cur_[j + 1] - 30.0 * cur_[j] + 16.0 * cur_[j - 1] -
                     cur_[j - 2]) /
                    (12.0 * dr * dr);
        double def = (d2 - d4) / std::max(r_[j], dr);  // defect on phi
        return def * def * r_[j] * r_[j] * dr;
    });
    return std::sqrt(4.0 * 3.14159265358979323846 * s);
}

FieldHistory run_scenario(const Scenario& sc, Exec exec) {
    Stepper st(sc, exec);
    const GridSpec& g = sc.grid;
    FieldHistory out;
    out.grid = g;
    out.dt = st.dt();
    out.scenario_hash = sc.hash();
    out.r = st.radii();
    out.probe_r_lo = sc.probe_r_lo;
    out.probe_r_hi = sc.probe_r_hi;

    const std::size_t n = out.r.size();
    std::size_t jlo = static_cast<std::size_t>(std::ceil(sc.probe_r_lo / g.dr));
    std::size_t jhi = static_cast<std::size_t>(std::floor(sc.probe_r_hi / g.dr));
    jlo = std::max<std::size_t>(jlo, 1);
    jhi = std::min(jhi, n - 2);
    std::size_t jmid = (jlo + jhi) / 2;

    long long steps_per_slice = std::max<long long>(1, std::llround(g.slice_dt / st.dt()));
    long long total_steps = std::llround(g.t_max / st.dt());

    // residual accumulation per dyadic slab of t
    struct Acc {
        double lo, hi, sum = 0;
        long long count = 0;
    };
    std::vector<Acc> slabs;
    for (double T = 1.0; T < g.t_max; T *= 2.0) slabs.push_back({T, std::min(2.0 * T, g.t_max), 0, 0});

    auto capture = [&](double tnow) {
        out.slice_times.push_back(tnow);
        out.psi.push_back(st.psi());
        out.dtpsi.push_back(st.dtpsi());
        const auto& s = out.psi.back();
        for (double v : s)
            if (!std::isfinite(v))
                fail(ErrKind::ValidationError,
                     "non-finite field value at t=" + std::to_string(tnow));
        out.energy_times.push_back(tnow);
        out.energy.push_back(st.energy());
        double res = st.residual_l2();
        for (auto& sl : slabs)
            if (tnow >= sl.lo && tnow < sl.hi) {
                sl.sum += res * res;
                sl.count++;
            }
    };

    auto probe = [&](double tnow) {
        double m = 0.0, mid = 0.0;
        const auto& psi = st.psi();
        for (std::size_t j = jlo; j <= jhi; ++j) m = std::max(m, std::fabs(psi[j] / out.r[j]));
        mid = psi[jmid] / out.r[jmid];
        out.probe_times.push_back(tnow);
        out.probe_band_abs_max.push_back(m);
        out.probe_mid_phi.push_back(mid);
    };

    capture(st.t());  // the earliest complete step pair
    probe(st.t());
    for (long long k = 1; k < total_steps; ++k) {
        st.step();
        probe(st.t());
        if (k % 4 == 0) {
            double m = st.max_abs_phi();
            if (!(m <= sc.blowup_ceiling))  // catches inf and nan as well
                fail(ErrKind::Blowup, "field exceeded the ceiling at t=" + std::to_string(st.t()));
        }
        if (k % steps_per_slice == 0) capture(st.t());
    }
    for (const auto& sl : slabs)
        if (sl.count > 0)
            out.residual_slabs.push_back({sl.lo, sl.hi, std::sqrt(sl.sum / sl.count)});
    return out;
}

void validate_finite(const FieldHistory& h) {
    for (std::size_t s = 0; s < h.n_slices(); ++s)
        for (double v : h.psi[s])
            if (!std::isfinite(v))
                fail(ErrKind::ValidationError,
                     "non-finite value in slice at t=" + std::to_string(h.slice_times[s]));
}

FieldHistory synthetic_history(const GridSpec& grid, double (*phi)(double, double),
                               double (*dtphi)(double, double)) {
    FieldHistory out;
    out.grid = grid;
    out.dt = grid.cfl * grid.dr;
    std::size_t n = static_cast<std::size_t>(std::llround(grid.r_max / grid.dr)) + 1;
    out.r.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.r[j] = j * grid.dr;
    for (double t = 0.0; t <= grid.t_max + 1e-9; t += grid.slice_dt) {
        out.slice_times.push_back(t);
        std::vector<double> ps(n), dps(n);
        for (std::size_t j = 0; j < n; ++j) {
            ps[j] = out.r[j] * phi(t, out.r[j]);
            dps[j] = out.r[j] * dtphi(t, out.r[j]);
        }
        out.psi.push_back(std::move(ps));
        out.dtpsi.push_back(std::move(dps));
    }
    return out;
}

std::string VfWord::name() const {
    std::string s;
    for (int i = 0; i < dt; ++i) s += "dt.";
    for (int i = 0; i < dr; ++i) s += "dr.";
    for (int i = 0; i < this->s; ++i) s += "S.";
    if (!s.empty()) s.pop_back();
    return s.empty() ? "phi" : s;
}

std::vector<VfWord> vf_words_up_to(int max_order) {
    std::vector<VfWord> out;
    for (int total = 0; total <= max_order; ++total)
        for (int sdt = 0; sdt <= 1 && sdt <= total; ++sdt)
            for (int ss = 0; ss + sdt <= 1 && sdt + ss <= total; ++ss) {
                int dr = total - sdt - ss;
                if (dr < 0) continue;
                out.push_back({sdt, dr, ss});
            }
    return out;
}

namespace {

// 4th-order radial derivative of a slice field (2nd-order one-sided at edges).
std::vector<double> radial_derivative(const std::vector<double>& f, double dr) {
    std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    for (std::size_t j = 2; j + 2 < n; ++j)
        d[j] = (-f[j + 2] + 8.0 * f[j + 1] - 8.0 * f[j - 1] + f[j - 2]) / (12.0 * dr);
    if (n >= 3) {
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dr);
        d[1] = (f[2] - f[0]) / (2.0 * dr);
        d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * dr);
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dr);
    }
    return d;
}

std::vector<double> phi_slice(const FieldHistory& h, std::size_t slice) {
    std::vector<double> out(h.n_r());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = h.phi_at(slice, j);
    return out;
}

std::vector<double> dtphi_slice(const FieldHistory& h, std::size_t slice) {
    std::vector<double> out(h.n_r());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = h.dtphi_at(slice, j);
    return out;
}

}  // namespace

std::vector<double> apply_vector_fields(const FieldHistory& h, std::size_t slice, const VfWord& w) {
    if (slice >= h.n_slices()) fail(ErrKind::RegionOutsideHistory, "slice index out of range");
    if (w.dt + w.s > 1)
        fail(ErrKind::OrderTooHigh, "at most one time derivative is stored per slice");
    double t = h.slice_times[slice];
    std::vector<double> base;
    if (w.s == 1) {
        // S = t d_t + r d_r acts innermost (canonical ordering d^i S^k)
        std::vector<double> ft = dtphi_slice(h, slice);
        std::vector<double> fr = radial_derivative(phi_slice(h, slice), h.grid.dr);
        base.resize(ft.size());
        for (std::size_t j = 0; j < base.size(); ++j) base[j] = t * ft[j] + h.r[j] * fr[j];
    } else if (w.dt == 1) {
        base = dtphi_slice(h, slice);
    } else {
        base = phi_slice(h, slice);
    }
    for (int k = 0; k < w.dr; ++k) base = radial_derivative(base, h.grid.dr);
    return base;
}

}  // namespace wavetail
