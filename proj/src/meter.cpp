#include "wavetail/meter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavetail/errors.hpp"

namespace wavetail {

namespace {

constexpr double kPi = 3.14159265358979323846;

double jap(double x) { return std::sqrt(1.0 + x * x); }

// cell measure for the 3D spatial integral on the radial lattice
double cell_weight(double r, double dr) { return 4.0 * kPi * r * r * dr; }

std::vector<VfWord> derivative_words(int order) {
    // pure coordinate-derivative words d^i with i <= order, one d_t at most
    std::vector<VfWord> out;
    for (const auto& w : vf_words_up_to(order))
        if (w.s == 0) out.push_back(w);
    return out;
}

}  // namespace

RegionStat region_sup(const FieldHistory& h, const DyadicRegion& region, const VfWord& field,
                      Exec exec) {
    RegionStat st;
    st.region = region;
    st.field = field.name();
    bool touched = false;
    double slab_dt = h.slice_stride();
    for (std::size_t s = 0; s < h.n_slices(); ++s) {
        double t = h.slice_times[s];
        if (t < region.T || t >= 2.0 * region.T) continue;
        touched = true;
        std::vector<double> vals = apply_vector_fields(h, s, field);
        std::size_t n = vals.size();
        double m = block_max(n, exec, [&](std::size_t j) {
            return region.contains(t, h.r[j]) ? std::fabs(vals[j]) : 0.0;
        });
        double l2 = block_sum(n, exec, [&](std::size_t j) {
            if (!region.contains(t, h.r[j])) return 0.0;
            return vals[j] * vals[j] * cell_weight(h.r[j], h.grid.dr) * slab_dt;
        });
        std::size_t cnt = static_cast<std::size_t>(block_sum(n, exec, [&](std::size_t j) {
            return region.contains(t, h.r[j]) ? 1.0 : 0.0;
        }));
        st.sup = std::max(st.sup, m);
        st.l2 += l2;
        st.samples += cnt;
    }
    if (!touched || st.samples == 0)
        fail(ErrKind::RegionOutsideHistory, "region " + region.label() + " has no stored samples");
    st.l2 = std::sqrt(st.l2);
    return st;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& scale_value) {
    if (scale_value.size() < 4)
        fail(ErrKind::InsufficientPoints, "need at least 4 points, got " +
                                              std::to_string(scale_value.size()));
    std::vector<double> x, y;
    for (auto [s, v] : scale_value) {
        if (!(s > 0.0) || !(v > 0.0))
            fail(ErrKind::InsufficientPoints, "all scales and values must be positive");
        x.push_back(std::log(s));
        y.push_back(std::log(v));
    }
    std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0) fail(ErrKind::DegenerateFit, "zero spread in scales");
    FitResult f;
    f.slope = sxy / sxx;
    f.points = n;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - my - f.slope * (x[i] - mx);
        ssr += e * e;
    }
    f.stderr_ = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    if (f.stderr_ > 0.25)
        fail(ErrKind::DegenerateFit, "slope standard error " + std::to_string(f.stderr_) +
                                         " exceeds 0.25");
    return f;
}

FitResult fit_fixed_r_slope(const FieldHistory& h, double t_lo, double t_hi) {
    if (h.probe_times.empty()) fail(ErrKind::InsufficientPoints, "history has no probe series");
    const double q = std::sqrt(2.0);
    std::vector<std::pair<double, double>> pts;
    for (double T = t_lo; T * q <= t_hi * 1.0000001; T *= q) {
        double hi = T * q;
        double m = 0.0;
        bool seen = false;
        for (std::size_t i = 0; i < h.probe_times.size(); ++i) {
            double t = h.probe_times[i];
            if (t >= T && t < hi) {
                m = std::max(m, h.probe_band_abs_max[i]);
                seen = true;
            }
        }
        if (seen && m > 0.0) pts.push_back({std::sqrt(T * hi), m});
    }
    return fit_exponent(pts);
}

double huygens_residual(const FieldHistory& h, double r_inside, double margin) {
    double worst = 0.0;
    for (std::size_t s = 0; s < h.n_slices(); ++s) {
        double t = h.slice_times[s];
        for (std::size_t j = 0; j < h.n_r(); ++j) {
            if (t - h.r[j] > r_inside + margin)
                worst = std::max(worst, std::fabs(h.phi_at(s, j)));
        }
    }
    return worst;
}

LENorms compute_le_norms(const FieldHistory& h, double t0, double t1, int order, Exec exec) {
    (void)exec;
    LENorms out;
    double dt_slice = h.slice_stride();
    int n_annuli = static_cast<int>(std::ceil(std::log2(std::max(4.0, h.grid.r_max)))) + 1;

    auto annulus_of = [&](double rr) {
        int band = rr < 2.0 ? 0 : static_cast<int>(std::floor(std::log2(rr)));
        return std::min(band, n_annuli - 1);
    };

    for (const auto& w : vf_words_up_to(order)) {
        std::vector<double> le_acc(n_annuli, 0.0), lestar_acc(n_annuli, 0.0), lelow_acc(n_annuli, 0.0),
            led_acc(n_annuli, 0.0);
        for (std::size_t s = 0; s < h.n_slices(); ++s) {
            double t = h.slice_times[s];
            if (t < t0 || t >= t1) continue;
            std::vector<double> f = apply_vector_fields(h, s, w);
            std::vector<double> ft, fr;
            bool have_d = w.dt == 0 && w.s == 0;
            if (have_d) {
                VfWord wt = w, wr = w;
                wt.dt = 1;
                wr.dr += 1;
                ft = apply_vector_fields(h, s, wt);
                fr = apply_vector_fields(h, s, wr);
            }
            for (std::size_t j = 0; j < h.n_r(); ++j) {
                double rr = h.r[j];
                double wgt = cell_weight(rr, h.grid.dr) * dt_slice;
                int band = annulus_of(rr);
                double jr = jap(rr);
                le_acc[band] += f[j] * f[j] / jr * wgt;
                lestar_acc[band] += f[j] * f[j] * jr * wgt;
                lelow_acc[band] += f[j] * f[j] / (jr * jr) / jr * wgt;
                if (have_d) {
                    double d2 = ft[j] * ft[j] + fr[j] * fr[j];
                    led_acc[band] += d2 / jr * wgt;
                }
            }
        }
        double le = 0, lestar = 0, lelow = 0, led = 0;
        for (int b = 0; b < n_annuli; ++b) {
            le = std::max(le, std::sqrt(le_acc[b]));
            lelow = std::max(lelow, std::sqrt(lelow_acc[b]));
            led = std::max(led, std::sqrt(led_acc[b]));
            lestar += std::sqrt(lestar_acc[b]);
        }
        out.le += le;
        out.le_star += lestar;
        out.le1 += led + lelow;
    }
    return out;
}

double le_norm_of_word(const FieldHistory& h, double t0, double t1, const VfWord& word) {
    double dt_slice = h.slice_stride();
    int n_annuli = static_cast<int>(std::ceil(std::log2(std::max(4.0, h.grid.r_max)))) + 1;
    std::vector<double> acc(n_annuli, 0.0);
    for (std::size_t s = 0; s < h.n_slices(); ++s) {
        double t = h.slice_times[s];
        if (t < t0 || t >= t1) continue;
        std::vector<double> f = apply_vector_fields(h, s, word);
        for (std::size_t j = 0; j < h.n_r(); ++j) {
            double rr = h.r[j];
            int band = rr < 2.0 ? 0 : std::min<int>(static_cast<int>(std::floor(std::log2(rr))), n_annuli - 1);
            acc[band] += f[j] * f[j] / jap(rr) * cell_weight(rr, h.grid.dr) * dt_slice;
        }
    }
    double le = 0.0;
    for (double a : acc) le = std::max(le, std::sqrt(a));
    return le;
}

RGammaResult compute_rgamma(const FieldHistory& h, double gamma, double T1, double T2, int order,
                            double sigma, Exec exec) {
    (void)exec;
    if (!(gamma > 0.5) || !(gamma < 1.0) || !(gamma < 2.0 * sigma))
        fail(ErrKind::GammaOutOfRange, "need 1/2 < gamma < min(1, 2 sigma)");
    RGammaResult out;
    double dt_slice = h.slice_stride();

    std::vector<VfWord> words;
    for (const auto& w : vf_words_up_to(order))
        if (w.dt == 0 && w.s == 0) words.push_back(w);  // dbar needs one extra d_t

    for (const auto& w : words) {
        for (std::size_t s = 0; s < h.n_slices(); ++s) {
            double t = h.slice_times[s];
            if (t < T1 || t >= T2) continue;
            std::vector<double> f = apply_vector_fields(h, s, w);
            VfWord wt = w, wr = w;
            wt.dt = 1;
            wr.dr += 1;
            std::vector<double> ft = apply_vector_fields(h, s, wt);
            std::vector<double> fr = apply_vector_fields(h, s, wr);
            for (std::size_t j = 1; j < h.n_r(); ++j) {
                double rr = h.r[j];
                double wgt = cell_weight(rr, h.grid.dr) * dt_slice;
                double dbar = ft[j] + fr[j];
                out.bulk += (f[j] * f[j] * std::pow(rr, gamma - 3.0) +
                             dbar * dbar * std::pow(rr, gamma - 1.0)) *
                            wgt;
            }
        }
    }

    auto boundary_energy = [&](double T) {
        std::size_t s = h.slice_index(T);
        double total = 0.0;
        for (const auto& w : words) {
            std::vector<double> f = apply_vector_fields(h, s, w);
            VfWord wt = w, wr = w;
            wt.dt = 1;
            wr.dr += 1;
            std::vector<double> ft = apply_vector_fields(h, s, wt);
            std::vector<double> fr = apply_vector_fields(h, s, wr);
            for (std::size_t j = 1; j < h.n_r(); ++j) {
                double rr = h.r[j];
                double wgt = cell_weight(rr, h.grid.dr);
                double good = 0.5 * (ft[j] + fr[j]) + f[j] / (2.0 * rr);  // (d_v + 1/2r) f
                double frac = f[j] / rr;
                total += std::pow(rr, gamma) * (good * good + frac * frac) * wgt;
            }
        }
        return total;
    };
    out.e1 = boundary_energy(T1);
    out.e2 = boundary_energy(T2);
    return out;
}

std::vector<SiledRow> check_siled(const FieldHistory& h, const Scenario& sc,
                                  const std::vector<double>& Ts, int order, Exec exec) {
    std::vector<SiledRow> rows;
    double dt_slice = h.slice_stride();
    for (double T : Ts) {
        SiledRow row;
        row.T = T;
        LENorms lhs_norms = compute_le_norms(h, T, 2.0 * T, order, exec);
        row.lhs = lhs_norms.le1;

        // energy at the opening slice
        std::size_t s0 = h.slice_index(T);
        double hm = 0.0;
        for (const auto& w : derivative_words(order)) {
            VfWord wt = w, wr = w;
            if (w.dt == 1) continue;
            wt.dt = 1;
            wr.dr += 1;
            for (const auto& ww : {wt, wr}) {
                if (ww.dt > 1) continue;
                std::vector<double> f = apply_vector_fields(h, s0, ww);
                double acc = 0.0;
                for (std::size_t j = 0; j < h.n_r(); ++j)
                    acc += f[j] * f[j] * cell_weight(h.r[j], h.grid.dr);
                hm += std::sqrt(acc);
            }
        }

        // LE* of the nonlinearity over [T, 2T)
        double lestar_src = 0.0;
        if (!sc.terms.empty()) {
            int n_annuli = static_cast<int>(std::ceil(std::log2(std::max(4.0, h.grid.r_max)))) + 1;
            std::vector<double> acc(n_annuli, 0.0);
            for (std::size_t s = 0; s < h.n_slices(); ++s) {
                double t = h.slice_times[s];
                if (t < T || t >= 2.0 * T) continue;
                std::vector<double> phi = apply_vector_fields(h, s, {0, 0, 0});
                std::vector<double> dtphi = apply_vector_fields(h, s, {1, 0, 0});
                std::vector<double> drphi = apply_vector_fields(h, s, {0, 1, 0});
                for (std::size_t j = 0; j < h.n_r(); ++j) {
                    double src = 0.0;
                    for (const auto& term : sc.terms) {
                        double prod = term.coeff;
                        for (std::size_t fidx = 0; fidx < term.factor_derivs.size(); ++fidx) {
                            double v;
                            switch (term.factor_derivs[fidx]) {
                                case 0: v = phi[j]; break;
                                case 1:
                                    v = term.factor_tangential[fidx] ? dtphi[j] + drphi[j] : dtphi[j];
                                    break;
                                default: v = 0.0; break;
                            }
                            prod *= v;
                        }
                        src += prod;
                    }
                    double rr = h.r[j];
                    int band = rr < 2.0 ? 0 : std::min<int>(static_cast<int>(std::floor(std::log2(rr))), n_annuli - 1);
                    acc[band] += src * src * jap(rr) * cell_weight(rr, h.grid.dr) * dt_slice;
                }
            }
            for (double a : acc) lestar_src += std::sqrt(a);
        }

        // LE of d_t phi over [T, 2T)
        double le_dt = 0.0;
        {
            double best = 0.0;
            int n_annuli = static_cast<int>(std::ceil(std::log2(std::max(4.0, h.grid.r_max)))) + 1;
            for (const auto& w : derivative_words(order)) {
                if (w.dt == 1) continue;
                VfWord wt = w;
                wt.dt = 1;
                std::vector<double> acc(n_annuli, 0.0);
                for (std::size_t s = 0; s < h.n_slices(); ++s) {
                    double t = h.slice_times[s];
                    if (t < T || t >= 2.0 * T) continue;
                    std::vector<double> f = apply_vector_fields(h, s, wt);
                    for (std::size_t j = 0; j < h.n_r(); ++j) {
                        double rr = h.r[j];
                        int band = rr < 2.0 ? 0 : std::min<int>(static_cast<int>(std::floor(std::log2(rr))), n_annuli - 1);
                        acc[band] += f[j] * f[j] / jap(rr) * cell_weight(rr, h.grid.dr) * dt_slice;
                    }
                }
                double le = 0.0;
                for (double a : acc) le = std::max(le, std::sqrt(a));
                best += le;
            }
            le_dt = best;
        }

        row.rhs = hm + lestar_src + le_dt;
        if (row.lhs < 1e-14 && row.rhs < 1e-14) {
            row.vacuous = true;
            row.ratio = 0.0;
        } else if (row.rhs == 0.0) {
            row.ratio = std::numeric_limits<double>::infinity();
        } else {
            row.ratio = row.lhs / row.rhs;
        }
        rows.push_back(row);
    }
    return rows;
}

RateVerdict compare_rates(const std::string& name, double measured_slope,
                          const DecayBound& predicted, ProbeAxis axis, double tolerance,
                          double sigma) {
    RateVerdict v;
    v.name = name;
    v.measured = measured_slope;
    v.tolerance = tolerance;
    double a = predicted.a.eval(sigma);
    double b = predicted.b.eval(sigma);
    double e = predicted.e.eval(sigma);
    switch (axis) {
        case ProbeAxis::FixedRvsT:
            v.expected = -(b + e);
            break;
        case ProbeAxis::FixedVvsU:
            if (predicted.e == Sym(0))
                fail(ErrKind::AxisMismatch, "bound has no u-weight separation");
            v.expected = -e;
            break;
        case ProbeAxis::ExteriorVsR: {
            if (predicted.region == Region::Interior)
                fail(ErrKind::AxisMismatch, "interior bound probed on the exterior r axis");
            v.expected = -(a + b);
            break;
        }
    }
    v.pass = std::fabs(v.measured - v.expected) <= tolerance;
    return v;
}

}  // namespace wavetail
