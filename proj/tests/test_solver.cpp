#include <doctest.h>

#include <cmath>
#include <cstring>

#include "wavetail/meter.hpp"
#include "wavetail/scenario.hpp"
#include "wavetail/solver.hpp"

using namespace wavetail;

namespace {

Scenario linear_minkowski(double dr, double r_max, double t_max, double cfl = 1.0) {
    Scenario sc = parse_scenario("sigma = 0.5\nepsilon = 0.01\nr0 = 2\nwidth = 1\n");
    sc.grid.dr = dr;
    sc.grid.r_max = r_max;
    sc.grid.t_max = t_max;
    sc.grid.cfl = cfl;
    sc.grid.slice_dt = 1.0;
    return sc;
}

// d'Alembert evolution of time-symmetric radial data via odd extension
double exact_psi(const Scenario& sc, double t, double r) {
    auto psi0 = [&](double x) {
        double s = x < 0 ? -1.0 : 1.0;
        double ax = std::fabs(x);
        double y = (ax - sc.r0) / sc.width;
        if (std::fabs(y) >= 1.0) return 0.0;
        return s * sc.epsilon * ax * std::exp(1.0 - 1.0 / (1.0 - y * y));
    };
    return 0.5 * (psi0(r - t) + psi0(r + t));
}

}  // namespace

TEST_CASE("unit-CFL evolution reproduces the d'Alembert solution to round-off") {
    Scenario sc = linear_minkowski(1.0 / 16, 24.0, 8.0);
    Stepper st(sc, Exec::Serial);
    while (st.t() < 8.0 - 1e-9) st.step();
    CHECK(st.t() == doctest::Approx(8.0));
    double worst = 0.0;
    const auto& psi = st.psi();
    for (std::size_t j = 0; j < psi.size(); ++j)
        worst = std::max(worst, std::fabs(psi[j] - exact_psi(sc, st.t(), st.radii()[j])));
    CHECK(worst < 1e-12);
}

TEST_CASE("time-symmetric start keeps the first step even in t") {
    // for even-in-t solutions psi(dt) - psi(0) = O(dt^2), no O(dt) drift
    Scenario sc = linear_minkowski(1.0 / 16, 12.0, 4.0, 0.9);
    Stepper st(sc, Exec::Serial);
    double worst = 0.0;
    for (std::size_t j = 0; j < st.psi().size(); ++j)
        worst = std::max(worst, std::fabs(st.psi()[j] - st.psi_prev()[j]));
    CHECK(worst < 0.5 * st.dt() * st.dt() * sc.epsilon * 50.0);
}

TEST_CASE("strong Huygens: the interior is silent after the wave passes") {
    // data in r in [1,3]; phi(10, 2) vanishes since t - r = 8 > 3
    Scenario sc = linear_minkowski(1.0 / 16, 16.0, 10.0);
    FieldHistory h = run_scenario(sc, Exec::Serial);
    std::size_t s = h.slice_index(10.0);
    std::size_t j = static_cast<std::size_t>(std::llround(2.0 / sc.grid.dr));
    CHECK(std::fabs(h.phi_at(s, j)) < 1e-6);
    CHECK(huygens_residual(h, 3.0, 5.0 * sc.grid.dr) < 1e-6);
}

TEST_CASE("zero data stays identically zero") {
    Scenario sc = linear_minkowski(1.0 / 8, 8.0, 4.0);
    sc.epsilon = 0.0;
    FieldHistory h = run_scenario(sc, Exec::Serial);
    for (std::size_t s = 0; s < h.n_slices(); ++s)
        for (double v : h.psi[s]) CHECK(v == 0.0);
}

TEST_CASE("large focusing data trips the blowup guard with a timestamp") {
    Scenario sc = parse_scenario(
        "sigma = 0.5\nterm = 1.0 dphi^3\nepsilon = 60\nr0 = 2\nwidth = 0.7\n"
        "data = outgoing\ndr = 0.0625\nr_max = 16\nt_max = 12\ncfl = 0.9\n");
    CHECK_THROWS_WITH_AS(run_scenario(sc, Exec::Serial), doctest::Contains("t="), Error);
    try {
        run_scenario(sc, Exec::Serial);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::Blowup);
    }
}

TEST_CASE("nonlinear runs converge at second order") {
    // three-grid comparison on a resolved pulse: max-norm difference ratio
    // sits in the second-order band
    std::vector<std::vector<double>> sol;
    for (double dr : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
        Scenario sc = parse_scenario(
            "sigma = 0.5\nterm = -1.0 dphi^3\nepsilon = 0.4\nr0 = 6\nwidth = 4\n"
            "cfl = 0.875\nt_max = 16\n");
        sc.grid.dr = dr;
        sc.grid.r_max = 32.0;
        Stepper st(sc, Exec::Serial);
        while (st.t() < sc.grid.t_max - 1e-9) st.step();
        sol.push_back(st.psi());
    }
    auto diff_at = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double worst = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j)
            worst = std::max(worst, std::fabs(a[j] - b[j * 2]));
        return worst;
    };
    double e1 = diff_at(sol[0], sol[1]);
    double e2 = diff_at(sol[1], sol[2]);
    CHECK(e1 / e2 > 3.2);
    CHECK(e1 / e2 < 4.8);
}

TEST_CASE("serial and parallel stepping agree bit for bit") {
    Scenario sc = parse_scenario(
        "sigma = 0.5\na_V = 0.5\nterm = -1.0 dphi^3\nepsilon = 0.1\nr0 = 2\nwidth = 1\n"
        "dr = 0.03125\nr_max = 12\nt_max = 3\ncfl = 0.9\n");
    Stepper a(sc, Exec::Serial), b(sc, Exec::Parallel);
    for (int k = 0; k < 40; ++k) {
        a.step();
        b.step();
    }
    CHECK(std::memcmp(a.psi().data(), b.psi().data(), a.psi().size() * sizeof(double)) == 0);
}

TEST_CASE("total-derivative source satisfies the discrete flux identity") {
    // P phi = phi^2 d_t phi = d_t(phi^3)/3: the time integral of the weighted
    // source equals the boundary difference of r phi^3 / 3.
    Scenario sc = parse_scenario(
        "sigma = 0.5\nterm = 1.0 dt(phi^2 dphi)\nepsilon = 0.2\nr0 = 2\nwidth = 1\n"
        "dr = 0.03125\nr_max = 20\nt_max = 6\ncfl = 1.0\n");
    Stepper st(sc, Exec::Serial);
    const auto& r = st.radii();
    const double dr = sc.grid.dr;
    auto f_now = [&](const std::vector<double>& prev, const std::vector<double>& cur,
                     const std::vector<double>& next, double dt) {
        double acc = 0.0;
        for (std::size_t j = 1; j + 1 < r.size(); ++j) {
            double phi = cur[j] / r[j];
            double dtphi = (next[j] - prev[j]) / (2.0 * dt * r[j]);
            acc += r[j] * phi * phi * dtphi * dr;
        }
        return acc;
    };
    auto cube_mass = [&](const std::vector<double>& psi) {
        double acc = 0.0;
        for (std::size_t j = 1; j + 1 < r.size(); ++j) {
            double phi = psi[j] / r[j];
            acc += r[j] * phi * phi * phi / 3.0 * dr;
        }
        return acc;
    };
    std::vector<double> psi0 = st.psi_prev();  // t = 0 snapshot
    double q_time = 0.0;
    std::vector<double> prev = st.psi_prev(), cur = st.psi();
    while (st.t() < sc.grid.t_max - 1e-9) {
        st.step();
        // st now holds (cur at t_n, next at t_{n+1}); prev/cur are n-1, n
        q_time += f_now(prev, cur, st.psi(), st.dt()) * st.dt();
        prev = cur;
        cur = st.psi();
    }
    double boundary = cube_mass(cur) - cube_mass(psi0);
    CHECK(q_time == doctest::Approx(boundary).epsilon(2e-3));
}

TEST_CASE("spatial defect of the stored step drops fourfold under refinement") {
    auto residual_at = [&](double dr) {
        Scenario sc = parse_scenario(
            "sigma = 0.5\na_V = 0.5\nepsilon = 0.05\nr0 = 6\nwidth = 4\n"
            "cfl = 0.875\nt_max = 4\n");
        sc.grid.dr = dr;
        sc.grid.r_max = 20.0;
        Stepper st(sc, Exec::Serial);
        while (st.t() < 4.0 - 1e-9) st.step();
        return st.residual_l2();
    };
    double r1 = residual_at(1.0 / 16);
    double r2 = residual_at(1.0 / 32);
    CHECK(r1 / r2 > 3.0);
    CHECK(r1 / r2 < 5.5);
}

TEST_CASE("corrupted history raises immediately") {
    Scenario sc = linear_minkowski(1.0 / 8, 8.0, 2.0);
    FieldHistory h = run_scenario(sc, Exec::Serial);
    CHECK_NOTHROW(validate_finite(h));
    h.psi[0][5] = std::nan("");
    CHECK_THROWS_AS(validate_finite(h), Error);
}

TEST_CASE("vector-field words on a synthetic self-similar profile") {
    // S annihilates functions of r/t
    GridSpec g;
    g.dr = 0.05;
    g.r_max = 10.0;
    g.t_max = 24.0;
    g.slice_dt = 1.0;
    auto phi = [](double t, double r) { return (r / t) * (r / t); };
    auto dtphi = [](double t, double r) { return -2.0 * r * r / (t * t * t); };
    FieldHistory h = synthetic_history(g, phi, dtphi);
    std::size_t s = h.slice_index(20.0);
    std::vector<double> sphi = apply_vector_fields(h, s, VfWord{0, 0, 1});
    double worst = 0.0;
    for (std::size_t j = 4; j + 4 < sphi.size(); ++j) worst = std::max(worst, std::fabs(sphi[j]));
    CHECK(worst < 1e-6);

    // d_t of a stored run matches the stored reconstruction by construction
    Scenario sc = linear_minkowski(1.0 / 16, 12.0, 6.0);
    FieldHistory run = run_scenario(sc, Exec::Serial);
    std::vector<double> dt1 = apply_vector_fields(run, 3, VfWord{1, 0, 0});
    for (std::size_t j = 1; j < run.n_r(); ++j)
        CHECK(dt1[j] == doctest::Approx(run.dtpsi[3][j] / run.r[j]).epsilon(1e-9));

    // more than one stored time derivative is out of reach
    CHECK_THROWS_AS(apply_vector_fields(run, 3, VfWord{1, 0, 1}), Error);
}
