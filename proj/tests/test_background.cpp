#include <doctest.h>

#include <cmath>

#include "wavetail/background.hpp"
#include "wavetail/errors.hpp"

using namespace wavetail;

TEST_CASE("coefficient evaluation") {
    BackgroundModel mink;
    auto c = mink.eval(3.0);
    CHECK(c.h == 0.0);
    CHECK(c.B == 0.0);
    CHECK(c.V == 0.0);
    CHECK(mink.trivial());

    // a_V = 1, sigma = 1: V = <r>^-3, so V(1) = 2^-3/2
    BackgroundModel m;
    m.sigma = 1.0;
    m.a_V = 1.0;
    CHECK(m.eval(1.0).V == doctest::Approx(std::pow(2.0, -1.5)));

    // decay envelope: |h| <= 0.1 <100>^-1.5
    BackgroundModel p;
    p.sigma = 0.5;
    p.a_h = 0.1;
    CHECK(std::fabs(p.eval(100.0).h) <= 0.1 * std::pow(1.0 + 100.0 * 100.0, -0.75) + 1e-12);
    CHECK(std::fabs(p.eval(100.0).h) == doctest::Approx(1e-4).epsilon(0.05));
}

TEST_CASE("symbol class verifier accepts exact power laws") {
    auto g = [](double r) { return std::pow(1.0 + r * r, -1.0); };  // <r>^-2
    SymbolClassReport rep = verify_symbol_class(g, -2.0, 3);
    CHECK(rep.pass);

    auto lorentz = [](double r) { return 1.0 / (1.0 + r * r); };
    CHECK(verify_symbol_class(lorentz, -2.0, 3).pass);
}

TEST_CASE("symbol class verifier rejects oscillation under the scaling field") {
    // S(sin r / <r>) contains r cos(r)/<r>, which does not decay like <r>^-1
    auto g = [](double r) { return std::sin(r) / std::sqrt(1.0 + r * r); };
    SymbolClassReport rep = verify_symbol_class(g, -1.0, 1);
    CHECK(!rep.pass);
    // exhibit the growth: the S-entry's worst ratio blows past the ceiling
    bool found = false;
    for (const auto& e : rep.entries)
        if (e.multiindex == "S" && e.worst_ratio > rep.ceiling) found = true;
    CHECK(found);
}

TEST_CASE("shipped profiles sit in their declared class with constant near 1") {
    for (double sigma : {0.3, 0.5, 1.0, 2.0}) {
        BackgroundModel m;
        m.sigma = sigma;
        m.a_h = 0.25;
        m.a_B = 0.5;
        m.a_V = 1.0;
        auto h = [&](double r) { return m.eval(r).h; };
        auto B = [&](double r) { return m.eval(r).B; };
        auto V = [&](double r) { return m.eval(r).V; };
        CHECK(verify_symbol_class(h, -(1.0 + sigma), 4).pass);
        CHECK(verify_symbol_class(B, -(1.0 + sigma), 4).pass);
        CHECK(verify_symbol_class(V, -(2.0 + sigma), 4).pass);
    }
}

TEST_CASE("sampled variant guards against coarse spacing") {
    std::vector<double> r, g;
    for (double x = 1.0; x < 50.0; x += 1.0) {
        r.push_back(x);
        g.push_back(1.0 / (1.0 + x * x));
    }
    CHECK_THROWS_AS(verify_symbol_class_sampled(r, g, -2.0, 2), Error);
}
