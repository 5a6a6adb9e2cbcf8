#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace qglab;
using qgtest::sample;

namespace {

SpectralField cos1(const Grid& g) {
    return sample(g, [](double x, double) { return std::cos(x); });
}

}  // namespace

TEST_CASE("loglog slope of an exact power law") {
    std::vector<double> x{1, 2, 4, 8}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
    CHECK(fit_loglog_slope(x, y) == doctest::Approx(1.7).epsilon(1e-13));
    // points at or below the floor are dropped
    y[3] = 1e-15;
    CHECK(fit_loglog_slope(x, y) == doctest::Approx(1.7).epsilon(1e-13));
    CHECK(std::isnan(fit_loglog_slope({1, 2}, {1.0, 0.0})));
    CHECK_THROWS_AS(fit_loglog_slope({1, 2}, {1.0}), ValidationError);
}

TEST_CASE("mu sweep input validation") {
    Grid g(16);
    MuSweepConfig c;
    CHECK_THROWS_AS(compare_mu(cos1(g), 0.5, {}, c), ValidationError);
    CHECK_THROWS_AS(compare_mu(cos1(g), 0.5, {0.1, 0.2}, c), ValidationError);
    CHECK_THROWS_AS(compare_mu(cos1(g), 0.5, {0.1, -0.1}, c), ValidationError);
}

TEST_CASE("mu sweep on a common steady state") {
    Grid g(16);
    MuSweepConfig c;
    c.dt = 1e-2;
    c.t_end = 0.5;
    c.diag_every = 5;
    MuSweepResult r = compare_mu(cos1(g), 0.5, {0.1, 0.01}, c);
    for (double e : r.l2_errors) CHECK(e == 0.0);
    for (double e : r.energy_errors) CHECK(e == 0.0);
    CHECK(r.monotone);
    CHECK(r.data_discrepancy == 0.0);
}

TEST_CASE("mu sweep errors shrink with mu") {
    Grid g(32);
    MuSweepConfig c;
    c.dt = 1e-3;
    c.t_end = 0.25;
    c.diag_every = 25;
    MuSweepResult r = compare_mu(cmt_datum(g), 0.5, {1e-1, 1e-2, 1e-3}, c);
    CHECK(r.monotone);
    CHECK(r.l2_errors[2] < r.l2_errors[0]);
    CHECK(r.slope_l2 >= 0.9);
    CHECK(r.slope_l2 <= 2.1);
    CHECK(r.reference_dt == 5e-4);
    CHECK(r.reference_self_error < 0.1 * r.l2_errors.back());
}

TEST_CASE("mu sweep refuses a reference that is too coarse") {
    Grid g(32);
    MuSweepConfig c;
    c.dt = 0.05;
    c.t_end = 1.0;
    c.diag_every = 1;
    CHECK_THROWS_AS(compare_mu(cmt_datum(g), 0.5, {1e-9}, c), ReferenceTooCoarse);
}

TEST_CASE("blow-up watch on a steady datum") {
    Grid g(16);
    StepperConfig c;
    c.dt = 1e-2;
    c.t_end = 1.0;
    c.diag_every = 10;
    RunOptions o;
    o.norms.extra_sobolev = {1.5};
    RunResult r = run(cos1(g), ModelParams::regularized(1.0, 0.5), c, o);
    BlowupWatch w = blowup_watch(r.records, 2.0, 1.0, 1.5);
    for (std::size_t i = 0; i < w.times.size(); ++i) {
        CHECK(w.theta_inf_integral[i] == doctest::Approx(w.times[i]).epsilon(1e-12));
        CHECK(w.u_inf_integral[i] == doctest::Approx(w.times[i]).epsilon(1e-12));
        CHECK(w.extension_guaranteed[i] == (w.times[i] < 1.5 - 1e-12));
    }
    CHECK(w.envelope_rate == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(blowup_watch({}, 2.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("blow-up watch on the cmt datum stays inside its envelope") {
    Grid g(64);
    StepperConfig c;
    c.dt = 1e-3;
    c.t_end = 4.0;
    c.diag_every = 40;
    RunOptions o;
    o.norms.extra_sobolev = {1.5};
    const double mu = 1.0;
    RunResult r = run(cmt_datum(g), ModelParams::regularized(mu, 0.75), c, o);
    BlowupWatch w = blowup_watch(r.records, 2.0, mu, 1e3);
    const double z0 = r.records.front().hs.at(1.5) * r.records.front().hs.at(1.5) +
                      mu * r.records.front().hs.at(2.0) * r.records.front().hs.at(2.0);
    for (std::size_t i = 0; i < w.times.size(); ++i) {
        CHECK(std::isfinite(w.hs[i]));
        const double z = r.records[i].hs.at(1.5) * r.records[i].hs.at(1.5) + mu * w.hs[i] * w.hs[i];
        CHECK(std::log(z / z0) <= w.envelope_rate * w.times[i] + 1e-12);
        CHECK(w.extension_guaranteed[i]);
    }
    CHECK(std::isfinite(w.z_ode_constant));
}

TEST_CASE("flux scaling") {
    Grid g(32);
    const std::vector<double> eps{0.25, 0.125, 0.0625};
    CHECK_THROWS_AS(flux_scaling(cos1(g), eps, ConvexG{}), DegenerateFit);

    Grid big(512);
    FluxScaling f = flux_scaling(synthetic_besov_field(big, 0.5, 127, 1), {0.25, 0.125, 0.0625, 0.03125, 0.015625},
                                 ConvexG{});
    CHECK(f.flux.size() == 5);
    CHECK(f.exponent >= 0.2);
}

TEST_CASE("synthetic besov field spectrum") {
    Grid g(64);
    const SpectralField f = synthetic_besov_field(g, 0.5, 20, 3);
    CHECK(std::abs(f.at(3, 4)) == doctest::Approx(std::pow(5.0, -1.5)).epsilon(1e-14));
    CHECK(std::abs(f.at(0, 0)) == 0.0);
    CHECK(std::abs(f.at(21, 0)) == 0.0);
    CHECK(hermitian_defect(f) == 0.0);
}
