#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace qglab;
using qgtest::max_diff;
using qgtest::sample;

namespace {

SpectralField cos1(const Grid& g) {
    return sample(g, [](double x, double) { return std::cos(x); });
}

}  // namespace

TEST_CASE("exact linear decay in one step") {
    Grid g(16);
    SpectralField c2 = sample(g, [](double x, double) { return std::cos(2 * x); });
    const ModelParams p = ModelParams::dissipative(0.1, 0.5);
    for (double dt : {1e-3, 0.1, 0.7}) CHECK(max_diff(step(c2, p, dt), std::exp(-0.2 * dt) * c2) <= 1e-12);
}

TEST_CASE("steady states stay put") {
    Grid g(16);
    CHECK(max_diff(step(cos1(g), ModelParams::inviscid(), 0.01), cos1(g)) == 0.0);
    CHECK(max_diff(step(cos1(g), ModelParams::regularized(1.0, 0.5), 0.01), cos1(g)) == 0.0);
    CHECK(max_diff(step(cos1(g), ModelParams::inviscid(), 0.01, Scheme::rk4), cos1(g)) == 0.0);
}

TEST_CASE("stepper config validation") {
    StepperConfig c;
    c.dt = 0.003;
    c.t_end = 1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.dt = 0.01;
    CHECK_NOTHROW(c.validate());
    CHECK(c.steps() == 100);
    c.diag_every = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    CHECK(scheme_from_string("rk4") == Scheme::rk4);
    CHECK(scheme_from_string("etd-rk4") == Scheme::etd_rk4);
}

TEST_CASE("inviscid run conserves L2") {
    Grid g(64);
    StepperConfig c;
    c.dt = 1e-3;
    c.t_end = 1.0;
    c.diag_every = 100;
    RunResult r = run(cmt_datum(g), ModelParams::inviscid(), c);
    const double ratio = r.records.back().lp.l2 / r.records.front().lp.l2;
    CHECK(ratio >= 1 - 1e-6);
    CHECK(ratio <= 1 + 1e-6);
    CHECK(r.records.back().t == doctest::Approx(1.0));
    CHECK(r.records.size() == 11);
    CHECK(r.trajectory.size() == 2);
}

TEST_CASE("dissipative run has nonincreasing energy") {
    Grid g(64);
    StepperConfig c;
    c.dt = 1e-3;
    c.t_end = 0.5;
    c.diag_every = 10;
    RunResult r = run(cmt_datum(g), ModelParams::dissipative(0.1, 0.5), c);
    for (std::size_t i = 1; i < r.records.size(); ++i) CHECK(r.records[i].lp.l2 <= r.records[i - 1].lp.l2);
}

TEST_CASE("regularized run conserves the modified energy") {
    Grid g(64);
    StepperConfig c;
    c.dt = 1e-3;
    c.t_end = 1.0;
    c.diag_every = 50;
    RunResult r = run(cmt_datum(g), ModelParams::regularized(1.0, 0.5), c);
    const double e0 = r.records.front().mod_energy;
    for (const auto& rec : r.records) CHECK(std::abs(rec.mod_energy - e0) <= 1e-6 * e0);
}

TEST_CASE("runs are deterministic") {
    Grid g(32);
    StepperConfig c;
    c.dt = 1e-2;
    c.t_end = 0.5;
    c.diag_every = 5;
    const SpectralField th = random_shell_field(g, 8, 1.5, 21);
    RunResult a = run(th, ModelParams::dissipative(0.05, 0.75), c);
    RunResult b = run(th, ModelParams::dissipative(0.05, 0.75), c);
    CHECK(max_diff(a.final_state, b.final_state) == 0.0);
    CHECK(format_series(a.records) == format_series(b.records));
}

TEST_CASE("snapshots at the requested cadence") {
    Grid g(16);
    StepperConfig c;
    c.dt = 0.1;
    c.t_end = 1.0;
    c.snapshot_every = 4;
    RunResult r = run(cos1(g), ModelParams::inviscid(), c);
    std::vector<double> times;
    for (const auto& s : r.trajectory) times.push_back(s.t);
    REQUIRE(times.size() == 4);
    CHECK(times[1] == doctest::Approx(0.4));
    CHECK(times[2] == doctest::Approx(0.8));
    CHECK(times[3] == doctest::Approx(1.0));
}

TEST_CASE("explicit rk4 on a stiff mode blows up and is reported") {
    Grid g(32);
    SpectralField th = sample(g, [](double x, double) { return std::cos(10 * x); });
    StepperConfig c;
    c.dt = 1.0;
    c.t_end = 50.0;
    c.scheme = Scheme::rk4;
    try {
        run(th, ModelParams::dissipative(1.0, 1.0), c);
        FAIL("expected UnstableStep");
    } catch (const UnstableStep& e) {
        CHECK(e.time() > 0.0);
        CHECK(e.time() <= 50.0);
    }
}

TEST_CASE("cfl estimate scales inversely with amplitude") {
    Grid g(32);
    const SpectralField th = cmt_datum(g);
    CHECK(cfl_limit(2.0 * th) == doctest::Approx(0.5 * cfl_limit(th)));
}

TEST_CASE("cumulative simpson integrates quadratics exactly") {
    Grid g(8);
    const SpectralField one = cos1(g);
    const int m = 9;
    const double h = 0.125;
    std::vector<SpectralField> v;
    for (int i = 0; i < m; ++i) {
        const double t = i * h;
        v.push_back((1.0 + 2.0 * t - 3.0 * t * t) * one);
    }
    auto out = cumulative_simpson(v, h);
    for (int i = 0; i < m; ++i) {
        const double t = i * h;
        const double exact = t + t * t - t * t * t;
        CHECK(std::abs(out[std::size_t(i)].at(1, 0).real() - 0.5 * exact) < 1e-14);
    }
}

TEST_CASE("picard on a steady datum converges at once") {
    Grid g(16);
    PicardResult r = picard_solve(cos1(g), ModelParams::regularized(1.0, 0.5), PicardOptions{});
    CHECK(r.certificate.converged);
    CHECK(r.certificate.iterations == 1);
    CHECK(r.certificate.ratios.empty());
    CHECK(r.certificate.R == doctest::Approx(2 * M_PI * std::sqrt(2.0)));
    CHECK(r.certificate.T == doctest::Approx(1.0 / (4 * r.certificate.R)));
}

TEST_CASE("picard rejects bad options") {
    Grid g(16);
    PicardOptions o;
    o.nodes = 32;
    CHECK_THROWS_AS(picard_solve(cos1(g), ModelParams::regularized(1.0, 0.5), o), ValidationError);
    CHECK_THROWS_AS(picard_solve(cos1(g), ModelParams::inviscid(), PicardOptions{}), ValidationError);
}

TEST_CASE("picard agrees with the time stepper") {
    Grid g(32);
    const SpectralField th = cmt_datum(g);
    const ModelParams p = ModelParams::regularized(1.0, 0.5);
    PicardResult pr = picard_solve(th, p, PicardOptions{});
    CHECK(pr.certificate.converged);
    CHECK(pr.certificate.max_ratio() <= 0.55);

    // step exactly onto the Picard nodes
    const double h = pr.times[1] - pr.times[0];
    const int sub = 8;
    Stepper st(g, p, h / sub, Scheme::etd_rk4);
    SpectralField cur = th;
    double worst = 0;
    for (std::size_t i = 1; i < pr.times.size(); ++i) {
        for (int k = 0; k < sub; ++k) cur = st.step(cur);
        worst = std::max(worst, sobolev_norm(cur - pr.states[i], 2.0));
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("continuation") {
    Grid g(16);
    const ModelParams p = ModelParams::regularized(1.0, 0.5);

    ContinuationResult steady = continue_solution(cos1(g), p, PicardOptions{}, 10.0);
    CHECK(steady.reached == 10.0);
    CHECK(max_diff(steady.states.back(), cos1(g)) < 1e-13);

    ContinuationResult one = continue_solution(cos1(g), p, PicardOptions{}, 0.01);
    CHECK(one.certificates.size() == 1);
    CHECK(one.reached == 0.01);
}

TEST_CASE("continuation of the cmt datum stays bounded") {
    Grid g(32);
    const ModelParams p = ModelParams::regularized(1.0, 0.75);
    ContinuationResult c = continue_solution(cmt_datum(g), p, PicardOptions{}, 2.0);
    CHECK(c.reached == 2.0);
    double top = 0;
    for (const auto& st : c.states) top = std::max(top, sobolev_norm(st, 2.0));
    CHECK(top < 10 * sobolev_norm(cmt_datum(g), 2.0));

    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    cfg.diag_every = 2000;
    RunResult r = run(cmt_datum(g), p, cfg);
    CHECK(sobolev_norm(r.final_state - c.states.back(), 2.0) <= 1e-6 * sobolev_norm(r.final_state, 2.0));
}
