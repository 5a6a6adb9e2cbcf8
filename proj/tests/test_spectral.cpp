#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace qglab;
using qgtest::max_diff;
using qgtest::sample;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("grid rejects odd or tiny sizes") {
    CHECK_THROWS_AS(Grid(7), ValidationError);
    CHECK_THROWS_AS(Grid(6), ValidationError);
    CHECK_NOTHROW(Grid(8));
    Grid g(12);
    CHECK(g.wavenumber(0) == 0);
    CHECK(g.wavenumber(6) == 6);
    CHECK(g.wavenumber(7) == -5);
    CHECK(g.row_of(-1) == 11);
}

TEST_CASE("forward transform of constants and cosines") {
    Grid g(16);
    SpectralField one = sample(g, [](double, double) { return 1.0; });
    CHECK(std::abs(one.at(0, 0) - Complex(1.0)) < 1e-14);
    double rest = 0;
    one.for_each_mode([&](int k1, int k2, Complex& c) {
        if (k1 || k2) rest = std::max(rest, std::abs(c));
    });
    CHECK(rest < 1e-15);

    SpectralField c1 = sample(g, [](double x, double) { return std::cos(x); });
    CHECK(std::abs(c1.at(1, 0) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(c1.coeff(-1, 0) - Complex(0.5)) < 1e-15);
    c1.at(1, 0) = 0;
    CHECK(c1.max_abs() < 1e-15);
}

TEST_CASE("transform round trip on random fields") {
    Grid g(64);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    std::vector<double> v(g.physical_size());
    for (auto& x : v) x = nd(rng);
    PhysicalField p(g, v);
    PhysicalField back = inverse_transform(forward_transform(p));
    CHECK(max_diff(p, back) <= 1e-12);
}

TEST_CASE("forward transform output is hermitian") {
    Grid g(32);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(-1, 1);
    std::vector<double> v(g.physical_size());
    for (auto& x : v) x = ud(rng);
    SpectralField f = forward_transform(PhysicalField(g, v));
    CHECK(hermitian_defect(f) < 1e-15);
}

TEST_CASE("lambda on single modes") {
    Grid g(32);
    SpectralField f = sample(g, [](double x, double) { return std::cos(2 * x); });
    CHECK(max_diff(apply_lambda(f, 1.0), 2.0 * f) < 1e-12);

    SpectralField h = sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
    CHECK(max_diff(apply_lambda(h, 0.5), std::pow(2.0, 0.25) * h) < 1e-12);

    SpectralField one = sample(g, [](double, double) { return 1.0; });
    CHECK(apply_lambda(one, 1.0).max_abs() == 0.0);
    CHECK(max_diff(apply_lambda(one, 0.0), one) == 0.0);
    CHECK_THROWS_AS(apply_lambda(one, -0.5), NegativePowerOnMean);
}

TEST_CASE("lambda powers compose on seeded fields") {
    Grid g(32);
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SpectralField f = random_shell_field(g, 15, 1.5, seed);
        const double a = 0.3 + 0.01 * double(seed % 7), b = -0.7 + 0.05 * double(seed % 5);
        SpectralField lhs = apply_lambda(apply_lambda(f, a), b);
        SpectralField rhs = apply_lambda(f, a + b);
        worst = std::max(worst, max_diff(lhs, rhs) / rhs.max_abs());
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("riesz velocity closed forms") {
    Grid g(16);
    SpectralField c1 = sample(g, [](double x, double) { return std::cos(x); });
    Velocity v = riesz_velocity(c1);
    CHECK(max_diff(inverse_transform(v.u1), PhysicalField(g)) < 1e-14);
    CHECK(max_diff(inverse_transform(v.u2), PhysicalField::from_function(g, [](double x, double) {
                       return std::sin(x);
                   })) < 1e-14);

    SpectralField c2 = sample(g, [](double, double y) { return std::cos(y); });
    v = riesz_velocity(c2);
    CHECK(max_diff(inverse_transform(v.u1), PhysicalField::from_function(g, [](double, double y) {
                       return -std::sin(y);
                   })) < 1e-14);
    CHECK(inverse_transform(v.u2).values()[3] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("riesz velocity is divergence free") {
    Grid g(32);
    SpectralField th = random_shell_field(g, 15, 1.0, 3);
    Velocity v = riesz_velocity(th);
    double worst = 0;
    for (int k1 = 0; k1 <= 16; ++k1)
        for (int k2 = -15; k2 <= 16; ++k2)
            worst = std::max(worst, std::abs(double(k1) * v.u1.at(k1, k2) + double(k2) * v.u2.at(k1, k2)));
    CHECK(worst <= 1e-13);
    CHECK(hermitian_defect(v.u1) < 1e-15);
    CHECK(hermitian_defect(v.u2) < 1e-15);
}

TEST_CASE("riesz squares sum to minus identity") {
    Grid g(32);
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SpectralField f = random_shell_field(g, 15, 1.0, seed);
        SpectralField r = riesz_transform(riesz_transform(f, 1), 1) + riesz_transform(riesz_transform(f, 2), 2);
        r += f;
        worst = std::max(worst, r.max_abs() / f.max_abs());
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("derivative of sin is cos") {
    Grid g(16);
    SpectralField s = sample(g, [](double x, double y) { return std::sin(x) * std::sin(2 * y); });
    SpectralField d2 = derivative(s, 2);
    SpectralField want = sample(g, [](double x, double y) { return 2 * std::sin(x) * std::cos(2 * y); });
    CHECK(max_diff(d2, want) < 1e-14);
}

TEST_CASE("two-thirds dealiasing") {
    CHECK_FALSE(is_dealiased(12, 5, 0));
    CHECK(is_dealiased(12, 4, 0));
    CHECK(is_dealiased(12, 4, -4));
    CHECK_FALSE(is_dealiased(12, 0, -5));

    Grid g(12);
    SpectralField f(g);
    f.at(5, 0) = 1;
    f.at(4, 0) = 1;
    SpectralField d = dealias(f);
    CHECK(d.at(5, 0) == Complex(0));
    CHECK(d.at(4, 0) == Complex(1));

    Grid g2(32);
    SpectralField band = random_shell_field(g2, 10, 1.0, 2);
    CHECK(max_diff(dealias(band), band) == 0.0);
}

TEST_CASE("mollifier acts diagonally") {
    Grid g(32);
    SpectralField one = sample(g, [](double, double) { return 1.0; });
    for (double eps : {0.1, 1.0, 3.0}) {
        CHECK(max_diff(mollify(one, {MollifierProfile::gaussian, eps}), one) == 0.0);
        CHECK(max_diff(mollify(one, {MollifierProfile::raised_cosine, eps}), one) == 0.0);
    }
    SpectralField c1 = sample(g, [](double x, double) { return std::cos(x); });
    Mollifier m{MollifierProfile::gaussian, 1.0};
    CHECK(m.symbol(1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(max_diff(mollify(c1, m), std::exp(-0.5) * c1) < 1e-15);
}

TEST_CASE("mollifier kernels have unit mass") {
    for (auto prof : {MollifierProfile::gaussian, MollifierProfile::raised_cosine}) {
        Mollifier m{prof, 1.0};
        // int phi = 2 pi int_0^inf r phi(r) dr
        const int steps = 6000;
        const double h = 12.0 / steps;
        double mass = 0;
        for (int i = 1; i < steps; ++i) mass += (i % 2 ? 4.0 : 2.0) * (i * h) * m.kernel(i * h);
        mass *= 2 * pi * h / 3;
        CHECK(mass == doctest::Approx(1.0).epsilon(2e-3));
    }
    Mollifier gauss{MollifierProfile::gaussian, 1.0};
    CHECK(gauss.kernel(0.0) == doctest::Approx(1.0 / (2 * pi)));
}

TEST_CASE("mollification error decays like eps^s for a shell spectrum") {
    const double s = 0.5;
    Grid g(512);
    SpectralField f = random_shell_field(g, 255, s + 1.0, 17);
    std::vector<double> eps{0.25, 0.125, 0.0625, 0.03125, 0.015625}, direct, via;
    for (double e : eps) {
        Mollifier m{MollifierProfile::gaussian, e};
        via.push_back(sobolev_norm(f - mollify(f, m), 0.0));
        double sum = 0;
        f.for_each_mode([&](int k1, int k2, const Complex& c) {
            const double w = 1.0 - std::exp(-0.5 * e * e * (k1 * k1 + k2 * k2));
            sum += f.weight(k1) * w * w * std::norm(c);
        });
        direct.push_back(2 * pi * std::sqrt(sum));
    }
    for (std::size_t i = 0; i < eps.size(); ++i) CHECK(via[i] == doctest::Approx(direct[i]).epsilon(1e-12));
    const double slope = fit_loglog_slope(eps, direct);
    CHECK(std::abs(slope - s) <= 0.15);
}

TEST_CASE("translation shifts the profile") {
    Grid g(16);
    SpectralField c1 = sample(g, [](double x, double y) { return std::cos(x) + std::sin(3 * y); });
    SpectralField want = sample(g, [](double x, double y) { return std::cos(x - 0.4) + std::sin(3 * (y + 0.25)); });
    CHECK(max_diff(translate(c1, 0.4, -0.25), want) < 1e-14);
}

TEST_CASE("parseval and spectral energy") {
    Grid g(64);
    SpectralField f = random_shell_field(g, 20, 1.0, 9);
    f.at(0, 0) = 0.3;
    const double l2 = lp_norm(inverse_transform(f), 2.0);
    CHECK(spectral_energy(f, 0.0) == doctest::Approx(l2 * l2).epsilon(1e-12));
    CHECK(std::sqrt(spectral_energy(f, 1.0)) == doctest::Approx(sobolev_norm(f, 1.0)).epsilon(1e-12));
}

TEST_CASE("arithmetic keeps hermitian symmetry") {
    Grid g(32);
    SpectralField a = random_shell_field(g, 15, 1.0, 1), b = random_shell_field(g, 15, 2.0, 2);
    SpectralField c = 2.0 * a - b;
    c.axpy(-0.5, a);
    CHECK(hermitian_defect(c) < 1e-15);
    CHECK(hermitian_defect(apply_lambda(c, 0.7)) < 1e-15);
    CHECK(hermitian_defect(riesz_transform(c, 2)) < 1e-15);
}
