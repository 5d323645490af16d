#include "hypvol/anomaly.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace hypvol;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.values) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double sup_norm(const ScalarField& f) { return max_abs(f); }

}  // namespace

TEST_CASE("mesh geometry") {
    const SurfaceMesh h(201, 64, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    CHECK(h.analytic_area() == doctest::Approx(4 * kPi * std::sinh(2.0)));
    CHECK(std::abs(h.area() - h.analytic_area()) / h.analytic_area() < 1e-4);
    CHECK(h.scalar_curvature() == -2.0);
    const SurfaceMesh f(5, 4, 1.0, 3.0, MetricTag::flat_cylinder);
    CHECK(f.area() == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(f.scalar_curvature() == 0.0);
    CHECK_THROWS_AS(SurfaceMesh(2, 4, 1.0, 1.0, MetricTag::flat_cylinder), std::invalid_argument);
}

TEST_CASE("gradient energy") {
    const SurfaceMesh h(65, 32, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    CHECK(gradient_energy(h, constant_field(h, 3.0)) == 0.0);

    const double L = 2 * kPi;
    double previous = 0.0;
    for (std::size_t n : {100u, 200u, 400u}) {
        const SurfaceMesh f(n + 1, n, 1.0, L, MetricTag::flat_cylinder);
        const ScalarField u = sample_field(f, [&](double, double th) { return std::sin(2 * kPi * th / L); });
        const double exact = std::pow(2 * kPi / L, 2) * f.analytic_area() / 2;
        const double err = std::abs(gradient_energy(f, u) - exact) / exact;
        if (n == 400) {
            CHECK(err < 1e-3);
        }
        if (previous > 0.0) {
            CHECK(previous / err >= 3.5);
        }
        previous = err;
    }
}

TEST_CASE("gradient energy converges on the hyperbolic cylinder") {
    // u = tanh t: int |u'|^2 cosh t dt dtheta = L * int sech^3 t
    const double T = 1.5, L = 2 * kPi;
    const auto exact = [&] {
        const double s = 1.0 / std::cosh(T);
        return L * (std::tanh(T) * s + 2 * std::atan(std::tanh(T / 2))) ;
    }();
    std::vector<double> errors;
    for (std::size_t n : {40u, 80u, 160u}) {
        const SurfaceMesh m(n + 1, 8, T, L, MetricTag::hyperbolic_cylinder);
        const ScalarField u = sample_field(m, [](double t, double) { return std::tanh(t); });
        errors.push_back(std::abs(gradient_energy(m, u) - exact));
    }
    CHECK(errors[0] / errors[1] >= 3.5);
    CHECK(errors[1] / errors[2] >= 3.5);
}

TEST_CASE("conformal change term") {
    const SurfaceMesh h(33, 16, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    CHECK(conformal_change_term(h, constant_field(h, 0.0)) == 0.0);
    CHECK(conformal_change_term(h, constant_field(h, 0.3)) == doctest::Approx(0.25 * (-2 * 0.3 * h.area())));
    const SurfaceMesh f(33, 16, 1.0, 2 * kPi, MetricTag::flat_cylinder);
    const ScalarField s = sample_field(f, [](double, double th) { return std::sin(th); });
    CHECK(conformal_change_term(f, s) == doctest::Approx(0.25 * gradient_energy(f, s)));
}

TEST_CASE("property: conformal change term is quadratic plus linear") {
    const SurfaceMesh h(41, 24, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    const ScalarField u = random_smooth_field(h, 3, 0.5, 5);
    const double grad = 0.25 * gradient_energy(h, u);
    const double curv = 0.25 * h.scalar_curvature() * integrate(h, u);
    for (double a : {1.0, 2.0}) {
        ScalarField au = u;
        for (double& x : au.values) {
            x *= a;
        }
        CHECK(conformal_change_term(h, au) == doctest::Approx(a * a * grad + a * curv).epsilon(1e-12));
    }
}

TEST_CASE("Jensen energy") {
    const SurfaceMesh h(128, 128, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    CHECK(jensen_energy(h, constant_field(h, 0.0)) == 0.0);
    const ScalarField bump = normalize_area(h, sample_field(h, [](double t, double th) {
        return 0.2 * std::exp(-t * t) * std::cos(th);
    }));
    CHECK(jensen_energy(h, bump) > 0.0);
    const SurfaceMesh f(16, 16, 1.0, 1.0, MetricTag::flat_cylinder);
    CHECK_THROWS_AS(jensen_energy(f, constant_field(f, 0.0)), DomainError);
}

TEST_CASE("property: Jensen positivity for random normalized fields") {
    const SurfaceMesh h(128, 128, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ScalarField u = normalize_area(h, random_smooth_field(h, 4, 1.0, seed));
        CHECK(jensen_energy(h, u) >= -1e-6 * (1.0 + sup_norm(u) * h.area()));
    }
}

TEST_CASE("normalize_area") {
    const SurfaceMesh h(40, 20, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    const ScalarField zero = constant_field(h, 0.0);
    CHECK(normalize_area(h, zero).values == zero.values);
    CHECK(max_abs(normalize_area(h, constant_field(h, 1.0))) < 1e-15);
    ScalarField e = normalize_area(h, random_smooth_field(h, 3, 2.0, 9));
    for (double& x : e.values) {
        x = std::exp(2 * x);
    }
    CHECK(std::abs(integrate(h, e) - h.area()) <= 1e-10 * h.area());
}

TEST_CASE("property: discrete integration by parts") {
    for (MetricTag tag : {MetricTag::hyperbolic_cylinder, MetricTag::flat_cylinder}) {
        const SurfaceMesh m(37, 23, 1.7, 5.0, tag);
        for (std::uint64_t k = 0; k < 10; ++k) {
            const ScalarField u = random_smooth_field(m, 4, 1.0, 100 + k);
            const ScalarField v = random_smooth_field(m, 4, 1.0, 200 + k);
            const ScalarField lap = laplacian(m, v);
            ScalarField prod = u;
            for (std::size_t i = 0; i < prod.values.size(); ++i) {
                prod.values[i] *= lap.values[i];
            }
            const double lhs = integrate(m, prod) + dirichlet_pairing(m, u, v);
            const double rhs = boundary_flux(m, u, v);
            const double scale = std::max({1.0, std::abs(rhs), std::abs(dirichlet_pairing(m, u, v))});
            CHECK(std::abs(lhs - rhs) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("Liouville residuals") {
    const SurfaceMesh h(20, 12, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    const SurfaceMesh f(20, 12, 2.0, 2 * kPi, MetricTag::flat_cylinder);
    const ScalarField rh = liouville_residual(h, constant_field(h, 0.0), LiouvillePiece::hyperbolic_piece);
    const ScalarField rf = liouville_residual(f, constant_field(f, 0.0), LiouvillePiece::flat_piece);
    for (double x : rh.values) {
        CHECK(x == 0.0);
    }
    for (double x : rf.values) {
        CHECK(x == -1.0);
    }
    CHECK_THROWS_AS(liouville_residual(f, constant_field(f, 0.0), LiouvillePiece::hyperbolic_piece), DomainError);
    CHECK_THROWS_AS(liouville_residual(h, constant_field(h, 0.0), LiouvillePiece::flat_piece), DomainError);
}

TEST_CASE("Liouville residual converges for -log cosh t on the flat cylinder") {
    std::vector<double> errors;
    for (std::size_t n : {51u, 101u, 201u}) {
        const SurfaceMesh f(n, 8, 2.0, 2 * kPi, MetricTag::flat_cylinder);
        const ScalarField phi = sample_field(f, [](double t, double) { return -std::log(std::cosh(t)); });
        const ScalarField r = liouville_residual(f, phi, LiouvillePiece::flat_piece);
        double err = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double s = 1.0 / std::cosh(f.t(i));
            for (std::size_t j = 0; j < f.n_theta(); ++j) {
                err = std::max(err, std::abs(r(i, j) + 2 * s * s));
            }
        }
        errors.push_back(err);
    }
    CHECK(std::log2(errors[0] / errors[1]) >= 1.9);
    CHECK(std::log2(errors[1] / errors[2]) >= 1.9);
}

TEST_CASE("grid csv round trip") {
    const SurfaceMesh h(6, 5, 1.25, 3.5, MetricTag::hyperbolic_cylinder);
    const ScalarField u = random_smooth_field(h, 2, 0.7, 4);
    std::stringstream io;
    write_grid_csv(io, h, u);
    const auto [mesh, v] = read_grid_csv(io);
    CHECK(mesh.n_t() == 6);
    CHECK(mesh.n_theta() == 5);
    CHECK(mesh.half_height() == 1.25);
    CHECK(mesh.period() == 3.5);
    CHECK(mesh.tag() == MetricTag::hyperbolic_cylinder);
    CHECK(v.values == u.values);

    std::stringstream bad("n_t,n_theta,T,L,tag\n3,3,1,1,flat_cylinder\n1,2,3\n1,2\n");
    CHECK_THROWS_AS(read_grid_csv(bad), std::invalid_argument);
}

TEST_CASE("random field is seeded and bounded") {
    const SurfaceMesh h(30, 30, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    const ScalarField a = random_smooth_field(h, 3, 0.5, 42);
    CHECK(a.values == random_smooth_field(h, 3, 0.5, 42).values);
    CHECK(a.values != random_smooth_field(h, 3, 0.5, 43).values);
    CHECK(max_abs(a) <= 0.5);
}
