#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lupe/inner.hpp"
#include "lupe/operators.hpp"
#include "lupe/spectral.hpp"

using namespace lupe;

namespace {
constexpr double kPi = std::numbers::pi;

ScalarField random_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    ScalarField f(g);
    for (double& v : f.data) v = dist(rng);
    return f;
}

double plain_dot(const ScalarField& a, const ScalarField& b) {
    double s = 0;
    for (std::size_t n = 0; n < a.data.size(); ++n) s += a.data[n] * b.data[n];
    return s;
}
}  // namespace

TEST_CASE("diagnosed vertical velocity matches the analytic column integral") {
    // oracle: v = (sin(2 pi x), 0) gives div_H v = 2 pi cos(2 pi x) and
    // w(z) = int_z^0 div dz' = -2 pi cos(2 pi x) z  (z <= 0)
    const Grid g = make_grid(32, 8, 16, 1.0, 1.0, 1.0);
    HVecField v(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                v.x(i, j, k) = std::sin(2.0 * kPi * (i + 0.5) * g.dx);
    const ScalarField w = vertical_velocity(v);
    double e = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double exact =
                    -2.0 * kPi * std::cos(2.0 * kPi * (i + 0.5) * g.dx) * g.z_centers[k];
                e = std::max(e, std::abs(w(i, j, k) - exact));
            }
    CHECK(e < 1e-10);
}

TEST_CASE("bottom residual vanishes for divergence-free columns") {
    const Grid g = make_grid(16, 16, 8, 1.0, 1.0, 1.0);
    HVecField v(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                v.x(i, j, k) = std::cos(2.0 * kPi * (j + 0.5) * g.dy);  // depends on y only
    CHECK(w_bottom_residual(v) < 1e-13);
}

TEST_CASE("advection of a constant field vanishes") {
    const Grid g = make_grid(8, 8, 4, 1.0, 1.0, 1.0);
    HVecField v(g);
    for (double& x : v.x.data) x = 0.3;
    ScalarField q(g);
    for (double& x : q.data) x = 5.0;
    const ScalarField adv = advect(v, q, vertical::salinity_closure());
    CHECK(max_abs(adv) < 1e-12);
}

TEST_CASE("uniform horizontal advection matches the analytic derivative") {
    // oracle: v = (U, 0) constant, q = sin(2 pi x): B q = U 2 pi cos(2 pi x)
    const Grid g = make_grid(32, 8, 4, 1.0, 1.0, 1.0);
    HVecField v(g);
    for (double& x : v.x.data) x = 0.7;
    ScalarField q(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) q(i, j, k) = std::sin(2.0 * kPi * (i + 0.5) * g.dx);
    const ScalarField adv = advect(v, q, vertical::salinity_closure());
    double e = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                e = std::max(e, std::abs(adv(i, j, k) -
                                         0.7 * 2.0 * kPi *
                                             std::cos(2.0 * kPi * (i + 0.5) * g.dx)));
    CHECK(e < 1e-10);
}

TEST_CASE("advection is near skew-symmetric for layered rotational velocity") {
    // (B(v, q), q) = 0 holds exactly in the continuum for div-free v with
    // w = 0; band-limited rotational layers keep the spectral residual tiny
    const Grid g = make_grid(32, 32, 4, 1.0, 1.0, 1.0);
    HVecField v(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double x = (i + 0.5) * g.dx, y = (j + 0.5) * g.dy;
                // v = rot of psi = sin(2 pi x) sin(4 pi y), z-independent
                v.x(i, j, k) = -4.0 * kPi * std::sin(2.0 * kPi * x) * std::cos(4.0 * kPi * y);
                v.y(i, j, k) = 2.0 * kPi * std::cos(2.0 * kPi * x) * std::sin(4.0 * kPi * y);
            }
    // band-limited q so the quadratic product stays below the grid Nyquist
    ScalarField q(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                q(i, j, k) = std::cos(2.0 * kPi * (i + 0.5) * g.dx) +
                             std::sin(2.0 * kPi * (j + 0.5) * g.dy);
    const ScalarField adv = advect(v, q, vertical::salinity_closure());
    const double rel = std::abs(ip_L2(adv, q)) / (norm_L2(adv) * norm_L2(q));
    CHECK(rel < 1e-10);
}

TEST_CASE("diffusion is positive semidefinite and has the right eigenvalues") {
    const Grid g = make_grid(16, 16, 8, 1.0, 1.0, 1.0);
    const DiffusionParams p{0.4, 0.9, 0.0};
    for (std::uint64_t s : {1u, 2u, 3u}) {
        const ScalarField q = random_field(g, s);
        const ScalarField aq = diffuse(p, q, vertical::salinity_closure());
        CHECK(ip_L2(aq, q) >= -1e-10 * ip_L2(q, q));
    }
    // oracle: q = cos(2 pi x) cos(pi (z+h)/h): A q = (mu (2pi)^2 + nu (pi/h)^2) q
    ScalarField q(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                q(i, j, k) = std::cos(2.0 * kPi * (i + 0.5) * g.dx) *
                             std::cos(kPi * (g.z_centers[k] + 1.0));
    const ScalarField aq = diffuse(p, q, vertical::salinity_closure());
    // horizontal part is spectrally exact; vertical part is 2nd order in dz
    const double lam_h = p.mu * 4.0 * kPi * kPi;
    const double lam_v = p.nu * kPi * kPi;
    const double measured = ip_L2(aq, q) / ip_L2(q, q);
    CHECK(measured == doctest::Approx(lam_h + lam_v).epsilon(0.02));
}

TEST_CASE("coriolis rotation is antisymmetric") {
    const Grid g = make_grid(8, 8, 4, 1.0, 1.0, 1.0);
    HVecField v(g);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> dist;
    for (double& x : v.x.data) x = dist(rng);
    for (double& x : v.y.data) x = dist(rng);
    const HVecField cv = coriolis(v, 1e-4);
    CHECK(std::abs(ip_L2(cv, v)) < 1e-15 * ip_L2(v, v));
    CHECK(cv.x.data[3] == doctest::Approx(-1e-4 * v.y.data[3]));
    CHECK(cv.y.data[3] == doctest::Approx(1e-4 * v.x.data[3]));
}

TEST_CASE("div_adj is the exact negative adjoint of grad3") {
    // this identity is what makes the noise backscatter/diffusion pair
    // cancel to roundoff
    const Grid g = make_grid(8, 8, 6, 1.0, 1.0, 1.3);
    const ScalarField q = random_field(g, 4);
    Vec3Field F(g);
    F.x = random_field(g, 5);
    F.y = random_field(g, 6);
    F.z = random_field(g, 7);
    const Vec3Field gq = grad3(q);
    const ScalarField dF = div_adj(F);
    const double lhs = plain_dot(dF, q);
    const double rhs = -(plain_dot(F.x, gq.x) + plain_dot(F.y, gq.y) + plain_dot(F.z, gq.z));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("stochastic diffusion is dissipative") {
    const Grid g = make_grid(8, 8, 6, 1.0, 1.0, 1.0);
    SymTensorField a(g);
    // a = diag(c, c, 0): positive semidefinite
    for (double& v : a.xx.data) v = 0.25;
    for (double& v : a.yy.data) v = 0.25;
    const ScalarField q = random_field(g, 8);
    const ScalarField dq = stochastic_diffusion(a, q);
    CHECK(ip_L2(dq, q) <= 1e-12);
}

TEST_CASE("homogeneous horizontal variance reduces to the scaled Laplacian") {
    // oracle: a = c (e_x e_x + e_y e_y), q z-independent:
    // 1/2 div(a grad q) = (c/2) lap_H q, spectrally exact
    const Grid g = make_grid(32, 32, 4, 1.0, 1.0, 1.0);
    const double c = 0.37;
    SymTensorField a(g);
    for (double& v : a.xx.data) v = c;
    for (double& v : a.yy.data) v = c;
    ScalarField q(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                q(i, j, k) = std::sin(2.0 * kPi * (i + 0.5) * g.dx) *
                             std::cos(4.0 * kPi * (j + 0.5) * g.dy);
    const ScalarField dq = stochastic_diffusion(a, q);
    const double lap = -(4.0 * kPi * kPi + 16.0 * kPi * kPi);
    double e = 0;
    for (std::size_t n = 0; n < q.data.size(); ++n)
        e = std::max(e, std::abs(dq.data[n] - 0.5 * c * lap * q.data[n]));
    CHECK(e < 1e-9);
}

TEST_CASE("divergence3 matches analytic divergence on trig fields") {
    const Grid g = make_grid(32, 32, 32, 1.0, 1.0, 1.0);
    Vec3Field F(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double x = (i + 0.5) * g.dx, y = (j + 0.5) * g.dy, z = g.z_centers[k];
                F.x(i, j, k) = std::sin(2.0 * kPi * x);
                F.y(i, j, k) = std::cos(2.0 * kPi * y);
                F.z(i, j, k) = z * z;
            }
    const ScalarField d = divergence3(F);
    double e = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double x = (i + 0.5) * g.dx, y = (j + 0.5) * g.dy, z = g.z_centers[k];
                const double exact = 2.0 * kPi * std::cos(2.0 * kPi * x) -
                                     2.0 * kPi * std::sin(2.0 * kPi * y) + 2.0 * z;
                e = std::max(e, std::abs(d(i, j, k) - exact));
            }
    CHECK(e < 1e-9);  // spectral in x/y; the dz stencils are exact on quadratics
}
