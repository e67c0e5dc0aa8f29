#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rhtunnel/errors.hpp"
#include "rhtunnel/fields.hpp"

using namespace rhtunnel;

namespace {

struct Case {
    DerivedGeometry g;
    Material m;
    SolutionCoefficients sol;
};

const Case& table1_case() {
    static const Case c = [] {
        Case k;
        k.g = derive_geometry(oracle::table1_geometry(100.0));
        k.m = oracle::table1_material();
        k.sol = run_solver(k.g, k.m, SolverConfig{});
        return k;
    }();
    return c;
}

FieldModel model(bool lanczos) {
    const auto& c = table1_case();
    return make_field_model(c.sol, c.g, c.m, lanczos);
}

FieldModel zero_model() {
    const auto& c = table1_case();
    FieldModel fm{c.g, c.m, {OffsetSeries(-50, 50), OffsetSeries(-52, 49), 0.0, false}};
    return fm;
}

std::vector<cplx> random_annulus_points(int count, double r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rho(r * 1.001, 0.999), th(-std::numbers::pi, std::numbers::pi);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < count) {
        const cplx z = std::polar(rho(rng), th(rng));
        if (std::abs(z - 1.0) > 0.05) pts.push_back(z);
    }
    return pts;
}

}  // namespace

TEST(Filter, CoefficientHandling) {
    const auto& c = table1_case();
    const auto raw = unfiltered_coefficients(c.sol, c.m);
    EXPECT_EQ(raw.A, c.sol.A);
    EXPECT_EQ(raw.B, c.sol.B);
    EXPECT_FALSE(raw.filtered);
    const auto f = apply_filter(c.sol, FilterWeights(c.sol.N), c.m);
    EXPECT_TRUE(f.filtered);
    EXPECT_EQ(f.A[0], c.sol.A[0]);
    EXPECT_EQ(f.A[50], 0.0);
    EXPECT_EQ(f.C0, c.sol.C0);
    EXPECT_EQ(model(false).coeffs.A, c.sol.A);
}

TEST(Normalization, ReferenceScales) {
    const auto& c = table1_case();
    const auto s = normalization_scales(c.g, c.m);
    EXPECT_DOUBLE_EQ(s.stress_scale, 200.0);
    EXPECT_NEAR(s.disp_scale, 0.065, 1e-12);
}

TEST(AnnulusStress, ZeroCoefficientsGiveZero) {
    const auto fm = zero_model();
    const auto s = eval_annulus_stress(cplx(0.2, 0.3), fm);
    EXPECT_EQ(s.sigma_rho, 0.0);
    EXPECT_EQ(s.sigma_theta, 0.0);
    EXPECT_EQ(s.tau_rhotheta, 0.0);
    const auto [u, v] = eval_annulus_displacement(cplx(-0.5, 0.1), fm);
    EXPECT_EQ(u, 0.0);
    EXPECT_EQ(v, 0.0);
}

TEST(AnnulusStress, MatchesDirectPotentialEvaluation) {
    for (bool lanczos : {false, true}) {
        const auto fm = model(lanczos);
        for (const cplx zeta : random_annulus_points(200, fm.geom.r, 31)) {
            const auto s = eval_annulus_stress(zeta, fm);
            const auto ref = oracle::direct_stress(zeta, fm.coeffs.A, fm.coeffs.B, fm.geom.a);
            const double tol = 1e-9 * 200.0;
            EXPECT_NEAR(s.sigma_rho, ref.sigma_rho, tol) << zeta;
            EXPECT_NEAR(s.sigma_theta, ref.sigma_theta, tol) << zeta;
            EXPECT_NEAR(s.tau_rhotheta, ref.tau, tol) << zeta;
        }
    }
}

TEST(AnnulusDisplacement, MatchesDirectPotentialEvaluation) {
    for (bool lanczos : {false, true}) {
        const auto fm = model(lanczos);
        const cplx ref_point(-0.5, 0.0);
        const auto [u0, v0] = eval_annulus_displacement(ref_point, fm);
        const cplx o0 = oracle::direct_displacement(ref_point, fm.coeffs.A, fm.coeffs.B, fm.mat.kappa, fm.mat.G,
                                                    fm.geom.a);
        auto pts = random_annulus_points(200, fm.geom.r, 37);
        for (int j = 1; j < 40; ++j) pts.push_back(std::polar(1.0, std::numbers::pi * (0.1 + 1.8 * j / 40.0)));
        for (const cplx zeta : pts) {
            const auto [u, v] = eval_annulus_displacement(zeta, fm);
            const cplx o = oracle::direct_displacement(zeta, fm.coeffs.A, fm.coeffs.B, fm.mat.kappa, fm.mat.G,
                                                       fm.geom.a) - o0;
            EXPECT_NEAR(u - u0, o.real(), 1e-9 * 0.065) << zeta;
            EXPECT_NEAR(v - v0, o.imag(), 1e-9 * 0.065) << zeta;
        }
    }
}

TEST(AnnulusDisplacement, VanishesAtInfinityImage) {
    for (bool lanczos : {false, true}) {
        const auto [u, v] = eval_annulus_displacement(1.0, model(lanczos));
        EXPECT_EQ(u, 0.0);
        EXPECT_EQ(v, 0.0);
    }
}

TEST(AnnulusDisplacement, DecaysAlongConstrainedArc) {
    const auto fm = model(false);
    double previous = 1.0;
    for (double t : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const auto [u, v] = eval_annulus_displacement(std::polar(1.0, t), fm);
        const double mag = std::hypot(u, v);
        EXPECT_LT(mag, previous);
        previous = mag;
    }
    EXPECT_LT(previous, 1e-4 * 0.065);
}

TEST(AnnulusStress, VanishesNearInfinityImage) {
    const auto fm = model(true);
    const auto s = eval_annulus_stress(std::polar(1.0, 1e-3), fm);
    EXPECT_LE(std::hypot(s.sigma_rho, s.tau_rhotheta), 1e-3 * 200.0);
    EXPECT_LE(std::abs(s.sigma_theta), 1e-3 * 200.0);
    for (double t : {1e-3, -1e-3, 3e-3}) {
        const auto p = eval_physical(std::polar(1.0 - 1e-4, t), fm);
        EXPECT_LE(std::hypot(p.induced.sigma_x - p.induced.sigma_y, 2.0 * p.induced.tau_xy), 1e-3 * 200.0);
        EXPECT_LE(std::abs(p.induced.sigma_x + p.induced.sigma_y), 1e-3 * 200.0);
    }
}

TEST(AnnulusEvaluation, RejectsPointsOutsideDomain) {
    const auto fm = model(true);
    EXPECT_THROW(eval_annulus_stress(1.0, fm), DomainError);
    EXPECT_THROW(eval_annulus_stress(cplx(1.0 - 5e-5, 0.0), fm), DomainError);
    EXPECT_THROW(eval_annulus_stress(0.1, fm), DomainError);
    EXPECT_THROW(eval_annulus_stress(cplx(0.0, 1.1), fm), DomainError);
    EXPECT_THROW(eval_annulus_displacement(cplx(1.0 - 5e-5, 0.0), fm), DomainError);
}

TEST(Physical, InvariantsOfTheTransformation) {
    const auto fm = model(true);
    for (const cplx zeta : random_annulus_points(100, fm.geom.r, 41)) {
        const auto a = eval_annulus(zeta, fm);
        const auto p = to_physical(zeta, a, fm);
        const double tr = a.sigma_rho + a.sigma_theta;
        EXPECT_NEAR(p.induced.sigma_x + p.induced.sigma_y, tr, 1e-12 * std::max(1.0, std::abs(tr)));
        const auto [m1, n1] = principal(a.sigma_rho, a.sigma_theta, a.tau_rhotheta);
        const auto [m2, n2] = principal(p.induced.sigma_x, p.induced.sigma_y, p.induced.tau_xy);
        EXPECT_NEAR(m1, m2, 1e-10 * std::max(1.0, std::abs(m1)));
        EXPECT_NEAR(n1, n2, 1e-10 * std::max(1.0, std::abs(n1)));
        EXPECT_EQ(p.u, a.u);
        EXPECT_EQ(p.v, a.v);
        const auto s0 = initial_stress(p.z.imag(), fm.mat);
        EXPECT_DOUBLE_EQ(p.total.sigma_x, p.induced.sigma_x + s0.sigma_x);
        EXPECT_DOUBLE_EQ(p.total.sigma_y, p.induced.sigma_y + s0.sigma_y);
        EXPECT_GE(p.sigma_max, p.sigma_min);
    }
}

TEST(Physical, ZeroAnnulusFieldAddsInitialStress) {
    const auto fm = zero_model();
    const cplx zeta = map_forward(cplx(0.0, -10.0), fm.geom);
    const auto p = to_physical(zeta, AnnulusField{}, fm);
    EXPECT_NEAR(p.total.sigma_x, -160.0, 1e-9);
    EXPECT_NEAR(p.total.sigma_y, -200.0, 1e-9);
    EXPECT_NEAR(p.total.tau_xy, 0.0, 1e-12);
}

TEST(Principal, Examples) {
    auto [a, b] = principal(-100.0, -100.0, 0.0);
    EXPECT_DOUBLE_EQ(a, -100.0);
    EXPECT_DOUBLE_EQ(b, -100.0);
    std::tie(a, b) = principal(0.0, -200.0, 0.0);
    EXPECT_DOUBLE_EQ(a, 0.0);
    EXPECT_DOUBLE_EQ(b, -200.0);
    std::tie(a, b) = principal(0.0, 0.0, 50.0);
    EXPECT_DOUBLE_EQ(a, 50.0);
    EXPECT_DOUBLE_EQ(b, -50.0);
}

TEST(Physical, TunnelIsTractionFreeInTotalStress) {
    const auto fm = model(false);
    const cplx centre(0.0, -fm.geom.h);
    double worst = 0.0;
    for (const auto& s : sample_tunnel(fm, 360)) {
        const cplx n = (s.field.z - centre) / fm.geom.R;
        const auto& t = s.field.total;
        const double tx = t.sigma_x * n.real() + t.tau_xy * n.imag();
        const double ty = t.tau_xy * n.real() + t.sigma_y * n.imag();
        worst = std::max(worst, std::hypot(tx, ty));
    }
    EXPECT_LT(worst, 1e-8 * 200.0);
}

TEST(Physical, SurfaceTractionFreeOnFreeArc) {
    const auto fm = model(true);
    for (double x : {0.0, 5.0, 20.0, 100.0, 500.0}) {
        const auto p = eval_physical(map_forward(cplx(x, 0.0), fm.geom), fm);
        EXPECT_NEAR(p.total.sigma_y, 0.0, 0.02 * 200.0) << x;
        EXPECT_NEAR(p.total.tau_xy, 0.0, 0.02 * 200.0) << x;
    }
}

TEST(Physical, NoHorizontalDisplacementOnAxis) {
    for (bool lanczos : {false, true}) {
        const auto fm = model(lanczos);
        for (int j = 1; j < 50; ++j) {
            const double x = -1.0 + (1.0 - fm.geom.r) * j / 50.0;
            const auto [u, v] = eval_annulus_displacement(x, fm);
            EXPECT_NEAR(u, 0.0, 1e-10) << x;
            (void)v;
        }
    }
}

TEST(Grid, MirrorSymmetry) {
    const auto fm = model(true);
    const GridSpec spec{-40.0, 40.0, -40.0, 0.0, 41, 21};
    const auto grid = evaluate_grid(spec, fm, 1);
    for (int iy = 0; iy < spec.ny; ++iy) {
        for (int ix = 0; ix < spec.nx; ++ix) {
            const auto& p = grid[iy * spec.nx + ix];
            const auto& q = grid[iy * spec.nx + (spec.nx - 1 - ix)];
            ASSERT_EQ(p.status, q.status);
            if (p.status == PointStatus::Absent) continue;
            const auto& a = p.field.total;
            const auto& b = q.field.total;
            EXPECT_NEAR(a.sigma_x, b.sigma_x, 1e-10 * 200.0);
            EXPECT_NEAR(a.sigma_y, b.sigma_y, 1e-10 * 200.0);
            EXPECT_NEAR(a.tau_xy, -b.tau_xy, 1e-10 * 200.0);
            EXPECT_NEAR(p.field.u, -q.field.u, 1e-10);
            EXPECT_NEAR(p.field.v, q.field.v, 1e-10);
        }
    }
}

TEST(Grid, Classification) {
    const auto fm = model(true);
    const auto one = evaluate_grid({0.0, 0.0, -16.0, -16.0, 1, 1}, fm);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].status, PointStatus::Interior);
    EXPECT_NEAR(one[0].field.z.imag(), -16.0, 1e-9);

    const auto column = evaluate_grid({0.0, 0.0, -20.0, 0.0, 1, 5}, fm);
    ASSERT_EQ(column.size(), 5u);
    EXPECT_EQ(column[0].status, PointStatus::Boundary);   // y = 0
    EXPECT_EQ(column[1].status, PointStatus::Boundary);   // crown
    EXPECT_EQ(column[2].status, PointStatus::Absent);     // centre
    EXPECT_EQ(column[3].status, PointStatus::Boundary);   // invert
    EXPECT_EQ(column[4].status, PointStatus::Interior);
    EXPECT_NEAR(column[0].y, 0.0, 1e-15);
    EXPECT_NEAR(column[4].y, -20.0, 1e-15);
}

TEST(Grid, ParallelMatchesSerial) {
    const auto fm = model(true);
    const GridSpec spec{0.0, 40.0, -40.0, 0.0, 23, 19};
    const auto serial = evaluate_grid(spec, fm, 1);
    const auto parallel = evaluate_grid(spec, fm, 4);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].status, parallel[i].status);
        EXPECT_EQ(serial[i].field.total.sigma_x, parallel[i].field.total.sigma_x);
        EXPECT_EQ(serial[i].field.v, parallel[i].field.v);
    }
}

TEST(Boundaries, SamplingLayout) {
    const auto fm = model(true);
    const auto surface = sample_surface(fm, 90);
    ASSERT_EQ(surface.size(), 90u);
    EXPECT_NEAR(surface.front().coord, 0.0, 1e-12);
    for (std::size_t i = 1; i < surface.size(); ++i) EXPECT_GT(surface[i].coord, surface[i - 1].coord);
    for (const auto& s : surface) EXPECT_NEAR(s.field.z.imag(), 0.0, 1e-9);

    const auto tunnel = sample_tunnel(fm, 72);
    ASSERT_EQ(tunnel.size(), 72u);
    EXPECT_EQ(tunnel[0].coord, 0.0);
    EXPECT_DOUBLE_EQ(tunnel[1].coord, 5.0);
    for (const auto& s : tunnel) {
        EXPECT_NEAR(std::abs(s.zeta), fm.geom.r, 1e-15);
        EXPECT_NEAR(std::abs(s.field.z - cplx(0.0, -10.0)), 5.0, 1e-9);
    }
}
