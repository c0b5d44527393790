#include <doctest.h>

#include <cmath>
#include <random>

#include "dpw/lattice.hpp"

using namespace dpw;

namespace {

cplx ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

GridFunction sample_monomial(int power, Window w) {
    GridFunction g(w);
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int m = w.m_min; m <= w.m_max; ++m) {
            cplx z{static_cast<double>(m), static_cast<double>(n)};
            cplx v{1.0, 0.0};
            for (int p = 0; p < power; ++p) v *= z;
            g.at(m, n) = v;
        }
    return g;
}

GridFunction sample_exponential(double t, Window w) {
    GridFunction g(w);
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int m = w.m_min; m <= w.m_max; ++m) g.at(m, n) = discrete_exponential(t, {m, n});
    return g;
}

} // namespace

TEST_CASE("phi basic values") {
    CHECK(phi(0.7, 0).real() == 1.0);
    CHECK(phi(-1.2, 0).real() == 1.0);
    CHECK(phi(0.0, 5).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi(0.0, -7).real() == doctest::Approx(1.0).epsilon(1e-15));
    // cos(pi/4)/(1+sin(pi/4)) = sqrt(2) - 1
    CHECK(phi(kPi / 4, 1).real() == doctest::Approx(0.4142135623730951).epsilon(1e-14));
    CHECK(phi(kPi / 4, 1).imag() == 0.0);
}

TEST_CASE("phi pole handling") {
    CHECK_THROWS_AS(phi(kPi / 2, 1), PoleError);
    CHECK_THROWS_AS(phi(-kPi / 2, 3), PoleError);
    CHECK_THROWS_AS(phi(kPi / 2 + 5e-10, 1), PoleError);
    CHECK_NOTHROW(phi(kPi / 2 + 1e-6, 1));
    CHECK(pole_distance(kPi / 2) == 0.0);
    CHECK(pole_distance(0.0) == doctest::Approx(kPi / 2));
}

TEST_CASE("phi defining recursion phi(n+1)(e^{it}+i) = phi(n)(1+ie^{it})") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-kPi, kPi);
    const cplx i{0, 1};
    for (int trial = 0; trial < 50; ++trial) {
        double t = dist(rng);
        if (pole_distance(t) < 1e-3) continue;
        const cplx eit = std::polar(1.0, t);
        for (int n = -64; n <= 64; ++n) {
            const cplx lhs = phi(t, n + 1) * (eit + i);
            const cplx rhs = phi(t, n) * (1.0 + i * eit);
            const double scale = std::max(std::abs(lhs), 1.0);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("discrete exponential closed-form values") {
    // height 0 is the plain exponential
    for (int m : {-5, 0, 3, 17}) {
        const cplx v = discrete_exponential(0.9, {m, 0});
        CHECK(std::abs(v - std::polar(1.0, 0.9 * m)) < 1e-15);
    }
    // e_0 = 1 everywhere
    CHECK(std::abs(discrete_exponential(0.0, {4, -3}) - cplx{1, 0}) < 1e-14);
    // |e_{-pi/6}(0,1)| = cos(pi/6)/(1 - sin(pi/6)) = sqrt(3)
    CHECK(std::abs(discrete_exponential(-kPi / 6, {0, 1})) ==
          doctest::Approx(1.7320508075688772).epsilon(1e-14));
}

TEST_CASE("discrete exponential at pi-band frequencies (negative growth base)") {
    const double t = kPi - 0.3; // base cos(t)/(1+sin(t)) < 0
    CHECK(phi_base(t) < 0.0);
    for (int n : {-3, -1, 0, 1, 2, 5}) {
        const cplx direct = discrete_exponential(t, {2, n});
        const cplx expect = std::polar(1.0, 2.0 * t) * std::pow(phi_base(t), n);
        CHECK(std::abs(direct - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("holomorphicity residual: z and z^2 entire, z^3 not") {
    const Window w{-3, 3, -3, 3};
    CHECK(std::abs(holomorphicity_residual(sample_monomial(1, w), {0, 0})) < 1e-15);
    const GridFunction z2 = sample_monomial(2, w);
    for (int n = -3; n < 3; ++n)
        for (int m = -3; m < 3; ++m)
            CHECK(std::abs(holomorphicity_residual(z2, {m, n})) < 1e-12);
    // (1+i)^3 + i(-i-1) = -1 + i at the origin plaquette
    const cplx res = holomorphicity_residual(sample_monomial(3, w), {0, 0});
    CHECK(res.real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(res.imag() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("holomorphicity residual: out-of-window plaquettes") {
    const GridFunction g(Window{0, 2, 0, 2});
    CHECK_THROWS_AS(holomorphicity_residual(g, {2, 0}), OutOfWindow);
    CHECK_THROWS_AS(holomorphicity_residual(g, {-1, 0}), OutOfWindow);
    const GridFunction row(Window{0, 5, 0, 0});
    CHECK_THROWS_AS(max_holomorphicity_residual(row), OutOfWindow);
}

TEST_CASE("max holomorphicity residual") {
    GridFunction c(Window{-2, 2, -2, 2});
    for (int n = -2; n <= 2; ++n)
        for (int m = -2; m <= 2; ++m) c.at(m, n) = cplx{3.5, -1.25};
    CHECK(max_holomorphicity_residual(c) == 0.0);

    CHECK(max_holomorphicity_residual(sample_exponential(0.3, Window{0, 31, 0, 31})) <= 1e-12);

    // |(-1+i)| = sqrt(2) at the origin plaquette of z^3
    CHECK(max_holomorphicity_residual(sample_monomial(3, Window{-2, 2, -2, 2})) >=
          std::sqrt(2.0) - 1e-12);
}

TEST_CASE("sampled discrete exponentials are entire for random admissible t") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-kPi, kPi);
    for (int trial = 0; trial < 20; ++trial) {
        double t = dist(rng);
        if (pole_distance(t) < 1e-2) continue;
        const GridFunction g = sample_exponential(t, Window{-8, 8, -6, 6});
        CHECK(max_holomorphicity_residual(g) <= 1e-12 * g.max_abs());
    }
}

TEST_CASE("extend_layer basics") {
    // constants stay constant
    const cplx c{2.0, -1.0};
    std::vector<cplx> boundary(9, c);
    const std::vector<cplx> out = extend_layer(boundary, c);
    for (const cplx& v : out) CHECK(std::abs(v - c) < 1e-15);

    // m = 1 case is the plaquette identity itself
    std::vector<cplx> b2{{0.4, 0.1}, {-0.3, 0.9}};
    const cplx anchor{1.1, -0.7};
    const cplx i{0, 1};
    const std::vector<cplx> o2 = extend_layer(b2, anchor);
    const cplx expect = -i * (anchor + i * b2[0] - b2[1]);
    CHECK(std::abs(o2[1] - expect) < 1e-15);

    CHECK_THROWS_AS(extend_layer(std::vector<cplx>{}, anchor), LengthMismatch);
}

TEST_CASE("extend_layer reproduces discrete exponential layers") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> tdist(-0.4 * kPi, 0.4 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = tdist(rng);
        for (int n : {-2, 0, 1, 3}) {
            std::vector<cplx> boundary(65);
            for (int k = 0; k <= 64; ++k) boundary[k] = discrete_exponential(t, {k, n - 1});
            const std::vector<cplx> out =
                extend_layer(boundary, discrete_exponential(t, {0, n}));
            double sup = 0.0, err = 0.0;
            for (int m = 0; m <= 64; ++m) {
                const cplx ref = discrete_exponential(t, {m, n});
                sup = std::max(sup, std::abs(ref));
                err = std::max(err, std::abs(out[m] - ref));
            }
            CHECK(err <= 1e-12 * sup);
        }
    }
}

TEST_CASE("extend_layer keeps absolute residuals under 1e-12 at modulus 1e3") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> tdist(-1.2, 1.2);
    const int M = 64;
    for (int trial = 0; trial < 100; ++trial) {
        const double t = tdist(rng);
        const int n = trial % 7 - 3;
        double sup = 0.0;
        std::vector<cplx> b(M + 1);
        for (int k = 0; k <= M; ++k) {
            b[k] = discrete_exponential(t, {k, n - 1});
            sup = std::max({sup, std::abs(b[k]),
                            std::abs(discrete_exponential(t, {k, n}))});
        }
        const double scale = 1e3 / sup;
        for (cplx& v : b) v *= scale;
        const auto out = extend_layer(b, scale * discrete_exponential(t, {0, n}));
        GridFunction g(Window{0, M, 0, 1});
        for (int m = 0; m <= M; ++m) {
            g.at(m, 0) = b[m];
            g.at(m, 1) = out[m];
        }
        CHECK(max_holomorphicity_residual(g) <= 1e-12);
    }
}

TEST_CASE("extend_layer output stacks holomorphically on its input") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> gauss(0.0, 100.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<cplx> boundary(33);
        for (cplx& v : boundary) v = cplx{gauss(rng), gauss(rng)};
        const cplx anchor{gauss(rng), gauss(rng)};
        const std::vector<cplx> out = extend_layer(boundary, anchor);

        GridFunction g(Window{0, 32, 0, 1});
        double sup = 0.0;
        for (int m = 0; m <= 32; ++m) {
            g.at(m, 0) = boundary[m];
            g.at(m, 1) = out[m];
            sup = std::max({sup, std::abs(boundary[m]), std::abs(out[m])});
        }
        CHECK(max_holomorphicity_residual(g) <= 1e-12 * std::max(sup, 1.0));
    }
}

// The three variants must agree with the formulas printed in the source
// material; each is transcribed here directly as an independent oracle.
namespace printed {

std::vector<cplx> strati_negativi(std::span<const cplx> B, cplx a) {
    const cplx i{0, 1};
    std::vector<cplx> out(B.size());
    out[0] = a;
    for (std::size_t m = 1; m < B.size(); ++m) {
        cplx S{};
        for (std::size_t k = 1; k < m; ++k) S += ipow(-static_cast<int>(k)) * B[k];
        out[m] = ipow(static_cast<int>(m)) *
                 (a - 2.0 * i * S - i * B[0] + ipow(-static_cast<int>(m) - 1) * B[m]);
    }
    return out;
}

std::vector<cplx> strati_sup(std::span<const cplx> B, cplx a) {
    return strati_negativi(B, a); // same printed coefficient pattern
}

std::vector<cplx> strati_sup_neg(std::span<const cplx> B, cplx a) {
    const cplx i{0, 1};
    std::vector<cplx> out(B.size());
    out[0] = a;
    for (std::size_t m = 1; m < B.size(); ++m) {
        cplx S{};
        for (std::size_t k = 1; k < m; ++k) S += ipow(static_cast<int>(k)) * B[k];
        out[m] = ipow(-static_cast<int>(m)) *
                 (a + 2.0 * i * S + i * B[0] + ipow(static_cast<int>(m) + 1) * B[m]);
    }
    return out;
}

} // namespace printed

TEST_CASE("extend_layer variants match the printed formulas") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<cplx> boundary(17);
        for (cplx& v : boundary) v = cplx{gauss(rng), gauss(rng)};
        const cplx anchor{gauss(rng), gauss(rng)};

        const auto neg = extend_layer_neg(boundary, anchor);
        const auto neg_ref = printed::strati_negativi(boundary, anchor);
        const auto down = extend_layer_down(boundary, anchor);
        const auto down_ref = printed::strati_sup(boundary, anchor);
        const auto down_neg = extend_layer_down_neg(boundary, anchor);
        const auto down_neg_ref = printed::strati_sup_neg(boundary, anchor);
        for (std::size_t m = 0; m < boundary.size(); ++m) {
            CHECK(std::abs(neg[m] - neg_ref[m]) < 1e-13);
            CHECK(std::abs(down[m] - down_ref[m]) < 1e-13);
            CHECK(std::abs(down_neg[m] - down_neg_ref[m]) < 1e-13);
        }
    }
}

TEST_CASE("extend_layer variants reproduce exponential layers") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> tdist(-0.45 * kPi, 0.45 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = tdist(rng);
        const int n = (trial % 5) - 2;
        const int M = 48;
        std::vector<cplx> b_neg(M + 1), b_down(M + 1), b_down_neg(M + 1);
        for (int k = 0; k <= M; ++k) {
            b_neg[k] = discrete_exponential(t, {-k, n - 1});
            b_down[k] = discrete_exponential(t, {k, n + 1});
            b_down_neg[k] = discrete_exponential(t, {-k, n + 1});
        }
        const cplx anchor = discrete_exponential(t, {0, n});
        const auto neg = extend_layer_neg(b_neg, anchor);
        const auto down = extend_layer_down(b_down, anchor);
        const auto down_neg = extend_layer_down_neg(b_down_neg, anchor);
        double sup = 0.0, err = 0.0;
        for (int m = 0; m <= M; ++m) {
            const cplx ref_neg = discrete_exponential(t, {-m, n});
            const cplx ref_pos = discrete_exponential(t, {m, n});
            sup = std::max({sup, std::abs(ref_neg), std::abs(ref_pos)});
            err = std::max({err, std::abs(neg[m] - ref_neg), std::abs(down[m] - ref_pos),
                            std::abs(down_neg[m] - ref_neg)});
        }
        CHECK(err <= 1e-12 * sup);
    }
}

TEST_CASE("round trip: closed-form entire functions re-derived layer by layer") {
    // sample z^2 and combinations of exponentials, rebuild layer n from
    // layer n-1 plus the anchor, compare
    const Window w{0, 24, 0, 4};
    std::vector<GridFunction> funcs;
    funcs.push_back(sample_monomial(2, w));
    GridFunction combo(w);
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int m = w.m_min; m <= w.m_max; ++m)
            combo.at(m, n) = 2.0 * discrete_exponential(0.5, {m, n}) -
                             cplx{0, 1.5} * discrete_exponential(-0.9, {m, n});
    funcs.push_back(std::move(combo));

    for (const GridFunction& F : funcs) {
        for (int n = w.n_min + 1; n <= w.n_max; ++n) {
            std::vector<cplx> boundary(w.width());
            for (int m = w.m_min; m <= w.m_max; ++m)
                boundary[static_cast<std::size_t>(m)] = F.at(m, n - 1);
            const auto out = extend_layer(boundary, F.at(0, n));
            double sup = 0.0;
            for (int m = w.m_min; m <= w.m_max; ++m)
                sup = std::max(sup, std::abs(F.at(m, n)));
            for (int m = w.m_min; m <= w.m_max; ++m)
                CHECK(std::abs(out[static_cast<std::size_t>(m)] - F.at(m, n)) <=
                      1e-10 * std::max(sup, 1.0));
        }
    }
}

TEST_CASE("contour integral basics") {
    const Window w{-1, 7, -1, 7};
    GridFunction zero(w), one(w);
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int m = w.m_min; m <= w.m_max; ++m) one.at(m, n) = 1.0;

    const DiscreteContour sq = DiscreteContour::rectangle_boundary(0, 5, 0, 5);
    CHECK(sq.closed());
    CHECK(std::abs(contour_integral(zero, one, sq)) == 0.0);
    CHECK(std::abs(contour_integral(one, one, sq)) < 1e-15); // telescoping

    DiscreteContour tiny;
    tiny.vertices = {{0, 0}};
    CHECK_THROWS_AS(contour_integral(one, one, tiny), DegenerateContour);
    DiscreteContour jump;
    jump.vertices = {{0, 0}, {2, 0}};
    CHECK_THROWS_AS(contour_integral(one, one, jump), DegenerateContour);

    const DiscreteContour big = DiscreteContour::rectangle_boundary(0, 9, 0, 9);
    CHECK_THROWS_AS(contour_integral(one, one, big), OutOfWindow);
}

TEST_CASE("closed contour of entire functions vanishes") {
    const Window w{-1, 9, -1, 9};
    GridFunction F(w), G(w), z2 = sample_monomial(2, w);
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int m = w.m_min; m <= w.m_max; ++m) {
            F.at(m, n) = discrete_exponential(0.3, {m, n});
            G.at(m, n) = discrete_exponential(-0.7, {m, n}) +
                         0.5 * discrete_exponential(2.9, {m, n});
        }
    const DiscreteContour sq = DiscreteContour::rectangle_boundary(0, 5, 0, 5);

    double supF = 0.0, supG = 0.0, supZ = 0.0;
    for (const LatticePoint& p : sq.vertices) {
        supF = std::max(supF, std::abs(F.at(p)));
        supG = std::max(supG, std::abs(G.at(p)));
        supZ = std::max(supZ, std::abs(z2.at(p)));
    }
    CHECK(std::abs(contour_integral(F, z2, sq)) <= 1e-10 * supF * supZ);
    CHECK(std::abs(contour_integral(F, G, sq)) <= 1e-10 * supF * supG);

    // orientation: reversing the vertex order negates the integral
    DiscreteContour rev = sq;
    std::reverse(rev.vertices.begin(), rev.vertices.end());
    const cplx a = contour_integral(F, G, sq);
    const cplx b = contour_integral(F, G, rev);
    CHECK(std::abs(a + b) < 1e-12 * std::max(1.0, std::abs(a)));
}

TEST_CASE("closed random lattice loops of exponential combinations vanish") {
    std::mt19937_64 rng(71);
    const Window w{-12, 12, -12, 12};
    GridFunction F(w), G(w);
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int m = w.m_min; m <= w.m_max; ++m) {
            F.at(m, n) = discrete_exponential(0.4, {m, n});
            G.at(m, n) = discrete_exponential(-1.1, {m, n});
        }

    // random closed loop: a lattice random walk glued to its reverse
    std::uniform_int_distribution<int> dir(0, 3);
    for (int trial = 0; trial < 10; ++trial) {
        DiscreteContour loop;
        loop.vertices.push_back({0, 0});
        for (int s = 0; s < 14; ++s) {
            LatticePoint p = loop.vertices.back();
            switch (dir(rng)) {
                case 0: ++p.m; break;
                case 1: --p.m; break;
                case 2: ++p.n; break;
                default: --p.n; break;
            }
            if (p.m < -11 || p.m > 11 || p.n < -11 || p.n > 11) { --s; continue; }
            loop.vertices.push_back(p);
        }
        for (std::size_t k = loop.vertices.size() - 1; k-- > 0;)
            loop.vertices.push_back(loop.vertices[k]);
        REQUIRE(loop.closed());
        double supF = 0.0, supG = 0.0;
        for (const LatticePoint& p : loop.vertices) {
            supF = std::max(supF, std::abs(F.at(p)));
            supG = std::max(supG, std::abs(G.at(p)));
        }
        CHECK(std::abs(contour_integral(F, G, loop)) <= 1e-10 * supF * supG);
    }
}

TEST_CASE("grid function validation") {
    CHECK_THROWS_AS(GridFunction(Window{3, 1, 0, 0}), ConfigError);
    CHECK_THROWS_AS(GridFunction(Window{0, 1, 0, 0}, std::vector<cplx>(3)), LengthMismatch);
    std::vector<cplx> bad(4, cplx{0, 0});
    bad[2] = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(GridFunction(Window{0, 1, 0, 1}, bad), ConfigError);
}
