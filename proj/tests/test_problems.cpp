#include <doctest.h>

#include <cmath>
#include <random>

#include "dpm/problems.hpp"

using namespace dpm;

namespace {

// sixth-order central difference weights for first and second derivatives
double fd1(const std::function<double(double)>& f, double x, double d) {
  return (-f(x - 3 * d) + 9 * f(x - 2 * d) - 45 * f(x - d) + 45 * f(x + d) -
          9 * f(x + 2 * d) + f(x + 3 * d)) /
         (60 * d);
}

double fd2(const std::function<double(double)>& f, double x, double d) {
  return (2 * f(x - 3 * d) - 27 * f(x - 2 * d) + 270 * f(x - d) - 490 * f(x) +
          270 * f(x + d) - 27 * f(x + 2 * d) + 2 * f(x + 3 * d)) /
         (180 * d * d);
}

struct ProbeConfig {
  double delta_space = 1e-2;
  double delta_time = 2e-3;  // resolves the oscillatory diffusion variants
  double tol = 1e-6;
};

void probe_problem(const TestProblem& p, int side, const ProbeConfig& cfg) {
  std::mt19937 rng(1234 + side);
  std::uniform_real_distribution<double> pos(-1.4, 1.4);
  std::uniform_real_distribution<double> tim(0.08, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = pos(rng), y = pos(rng), t = tim(rng);
    const PointEval e = p.exact_eval(side, x, y, t);
    const ForcingEval f = p.forcing_eval(side, x, y, t);
    const double ds = cfg.delta_space, dtm = cfg.delta_time;

    auto ux = [&](double xx) { return p.exact(side, xx, y, t); };
    auto uy = [&](double yy) { return p.exact(side, x, yy, t); };
    auto ut = [&](double tt) { return p.exact(side, x, y, tt); };
    const double lap = fd2(ux, x, ds) + fd2(uy, y, ds);
    const double scale =
        std::max({1.0, std::abs(f.f), std::abs(p.lambda(side, t) * lap)});

    // the forcing closes the PDE: f = u_t - lambda * lap(u)
    CHECK(std::abs(f.f - (fd1(ut, t, dtm) - p.lambda(side, t) * lap)) <=
          cfg.tol * scale);

    // hand-coded derivatives against finite differences
    CHECK(std::abs(e.ux - fd1(ux, x, ds)) <= cfg.tol * std::max(1.0, std::abs(e.ux)));
    CHECK(std::abs(e.uy - fd1(uy, y, ds)) <= cfg.tol * std::max(1.0, std::abs(e.uy)));
    CHECK(std::abs(e.ut - fd1(ut, t, dtm)) <= cfg.tol * std::max(1.0, std::abs(e.ut)));

    auto fx = [&](double xx) { return p.forcing(side, xx, y, t); };
    auto fy = [&](double yy) { return p.forcing(side, x, yy, t); };
    auto ft = [&](double tt) { return p.forcing(side, x, y, tt); };
    const double fscale = std::max(1.0, std::abs(f.f));
    CHECK(std::abs(f.fx - fd1(fx, x, ds)) <= cfg.tol * std::max(fscale, std::abs(f.fx)));
    CHECK(std::abs(f.fy - fd1(fy, y, ds)) <= cfg.tol * std::max(fscale, std::abs(f.fy)));
    CHECK(std::abs(f.ft - fd1(ft, t, dtm)) <= cfg.tol * std::max(fscale, std::abs(f.ft)));
    CHECK(std::abs(f.fxx - fd2(fx, x, ds)) <=
          10 * cfg.tol * std::max(fscale, std::abs(f.fxx)));
    CHECK(std::abs(f.fyy - fd2(fy, y, ds)) <=
          10 * cfg.tol * std::max(fscale, std::abs(f.fyy)));
    auto fxy = [&](double yy) {
      auto g = [&](double xx) { return p.forcing(side, xx, yy, t); };
      return fd1(g, x, ds);
    };
    CHECK(std::abs(f.fxy - fd1(fxy, y, ds)) <=
          10 * cfg.tol * std::max(fscale, std::abs(f.fxy)));
  }
}

}  // namespace

TEST_CASE("exact value spot checks") {
  CHECK(make_problem("tp1a")->exact(1, 0.5, 0.5, 0.0) ==
        doctest::Approx(std::pow(0.5, 17)));
  CHECK(make_problem("tp2a")->exact(2, 0.0, 0.0, 0.37) == 0.0);
  CHECK(make_problem("tp2c")->exact(1, 0.3, -0.8, 0.5) == 0.0);
  CHECK(make_problem("tp2c")->forcing(1, 0.3, -0.8, 0.5) == 0.0);
  CHECK_THROWS(make_problem("nosuch"));
  CHECK_THROWS(make_problem("tp1a")->exact(2, 0.1, 0.1, 0.1));
  CHECK_THROWS(make_problem("tp2a")->forcing(3, 0.1, 0.1, 0.1));
}

TEST_CASE("forcing closes the PDE for every problem and side") {
  probe_problem(*make_problem("tp1a"), 1, {});
  probe_problem(*make_problem("tp3a"), 1, {});
  probe_problem(*make_problem("tp3a", true), 1, {});
  probe_problem(*make_problem("tp2a"), 1, {});
  probe_problem(*make_problem("tp2a"), 2, {});
  {
    ProbeConfig cfg;  // high-frequency solution needs a smaller spatial step
    cfg.delta_space = 4e-3;
    cfg.tol = 1e-5;
    probe_problem(*make_problem("tp2b"), 1, cfg);
  }
  probe_problem(*make_problem("tp2b"), 2, {});
  probe_problem(*make_problem("tp2c"), 2, {});
}

TEST_CASE("interface jumps") {
  Circle circle({0, 0}, 1.0);

  SUBCASE("tp2c closed form") {
    auto p = make_problem("tp2c");
    for (double th : {0.0, 0.8, 2.9, 5.1}) {
      for (double t : {0.1, 0.62}) {
        const CurvePoint cp = circle.point_at(th);
        const JumpValues j = p->jumps(cp, t);
        const double expect =
            -1000.0 * std::sin(10 * t) * std::pow(std::cos(th), 4) *
            std::pow(std::sin(th), 5);
        CHECK(j.mu1 == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }

  SUBCASE("tp2a at theta = 0") {
    auto p = make_problem("tp2a");
    const CurvePoint cp = circle.point_at(0.0);
    for (double t : {0.0, 0.45}) {
      const JumpValues j = p->jumps(cp, t);
      CHECK(j.mu1 ==
            doctest::Approx(std::exp(-t) * (std::sin(1.0) - 1.0)).epsilon(1e-13));
      // flux jump from the exact gradients: 10 cos(1) - 2 at theta = 0
      CHECK(j.mu2 == doctest::Approx(std::exp(-t) *
                                     (10 * std::cos(1.0) - 2.0)).epsilon(1e-13));
    }
  }

  SUBCASE("jumps require a composite problem") {
    CHECK_THROWS(make_problem("tp1a")->jumps(circle.point_at(0.0), 0.1));
  }
}

TEST_CASE("tp3a diffusion variants") {
  auto body = make_problem("tp3a");
  auto caption = make_problem("tp3a", true);
  // body text: period 0.2
  for (double t : {0.03, 0.41, 0.77})
    CHECK(body->lambda(1, t + 0.2) == doctest::Approx(body->lambda(1, t)).epsilon(1e-13));
  CHECK(body->lambda(1, 0.05) == doctest::Approx(1.1 + 1.0));
  CHECK(caption->lambda(1, 0.5) == doctest::Approx(1.1 + 1.0));
  // positivity over the run interval
  for (double t = 0; t <= 1.0; t += 1e-3) {
    CHECK(body->lambda(1, t) > 0.0);
    CHECK(caption->lambda(1, t) > 0.0);
  }
  CHECK(body->lambda_time_dependent());
  CHECK(!make_problem("tp1a")->lambda_time_dependent());
}
