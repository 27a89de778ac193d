// Acceptance suite: end-to-end checks of every advertised guarantee, one
// criterion per line, with the runtime budget enforced alongside the result.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "warpconv/conformal.hpp"
#include "warpconv/fock.hpp"
#include "warpconv/warped.hpp"
#include "warpconv/wedge.hpp"

using namespace warpconv;

namespace {

struct Criterion {
    int id;
    std::string label;
    double budgetSeconds;
    std::function<bool()> check;
};

bool conformal_algebra_both_dims() {
    for (int dim : {2, 4}) {
        GeneratorSet g = calibrate_signs(dim);
        if (!verify_conformal_algebra(g).pass()) return false;
    }
    return true;
}

bool so2d_both_dims() {
    for (int dim : {2, 4}) {
        GeneratorSet g = calibrate_signs(dim);
        So2dSet s = build_so2d(g);
        if (!verify_so2d(s).pass()) return false;
    }
    return true;
}

bool moyal_reproduction() {
    Metric g(4);
    GeneratorSet gen = calibrate_signs(4);
    TwistSeriesConfig cfg = make_twist_config(gen.vectorFieldP, ThetaSpec::symbolic(4), 4);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult c =
                deformed_commutator(g.lowered_coordinate(mu), g.lowered_coordinate(nu), cfg);
            if (c.value != moyal_reference(cfg.theta, mu, nu)) return false;
            if (!c.terminated || c.terminationOrder > 1) return false;
        }
    return true;
}

bool nonconstant_spacetime() {
    Metric g(4);
    GeneratorSet gen = calibrate_signs(4);
    TwistSeriesConfig cfg = make_twist_config(gen.vectorFieldK, ThetaSpec::symbolic(4), 4);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult c =
                deformed_commutator(g.lowered_coordinate(mu), g.lowered_coordinate(nu), cfg);
            if (!c.orderComponents.at(0).is_zero()) return false;
            if (c.orderComponents.at(1) != nonconstant_reference(cfg.theta, mu, nu)) return false;
            if (!c.orderComponents.at(2).is_zero()) return false;
            if (!c.orderComponents.at(4).is_zero()) return false;
        }
    return true;
}

bool flow_consistency() {
    GeneratorSet gen = calibrate_signs(4);
    for (int mu = 0; mu < 4; ++mu)
        for (int order = 0; order <= 6; ++order)
            if (conformal_flow_series(gen, mu, order) != mobius_series(mu, order)) return false;
    return true;
}

bool wedge_preservation() {
    WedgeReport r = wedge_preservation_check(10000, 7);
    return r.pass();
}

bool spacelike_separation() {
    WedgeReport r = spacelike_separation_check(10000, 7);
    return r.pass();
}

bool fock_batteries() {
    FockSpacePtr space = make_default_space();
    bool ok = true;
    auto show = [&](const BatteryReport& r) {
        std::printf("         %-42s max residual %.3e (tol %.0e) %s\n", r.name.c_str(),
                    r.maxResidual, r.tolerance, r.pass() ? "ok" : "VIOLATED");
        ok = ok && r.pass();
    };
    show(commutator_battery(space, 1000, 101, 1e-12));
    show(vacuum_battery(space, 1000, 102, 1e-12));
    show(hermiticity_check(space, 1000, 103, 1e-10));
    show(bound_check(space, 1000, 104, 1e-10));
    show(multiplier_identity_check(space, 2, 200, 105, 1e-10));
    show(multiplier_identity_check(space, 3, 100, 106, 1e-10));
    show(conjugation_identity_check(space, 100, 107, 1e-10));
    show(gamma_norm_battery(space, 100, 108, 1e-12));
    return ok;
}

bool scaled_generalization() {
    Metric g(4);
    GeneratorSet gen = calibrate_signs(4);
    Poly lam = lambda_symbol();
    Poly eta = eta_symbol();

    // structural reduction at unit scalings
    Poly one = Poly::constant(4, GaussianRational(1));
    auto plus = scaled_generators(ScaledKind::Plus, one, one, gen);
    auto minus = scaled_generators(ScaledKind::Minus, one, one, gen);
    for (int mu = 0; mu < 4; ++mu) {
        if (plus[static_cast<size_t>(mu)] != gen.vectorFieldP[static_cast<size_t>(mu)]) return false;
        if (minus[static_cast<size_t>(mu)] != gen.vectorFieldK[static_cast<size_t>(mu)]) return false;
    }

    // symbolic scalings against the scaled closed form
    auto fields = scaled_generators(ScaledKind::Minus, lam, eta, gen);
    TwistSeriesConfig cfg = make_twist_config(fields, ThetaSpec::symbolic(4), 1);
    ThetaSpec scaledTheta = ThetaSpec::scaled_symbolic({lam, lam, eta, eta});
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DeformedProductResult c =
                deformed_commutator(g.lowered_coordinate(mu), g.lowered_coordinate(nu), cfg);
            if (c.orderComponents.at(1) != nonconstant_reference(scaledTheta, mu, nu)) return false;
        }

    // unit-scaling series reduce to the plain families
    TwistSeriesConfig unitP = make_twist_config(plus, ThetaSpec::symbolic(4), 2);
    TwistSeriesConfig plainP = make_twist_config(gen.vectorFieldP, ThetaSpec::symbolic(4), 2);
    Poly x0 = g.lowered_coordinate(0);
    Poly x1 = g.lowered_coordinate(1);
    if (twist_product(x0, x1, unitP).value != twist_product(x0, x1, plainP).value) return false;
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "conformal algebra relations exact at d=2 and d=4", 5.0, conformal_algebra_both_dims},
        {2, "so(2,d) algebra relations exact at d=2 and d=4", 30.0, so2d_both_dims},
        {3, "translation twist reproduces the constant plane, all 16 pairs", 1.0, moyal_reproduction},
        {4, "conformal twist: order 1 closed form; orders 0,2,4 vanish", 60.0, nonconstant_spacetime},
        {5, "flow exponential matches the map expansion through degree 6", 30.0, flow_consistency},
        {6, "wedge preservation and scale-factor positivity, 10^4 samples", 30.0, wedge_preservation},
        {7, "deformed images spacelike separated, 10^4 samples", 30.0, spacelike_separation},
        {8, "fock batteries at stated tolerances", 120.0, fock_batteries},
        {9, "scaled generator family: scaled closed form and unit reduction", 60.0,
         scaled_generalization},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.check();
        } catch (const std::exception& e) {
            std::printf("[FAIL] %d. %s -- exception: %s\n", c.id, c.label.c_str(), e.what());
            ++failures;
            continue;
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool inBudget = elapsed < c.budgetSeconds;
        bool pass = ok && inBudget;
        std::printf("[%s] %d. %s (%.2f s, budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), elapsed, c.budgetSeconds,
                    !ok ? "" : (inBudget ? "" : " -- over budget"));
        if (!pass) ++failures;
    }
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
