#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "warpconv/json_io.hpp"
#include "warpconv/parse.hpp"

namespace warpconv::cli {

// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input
// error. Commands write one report to `out`; diagnostics go to `err`.

namespace detail {

struct Output {
    std::string format = "text";
    bool json() const { return format == "json"; }
};

inline int cmd_verify_algebra(int dim, const Output& fmt, std::ostream& out) {
    GeneratorSet gen = calibrate_signs(dim);
    AlgebraReport conf = verify_conformal_algebra(gen);
    So2dSet so = build_so2d(gen);
    AlgebraReport ext = verify_so2d(so);
    bool pass = conf.pass() && ext.pass();

    if (fmt.json()) {
        Json j{{"command", "verify-algebra"},
               {"dim", dim},
               {"signs",
                {{"P", gen.signs.p}, {"K", gen.signs.k}, {"D", gen.signs.d}, {"L", gen.signs.l}}},
               {"embedding", so.embedding},
               {"conformal", algebra_report_to_json(conf)},
               {"so2d", algebra_report_to_json(ext)},
               {"pass", pass}};
        out << j.dump(2) << "\n";
    } else {
        out << "conformal generators at d=" << dim << ": signs P=" << gen.signs.p
            << " K=" << gen.signs.k << " D=" << gen.signs.d << " L=" << gen.signs.l << "\n";
        out << "conformal relations: " << conf.relations.size() << " checked, "
            << conf.failure_count() << " failed\n";
        out << "extended embedding: " << so.embedding << "\n";
        out << "so(2,d) relations: " << ext.relations.size() << " checked, " << ext.failure_count()
            << " failed\n";
        for (const auto& rc : conf.relations)
            if (!rc.pass) out << "  FAIL " << rc.id << " residual " << rc.residual << "\n";
        for (const auto& rc : ext.relations)
            if (!rc.pass) out << "  FAIL " << rc.id << " residual " << rc.residual << "\n";
        out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

struct GeneratorChoice {
    std::string name = "P";          // P | K | scaled
    std::string scaledKind = "minus";  // plus | minus, for name == scaled
    std::string lambdaText;          // numeric scale, empty = symbolic
    std::string etaText;
    std::string thetaFile;           // numeric matrix, empty = symbolic
};

struct BuiltSeries {
    TwistSeriesConfig cfg;
    ThetaSpec referenceTheta;  // theta entering the closed-form references
    bool isTranslation = false;
};

inline BuiltSeries build_series(const GeneratorChoice& choice, int order) {
    ThetaSpec theta = ThetaSpec::symbolic(4);
    if (!choice.thetaFile.empty()) theta = ThetaSpec::from_rationals(read_theta_file(choice.thetaFile));

    GeneratorSet gen = calibrate_signs(4);
    std::vector<DiffOp> fields;
    ThetaSpec reference = theta;
    bool translation = false;

    if (choice.name == "P") {
        fields = gen.vectorFieldP;
        translation = true;
    } else if (choice.name == "K") {
        fields = gen.vectorFieldK;
    } else if (choice.name == "scaled") {
        Poly lambda = choice.lambdaText.empty()
                          ? lambda_symbol()
                          : Poly::constant(4, GaussianRational(Rational::parse(choice.lambdaText)));
        Poly eta = choice.etaText.empty()
                       ? eta_symbol()
                       : Poly::constant(4, GaussianRational(Rational::parse(choice.etaText)));
        ScaledKind kind = choice.scaledKind == "plus" ? ScaledKind::Plus : ScaledKind::Minus;
        fields = scaled_generators(kind, lambda, eta, gen);
        translation = kind == ScaledKind::Plus;
        // the twist with scaled generators equals the twist with the plain
        // generators and the componentwise-scaled matrix
        std::vector<Poly> scales{lambda, lambda, eta, eta};
        std::vector<std::vector<Poly>> entries(4, std::vector<Poly>(4, Poly(4)));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                entries[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    scales[static_cast<size_t>(a)] * scales[static_cast<size_t>(b)] * theta.upper(a, b);
        reference = ThetaSpec::from_entries(std::move(entries));
    } else {
        throw CLI::ValidationError("--generator must be one of P, K, scaled");
    }

    return BuiltSeries{make_twist_config(std::move(fields), std::move(theta), order),
                       std::move(reference), translation};
}

inline int cmd_commutator(const GeneratorChoice& choice, int order, int mu, int nu,
                          const Output& fmt, std::ostream& out) {
    BuiltSeries series = build_series(choice, order);
    Metric g(4);
    Poly xm = g.lowered_coordinate(mu);
    Poly xn = g.lowered_coordinate(nu);
    DeformedProductResult commutator = deformed_commutator(xm, xn, series.cfg);

    struct Check {
        std::string name;
        bool pass;
    };
    std::vector<Check> checks;
    if (series.isTranslation) {
        Poly ref = moyal_reference(series.referenceTheta, mu, nu);
        checks.push_back({"matches-constant-reference", commutator.value == ref});
        checks.push_back({"terminates-at-order-1",
                          commutator.terminated && commutator.terminationOrder <= 1});
    } else {
        Poly ref = nonconstant_reference(series.referenceTheta, mu, nu);
        auto comp = [&](int k) {
            auto it = commutator.orderComponents.find(k);
            return it == commutator.orderComponents.end() ? Poly::zero(4) : it->second;
        };
        checks.push_back({"order-1-matches-reference", comp(1) == ref});
        if (order >= 2) checks.push_back({"order-2-vanishes", comp(2).is_zero()});
        checks.push_back({"order-0-vanishes", comp(0).is_zero()});
    }
    bool pass = true;
    for (const auto& c : checks) pass = pass && c.pass;

    if (fmt.json()) {
        Json j{{"command", "commutator"},
               {"generator", choice.name},
               {"mu", mu},
               {"nu", nu},
               {"order", order},
               {"result", deformed_result_to_json(commutator)}};
        Json cj = Json::array();
        for (const auto& c : checks) cj.push_back({{"check", c.name}, {"pass", c.pass}});
        j["checks"] = cj;
        j["pass"] = pass;
        out << j.dump(2) << "\n";
    } else {
        out << "deformed coordinate commutator [x" << mu << ", x" << nu << "] with generator "
            << choice.name << "\n";
        for (const auto& [k, comp] : commutator.orderComponents)
            out << "  order " << k << ": " << comp.canonical_string() << "\n";
        out << "  value: " << commutator.value.canonical_string() << "\n";
        if (commutator.terminated)
            out << "  series terminated at order " << commutator.terminationOrder << "\n";
        for (const auto& c : checks)
            out << "  " << (c.pass ? "PASS" : "FAIL") << " " << c.name << "\n";
        out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

inline int cmd_product(const std::string& aText, const std::string& bText,
                       const GeneratorChoice& choice, int order, const Output& fmt,
                       std::ostream& out) {
    Poly a = parse_poly(aText, 4);
    Poly b = parse_poly(bText, 4);
    BuiltSeries series = build_series(choice, order);
    DeformedProductResult product = twist_product(a, b, series.cfg);

    if (fmt.json()) {
        Json j{{"command", "product"},
               {"poly_a", a.canonical_string()},
               {"poly_b", b.canonical_string()},
               {"generator", choice.name},
               {"order", order},
               {"result", deformed_result_to_json(product)},
               {"value_terms", poly_to_json(product.value)}};
        out << j.dump(2) << "\n";
    } else {
        out << "deformed product (" << a.canonical_string() << ") x (" << b.canonical_string()
            << ") with generator " << choice.name << "\n";
        for (const auto& [k, comp] : product.orderComponents)
            out << "  order " << k << ": " << comp.canonical_string() << "\n";
        out << "  value: " << product.value.canonical_string() << "\n";
        if (product.terminated)
            out << "  series terminated at order " << product.terminationOrder << "\n";
        else
            out << "  series not terminated within order cap\n";
    }
    return 0;
}

inline int cmd_wedge_check(uint64_t samples, uint64_t seed, const Output& fmt, std::ostream& out) {
    WedgeReport preserve = wedge_preservation_check(samples, seed);
    WedgeReport separate = spacelike_separation_check(samples, seed);
    bool pass = preserve.pass() && separate.pass();

    if (fmt.json()) {
        Json j{{"command", "wedge-check"},
               {"samples", samples},
               {"seed", seed},
               {"preservation", wedge_report_to_json(preserve)},
               {"separation", wedge_report_to_json(separate)},
               {"pass", pass}};
        out << j.dump(2) << "\n";
    } else {
        out << "wedge checks: samples=" << samples << " seed=" << seed << "\n";
        out << "  preservation failures: " << preserve.failures.size() << "\n";
        out << "  separation failures: " << separate.failures.size() << "\n";
        for (const auto& f : preserve.failures) {
            out << "  counterexample (sample " << f.sample << "): " << f.what;
            for (const auto& [k, v] : f.data) out << " " << k << "=" << v;
            out << "\n";
        }
        for (const auto& f : separate.failures) {
            out << "  counterexample (sample " << f.sample << "): " << f.what;
            for (const auto& [k, v] : f.data) out << " " << k << "=" << v;
            out << "\n";
        }
        out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

inline int cmd_fock_verify(const std::string& configPath, const Output& fmt, std::ostream& out) {
    FockConfig cfg;
    if (!configPath.empty()) cfg = read_fock_config(configPath);
    FockSpacePtr space = make_space(cfg);

    std::vector<BatteryReport> reports;
    reports.push_back(commutator_battery(space, cfg.samples, cfg.seed, cfg.tolerances.unitarity));
    reports.push_back(vacuum_battery(space, cfg.samples, cfg.seed + 1, cfg.tolerances.unitarity));
    reports.push_back(hermiticity_check(space, cfg.samples, cfg.seed + 2, cfg.tolerances.identity));
    reports.push_back(bound_check(space, cfg.samples, cfg.seed + 3, cfg.tolerances.identity));
    reports.push_back(
        multiplier_identity_check(space, 2, cfg.samples / 10 + 1, cfg.seed + 4, cfg.tolerances.identity));
    if (space->mMax() >= 3)
        reports.push_back(multiplier_identity_check(space, 3, cfg.samples / 20 + 1, cfg.seed + 5,
                                                    cfg.tolerances.identity));
    reports.push_back(
        conjugation_identity_check(space, 100, cfg.seed + 6, cfg.tolerances.identity));
    reports.push_back(gamma_norm_battery(space, cfg.samples / 10 + 1, cfg.seed + 7,
                                         cfg.tolerances.unitarity));

    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass();

    if (fmt.json()) {
        Json batteries = Json::array();
        for (const auto& r : reports) batteries.push_back(battery_to_json(r));
        Json j{{"command", "fock-verify"},
               {"modes", space->grid().modes()},
               {"mMax", space->mMax()},
               {"samples", cfg.samples},
               {"seed", cfg.seed},
               {"batteries", batteries},
               {"pass", pass}};
        out << j.dump(2) << "\n";
    } else {
        out << "fock batteries: modes=" << space->grid().modes() << " mMax=" << space->mMax()
            << " samples=" << cfg.samples << " seed=" << cfg.seed << "\n";
        for (const auto& r : reports)
            out << "  " << (r.pass() ? "PASS" : "FAIL") << " " << r.name
                << " (max residual " << r.maxResidual << ", tolerance " << r.tolerance << ")\n";
        out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"symbolic and numerical checks for conformally deformed free fields"};
    app.require_subcommand(1);
    app.fallthrough();
    detail::Output fmt;
    app.add_option("--format", fmt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // verify-algebra
    int dim = 4;
    CLI::App* verify = app.add_subcommand("verify-algebra", "verify the generator algebras exactly");
    verify->add_option("--dim", dim, "spacetime dimension")->check(CLI::Range(2, 6))
        ->capture_default_str();

    // commutator
    detail::GeneratorChoice commChoice;
    int commOrder = 2, commMu = 0, commNu = 1;
    CLI::App* comm = app.add_subcommand("commutator", "deformed coordinate commutator");
    comm->add_option("--generator", commChoice.name, "generator family")
        ->check(CLI::IsMember({"P", "K", "scaled"}))
        ->required();
    comm->add_option("--order", commOrder, "series order cap")->check(CLI::Range(0, 6))
        ->capture_default_str();
    comm->add_option("--mu", commMu, "first index")->check(CLI::Range(0, 3))->required();
    comm->add_option("--nu", commNu, "second index")->check(CLI::Range(0, 3))->required();
    comm->add_option("--lambda", commChoice.lambdaText, "numeric lambda scale (scaled family)");
    comm->add_option("--eta", commChoice.etaText, "numeric eta scale (scaled family)");
    comm->add_option("--kind", commChoice.scaledKind, "scaled family branch")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
    comm->add_option("--theta-file", commChoice.thetaFile, "JSON deformation matrix file");

    // product
    detail::GeneratorChoice prodChoice;
    std::string polyA, polyB;
    int prodOrder = 2;
    CLI::App* prod = app.add_subcommand("product", "deformed product of two polynomials");
    prod->add_option("--poly-a", polyA, "first polynomial")->required();
    prod->add_option("--poly-b", polyB, "second polynomial")->required();
    prod->add_option("--generator", prodChoice.name, "generator family")
        ->check(CLI::IsMember({"P", "K", "scaled"}))
        ->capture_default_str();
    prod->add_option("--order", prodOrder, "series order cap")->check(CLI::Range(0, 6))
        ->capture_default_str();
    prod->add_option("--lambda", prodChoice.lambdaText, "numeric lambda scale (scaled family)");
    prod->add_option("--eta", prodChoice.etaText, "numeric eta scale (scaled family)");
    prod->add_option("--kind", prodChoice.scaledKind, "scaled family branch")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
    prod->add_option("--theta-file", prodChoice.thetaFile, "JSON deformation matrix file");

    // wedge-check
    uint64_t samples = 10000, seed = 1;
    CLI::App* wedge = app.add_subcommand("wedge-check", "exact wedge geometry batteries");
    wedge->add_option("--samples", samples, "number of samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    wedge->add_option("--seed", seed, "master seed")->capture_default_str();

    // fock-verify
    std::string fockConfig;
    CLI::App* fock = app.add_subcommand("fock-verify", "numerical batteries on the truncated space");
    fock->add_option("--config", fockConfig, "JSON configuration file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return detail::cmd_verify_algebra(dim, fmt, out);
        if (comm->parsed()) return detail::cmd_commutator(commChoice, commOrder, commMu, commNu, fmt, out);
        if (prod->parsed()) return detail::cmd_product(polyA, polyB, prodChoice, prodOrder, fmt, out);
        if (wedge->parsed()) return detail::cmd_wedge_check(samples, seed, fmt, out);
        if (fock->parsed()) return detail::cmd_fock_verify(fockConfig, fmt, out);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace warpconv::cli
