#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "warpconv/conformal.hpp"
#include "warpconv/diffop.hpp"
#include "warpconv/fock.hpp"
#include "warpconv/poly.hpp"
#include "warpconv/warped.hpp"
#include "warpconv/wedge.hpp"

namespace warpconv {

using Json = nlohmann::ordered_json;

inline Json var_to_json(VarId v, uint32_t exp) {
    Json j;
    switch (v.kind()) {
        case VarId::Kind::Coordinate:
            j["kind"] = "x";
            j["indices"] = {v.index1()};
            break;
        case VarId::Kind::ThetaEntry:
            j["kind"] = "th";
            j["indices"] = {v.index1(), v.index2()};
            break;
        default:
            if (v.index1() == VarId::kLambdaIndex) {
                j["kind"] = "lam";
                j["indices"] = Json::array();
            } else if (v.index1() == VarId::kEtaIndex) {
                j["kind"] = "eta";
                j["indices"] = Json::array();
            } else {
                j["kind"] = "b";
                j["indices"] = {v.index1()};
            }
    }
    j["exp"] = exp;
    return j;
}

inline Json poly_to_json(const Poly& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        t["coeff"] = {{"re", c.re().to_string()}, {"im", c.im().to_string()}};
        Json vars = Json::array();
        for (const auto& [v, e] : m.factors()) vars.push_back(var_to_json(v, e));
        t["vars"] = vars;
        terms.push_back(t);
    }
    return terms;
}

inline Json diffop_to_json(const DiffOp& d) {
    Json terms = Json::array();
    for (const auto& [alpha, coeff] : d.terms()) {
        Json t;
        Json orders = Json::array();
        for (int mu = 0; mu < alpha.dim(); ++mu) orders.push_back(alpha[mu]);
        t["orders"] = orders;
        t["coeff"] = poly_to_json(coeff);
        terms.push_back(t);
    }
    return terms;
}

inline Json relation_to_json(const RelationCheck& rc) {
    return Json{{"relation_id", rc.id},
                {"lhs", rc.lhs},
                {"rhs", rc.rhs},
                {"residual_canonical_string", rc.residual},
                {"pass", rc.pass}};
}

inline Json algebra_report_to_json(const AlgebraReport& r) {
    Json list = Json::array();
    for (const auto& rc : r.relations) list.push_back(relation_to_json(rc));
    return list;
}

inline Json wedge_report_to_json(const WedgeReport& r) {
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        Json jf{{"sample", f.sample}, {"what", f.what}};
        Json data;
        for (const auto& [k, v] : f.data) data[k] = v;
        jf["data"] = data;
        fails.push_back(jf);
    }
    return Json{{"samples", r.samples}, {"seed", r.seed}, {"failures", fails}, {"pass", r.pass()}};
}

inline Json battery_to_json(const BatteryReport& b) {
    return Json{{"name", b.name},
                {"samples", b.samples},
                {"max_residual", b.maxResidual},
                {"tolerance", b.tolerance},
                {"violations", b.violations},
                {"pass", b.pass()}};
}

inline Json deformed_result_to_json(const DeformedProductResult& r) {
    Json orders = Json::array();
    for (const auto& [k, comp] : r.orderComponents)
        orders.push_back(Json{{"order", k}, {"poly", comp.canonical_string()}, {"zero", comp.is_zero()}});
    Json j{{"orders", orders}, {"value", r.value.canonical_string()}, {"terminated", r.terminated}};
    if (r.terminated) j["termination_order"] = r.terminationOrder;
    return j;
}

// Deformation-matrix input file: either {"lambda": "p/q", "eta": "p/q"} for
// the admissible family, or {"matrix": [[16 rational strings]]} giving the
// upper-index antisymmetric form directly.
inline std::vector<std::vector<Rational>> read_theta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open theta file: " + path);
    Json j = Json::parse(in);

    std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4, Rational(0)));
    if (j.contains("matrix")) {
        const Json& rows = j.at("matrix");
        if (!rows.is_array() || rows.size() != 4)
            throw std::runtime_error("theta file: matrix must be 4x4");
        for (int a = 0; a < 4; ++a) {
            const Json& row = rows[static_cast<size_t>(a)];
            if (!row.is_array() || row.size() != 4)
                throw std::runtime_error("theta file: matrix must be 4x4");
            for (int b = 0; b < 4; ++b)
                m[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    Rational::parse(row[static_cast<size_t>(b)].get<std::string>());
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                if (m[static_cast<size_t>(a)][static_cast<size_t>(b)] !=
                    -m[static_cast<size_t>(b)][static_cast<size_t>(a)])
                    throw std::runtime_error("theta file: matrix is not antisymmetric");
        return m;
    }

    Rational lambda = Rational::parse(j.at("lambda").get<std::string>());
    Rational eta = Rational::parse(j.at("eta").get<std::string>());
    ThetaMatrix theta(lambda, eta);  // validates lambda >= 0
    Mat4 upper = theta.upper();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            m[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                upper[static_cast<size_t>(a)][static_cast<size_t>(b)];
    return m;
}

// Grid/battery configuration for the numerical checks.
struct FockConfig {
    int n = 1;
    std::string pointsMode = "auto";
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
    int mMax = 3;
    uint64_t samples = 1000;
    uint64_t seed = 1;
    FockTolerances tolerances;
};

inline FockConfig read_fock_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fock config: " + path);
    Json j = Json::parse(in);
    FockConfig cfg;
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("mMax")) cfg.mMax = j.at("mMax").get<int>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<uint64_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("tolerances")) {
        const Json& t = j.at("tolerances");
        if (t.contains("unitarity")) cfg.tolerances.unitarity = t.at("unitarity").get<double>();
        if (t.contains("identity")) cfg.tolerances.identity = t.at("identity").get<double>();
    }
    if (j.contains("points") && !j.at("points").is_string()) {
        cfg.pointsMode = "explicit";
        for (const auto& row : j.at("points")) {
            std::vector<double> p;
            for (const auto& c : row) p.push_back(c.get<double>());
            cfg.points.push_back(p);
        }
        if (j.contains("weights"))
            for (const auto& w : j.at("weights")) cfg.weights.push_back(w.get<double>());
    }
    return cfg;
}

inline FockSpacePtr make_space(const FockConfig& cfg) {
    MomentumGrid grid;
    if (cfg.pointsMode == "explicit") {
        grid.n = cfg.n;
        grid.points = cfg.points;
        if (!cfg.weights.empty()) {
            grid.weights = cfg.weights;
        } else {
            for (const auto& p : cfg.points) {
                double norm = 0;
                for (double c : p) norm += c * c;
                grid.weights.push_back(1.0 / (2.0 * std::sqrt(norm)));
            }
        }
    } else if (cfg.n == 1) {
        grid = MomentumGrid::symmetric_line();
    } else {
        grid = MomentumGrid::axis_grid(cfg.n, 2, 0.5);
    }
    return std::make_shared<FockSpace>(grid, cfg.mMax);
}

}  // namespace warpconv
