#include "diffquat/certificate.hpp"

#include "diffquat/expr.hpp"

namespace diffquat {

using nlohmann::ordered_json;

ordered_json emit_certificate_json(const SplitCertificate& cert) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["field"] = {{"t_prime", cert.algebra.base.t_prime.to_string()}};
    doc["algebra"] = {{"alpha", cert.algebra.alpha.to_string()},
                      {"beta", cert.algebra.beta.to_string()}};
    doc["derivation"] = {{"a1", cert.spec.a1.to_string()},
                         {"a2", cert.spec.a2.to_string()},
                         {"a3", cert.spec.a3.to_string()}};
    ordered_json tower = ordered_json::array();
    for (int i = 0; i < cert.tower->height(); ++i) {
        const TowerStep& st = cert.tower->step(i);
        ordered_json step;
        switch (st.kind) {
            case StepKind::Radical:
                step["kind"] = "radical";
                step["name"] = st.name;
                step["n"] = st.n;
                step["f"] = st.f.to_string();
                break;
            case StepKind::Primitive:
                step["kind"] = "primitive";
                step["name"] = st.name;
                step["w"] = st.w.to_string();
                break;
            case StepKind::HyperExp:
                step["kind"] = "hyperexp";
                step["name"] = st.name;
                step["w"] = st.w.to_string();
                break;
            case StepKind::RiccatiGen:
                step["kind"] = "riccati";
                step["name"] = st.name;
                step["a0"] = st.a0.to_string();
                step["a1"] = st.a1.to_string();
                step["a2"] = st.a2.to_string();
                break;
        }
        tower.push_back(std::move(step));
    }
    doc["tower"] = std::move(tower);
    doc["xi"] = cert.xi.to_string();
    auto mat_json = [](const Mat2& m) {
        ordered_json rows = ordered_json::array();
        rows.push_back(ordered_json::array({m.e[0].to_string(), m.e[1].to_string()}));
        rows.push_back(ordered_json::array({m.e[2].to_string(), m.e[3].to_string()}));
        return rows;
    };
    doc["P"] = mat_json(cert.p);
    doc["lambda1"] = cert.lambda1.to_string();
    doc["lambda2"] = cert.lambda2.to_string();
    doc["mu"] = cert.mu.to_string();
    doc["mu_rate"] = cert.mu_rate.to_string();
    doc["F"] = mat_json(cert.f);
    doc["det_F"] = cert.f.det().to_string();
    doc["verified"] = cert.verified;
    doc["trdeg"] = cert.trdeg;
    doc["notes"] = cert.notes;
    return doc;
}

SplitCertificate parse_certificate_json(const ordered_json& doc) {
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
        throw MathError("unsupported certificate schema version");

    DiffBase base;
    base.t_prime = parse_ratfunc(doc.at("field").at("t_prime").get<std::string>());
    QuatAlgebra alg(parse_ratfunc(doc.at("algebra").at("alpha").get<std::string>()),
                    parse_ratfunc(doc.at("algebra").at("beta").get<std::string>()), base);
    DerivationSpec spec{parse_ratfunc(doc.at("derivation").at("a1").get<std::string>()),
                        parse_ratfunc(doc.at("derivation").at("a2").get<std::string>()),
                        parse_ratfunc(doc.at("derivation").at("a3").get<std::string>())};

    TowerPtr tower = Tower::make_base(base);
    for (const auto& step : doc.at("tower")) {
        std::string kind = step.at("kind").get<std::string>();
        std::string name = step.at("name").get<std::string>();
        if (kind == "radical") {
            auto adj = Tower::adjoin_step(
                tower, TowerStep::radical(name, step.at("n").get<int>(),
                                          parse_tower_elem(step.at("f").get<std::string>(), tower)));
            tower = adj.tower;
        } else if (kind == "primitive") {
            auto adj = Tower::adjoin_step(
                tower, TowerStep::primitive(name, parse_tower_elem(step.at("w").get<std::string>(), tower)));
            tower = adj.tower;
        } else if (kind == "hyperexp") {
            auto adj = Tower::adjoin_step(
                tower, TowerStep::hyperexp(name, parse_tower_elem(step.at("w").get<std::string>(), tower)));
            tower = adj.tower;
        } else if (kind == "riccati") {
            auto adj = Tower::adjoin_step(
                tower,
                TowerStep::riccati_gen(name, parse_tower_elem(step.at("a0").get<std::string>(), tower),
                                       parse_tower_elem(step.at("a1").get<std::string>(), tower),
                                       parse_tower_elem(step.at("a2").get<std::string>(), tower)));
            tower = adj.tower;
        } else {
            throw MathError("unknown tower step kind: " + kind);
        }
    }

    auto elem = [&](const char* key) { return parse_tower_elem(doc.at(key).get<std::string>(), tower); };
    auto mat = [&](const char* key) {
        const auto& m = doc.at(key);
        return Mat2::of(parse_tower_elem(m.at(0).at(0).get<std::string>(), tower),
                        parse_tower_elem(m.at(0).at(1).get<std::string>(), tower),
                        parse_tower_elem(m.at(1).at(0).get<std::string>(), tower),
                        parse_tower_elem(m.at(1).at(1).get<std::string>(), tower));
    };

    SplitCertificate cert{alg,
                          spec,
                          tower,
                          elem("xi"),
                          mat("P"),
                          elem("lambda1"),
                          elem("lambda2"),
                          elem("mu"),
                          elem("mu_rate"),
                          mat("F"),
                          doc.at("verified").get<bool>(),
                          doc.at("trdeg").get<int>(),
                          doc.at("notes").get<std::vector<std::string>>()};
    return cert;
}

bool certificates_equal(const SplitCertificate& a, const SplitCertificate& b) {
    if (!(a.algebra.base == b.algebra.base)) return false;
    if (a.algebra.alpha != b.algebra.alpha || a.algebra.beta != b.algebra.beta) return false;
    if (a.spec.a1 != b.spec.a1 || a.spec.a2 != b.spec.a2 || a.spec.a3 != b.spec.a3) return false;
    if (!a.tower->same(*b.tower)) return false;
    if (!a.xi.equals(b.xi)) return false;
    if (!a.lambda1.equals(b.lambda1) || !a.lambda2.equals(b.lambda2)) return false;
    if (!a.mu.equals(b.mu) || !a.mu_rate.equals(b.mu_rate)) return false;
    if (!a.p.equals(b.p) || !a.f.equals(b.f)) return false;
    return a.verified == b.verified && a.trdeg == b.trdeg && a.notes == b.notes;
}

} // namespace diffquat
