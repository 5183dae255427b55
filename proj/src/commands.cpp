#include "diffquat/commands.hpp"

#include <fstream>
#include <sstream>

#include "diffquat/criteria.hpp"
#include "diffquat/standard.hpp"

namespace diffquat {

namespace {

EngineOptions engine_options(const CliFlags& flags) {
    EngineOptions opt;
    opt.n_max = flags.n_max;
    opt.degree_bound = flags.degree_bound;
    opt.budget = flags.budget;
    return opt;
}

void write_out(const CliFlags& flags, const nlohmann::ordered_json& doc) {
    if (flags.out_path.empty()) return;
    std::ofstream out(flags.out_path);
    if (!out) throw MathError("cannot write to " + flags.out_path);
    out << doc.dump(2) << "\n";
}

std::string tower_summary(const TowerPtr& tower) {
    std::ostringstream os;
    if (tower->height() == 0) return "base field only";
    for (int i = 0; i < tower->height(); ++i) {
        const TowerStep& st = tower->step(i);
        if (i) os << "; ";
        switch (st.kind) {
            case StepKind::Radical:
                os << "radical " << st.name << " with " << st.name << "^" << st.n << " = "
                   << st.f.to_string();
                break;
            case StepKind::Primitive:
                os << "primitive " << st.name << " with " << st.name << "' = " << st.w.to_string();
                break;
            case StepKind::HyperExp:
                os << "hyperexponential " << st.name << " with " << st.name << "'/" << st.name
                   << " = " << st.w.to_string();
                break;
            case StepKind::RiccatiGen:
                os << "riccati generator " << st.name;
                break;
        }
    }
    return os.str();
}

} // namespace

CommandResult run_split(const ProblemSpec& spec, const CliFlags& flags) {
    SplitCertificate cert =
        construct_certificate(spec.algebra(), spec.derivation, spec.hints, engine_options(flags));
    nlohmann::ordered_json doc = emit_certificate_json(cert);
    write_out(flags, doc);
    CommandResult res;
    if (flags.json) {
        res.output = doc.dump(2);
    } else {
        std::ostringstream os;
        os << "split certificate\n";
        os << "  tower: " << tower_summary(cert.tower) << "\n";
        os << "  lambda1 = " << cert.lambda1.to_string() << "\n";
        os << "  lambda2 = " << cert.lambda2.to_string() << "\n";
        os << "  mu = " << cert.mu.to_string() << " with mu'/mu = " << cert.mu_rate.to_string()
           << "\n";
        os << "  det F = " << cert.f.det().to_string() << "\n";
        os << "  verified: " << (cert.verified ? "true" : "false") << "\n";
        os << "  transcendence degree: " << cert.trdeg << "\n";
        for (const auto& n : cert.notes) os << "  note: " << n << "\n";
        res.output = os.str();
    }
    res.exit_code = cert.verified ? 0 : 1;
    return res;
}

CommandResult run_verify(const std::string& certificate_path, const CliFlags& flags) {
    std::ifstream in(certificate_path);
    if (!in) return {2, "cannot open certificate file: " + certificate_path + "\n"};
    nlohmann::ordered_json doc;
    SplitCertificate cert = [&] {
        try {
            in >> doc;
            return parse_certificate_json(doc);
        } catch (const nlohmann::json::exception& e) {
            throw MathError(std::string("malformed certificate JSON: ") + e.what());
        }
    }();
    CertVerifyReport rep = verify_certificate(cert);
    nlohmann::ordered_json out;
    out["pass"] = rep.pass;
    out["det_nonzero"] = rep.det_nonzero;
    out["det_is_one"] = rep.det_is_one;
    out["first_failure"] = rep.first_failure;
    write_out(flags, out);
    CommandResult res;
    if (flags.json) {
        res.output = out.dump(2);
    } else {
        std::ostringstream os;
        os << (rep.pass ? "PASS" : "FAIL") << ": F' = PF "
           << (rep.pass ? "holds entrywise" : rep.first_failure) << "; det F "
           << (rep.det_is_one ? "= 1" : (rep.det_nonzero ? "nonzero" : "= 0")) << "\n";
        res.output = os.str();
    }
    res.exit_code = rep.pass ? 0 : 1;
    return res;
}

CommandResult run_riccati(const ProblemSpec& spec, const CliFlags& flags) {
    QuatAlgebra alg = spec.algebra();
    XiResolution xr = resolve_xi(alg, Tower::make_base(alg.base));
    RiccatiEq eq = build_riccati(alg, spec.derivation, xr.xi);

    nlohmann::ordered_json doc;
    doc["equation"] = eq.to_string();
    std::string status = "complete";
    std::vector<std::string> sol_strings;
    bool family = false;
    std::array<std::string, 2> family_reps;

    auto b0 = eq.a0.as_base();
    auto b1 = eq.a1c.as_base();
    auto b2 = eq.a2c.as_base();
    bool base_t1 = alg.base.t_prime == RatFunc(Rat(1));
    if (b0 && b1 && b2 && base_t1) {
        RiccatiSolutionSet rs =
            riccati_rational_solutions(alg.base, {*b0, *b1, *b2}, flags.budget);
        for (const RatFunc& x : rs.isolated) sol_strings.push_back(x.to_string());
        family = rs.has_family;
        if (family) {
            family_reps[0] = rs.family_reps[0].to_string();
            family_reps[1] = rs.family_reps[1].to_string();
        }
        if (rs.status == SolveStatus::BestEffort) status = "best-effort";
        if (rs.status == SolveStatus::Exhausted) status = "inconclusive";
    } else {
        status = "inconclusive";
        doc["reason"] = base_t1 ? "coefficients leave the base field"
                                : "rational search needs the base derivation t' = 1";
    }
    if (auto pr = riccati_pattern_solutions(alg, spec.derivation, xr.tower, eq)) {
        doc["radical_pair"] = {pr->plus.to_string(), pr->minus.to_string()};
    }
    doc["solutions"] = sol_strings;
    doc["family"] = family;
    if (family) doc["family_representatives"] = {family_reps[0], family_reps[1]};
    doc["status"] = status;
    write_out(flags, doc);

    CommandResult res;
    if (flags.json) {
        res.output = doc.dump(2);
    } else {
        std::ostringstream os;
        os << "equation: " << eq.to_string() << "\n";
        os << "rational solutions: [";
        for (std::size_t i = 0; i < sol_strings.size(); ++i) os << (i ? ", " : "") << sol_strings[i];
        os << "]\n";
        if (family)
            os << "one-parameter family with representatives " << family_reps[0] << ", "
               << family_reps[1] << "\n";
        if (doc.contains("radical_pair"))
            os << "radical pair: " << doc["radical_pair"][0].get<std::string>() << ", "
               << doc["radical_pair"][1].get<std::string>() << "\n";
        os << "status: " << status << "\n";
        res.output = os.str();
    }
    res.exit_code = 0;
    return res;
}

CommandResult run_standard(const ProblemSpec& spec, const CliFlags& flags) {
    StandardReport rep = standard_analyze(spec.algebra(), spec.derivation, engine_options(flags));
    nlohmann::ordered_json doc;
    std::string status;
    switch (rep.status) {
        case StandardReport::Status::Standard: status = "standard"; break;
        case StandardReport::Status::NotStandard: status = "not-standard"; break;
        case StandardReport::Status::Inconclusive: status = "inconclusive"; break;
    }
    doc["status"] = status;
    doc["detail"] = rep.detail;
    if (rep.pair) {
        doc["pair"] = {rep.pair->first.to_string(), rep.pair->second.to_string()};
    }
    write_out(flags, doc);
    CommandResult res;
    if (flags.json) {
        res.output = doc.dump(2);
    } else {
        std::ostringstream os;
        os << "standard derivation analysis: " << status << "\n";
        if (rep.pair)
            os << "  pair: " << rep.pair->first.to_string() << "  |  "
               << rep.pair->second.to_string() << "\n";
        os << "  " << rep.detail << "\n";
        res.output = os.str();
    }
    res.exit_code = rep.status == StandardReport::Status::NotStandard ? 1 : 0;
    return res;
}

CommandResult run_criteria(const ProblemSpec& spec, const CliFlags& flags) {
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    bool negative = false;
    bool inconclusive = false;

    bool t1 = spec.base.t_prime == RatFunc(Rat(1));
    bool shape_au = spec.derivation.a2.is_zero() && spec.derivation.a3.is_zero();

    if (spec.base.t_prime.is_zero() && !spec.derivation.is_zero()) {
        nlohmann::ordered_json v;
        v["kind"] = "note";
        v["text"] = "zero base derivation with a nonzero inner part; division-algebra "
                    "criteria are out of scope for this toolkit";
        verdicts.push_back(std::move(v));
    }

    if (t1 && shape_au && spec.alpha.is_polynomial()) {
        FiniteSplitSearchResult res = finite_split_search(
            spec.alpha.num(), spec.derivation.a1, flags.degree_bound, flags.n_max, flags.budget);
        if (res.status == FiniteSplitSearchResult::Status::Found) {
            nlohmann::ordered_json v;
            v["kind"] = "finitely_split";
            v["witness"] = {{"gamma0", res.witness->gamma0.to_string()},
                            {"gamma1", res.witness->gamma1.to_string()},
                            {"n", res.witness->n}};
            v["evidence"] = "a = theta'/(n xi theta) for theta = (gamma0 + xi gamma1)/(gamma0 - xi gamma1)";
            verdicts.push_back(std::move(v));
        } else {
            nlohmann::ordered_json v;
            v["kind"] = "search_exhausted";
            v["tried"] = res.tried;
            verdicts.push_back(std::move(v));
            inconclusive = true;
        }

        if (spec.alpha.num().degree() % 2 == 1) {
            NonsplitReport rep = nonsplit_algebraic_check(spec.alpha.num(), spec.derivation.a1,
                                                          flags.require_both_conditions);
            nlohmann::ordered_json v;
            if (rep.not_split) {
                v["kind"] = "not_split_by_algebraic";
                v["condition"] = std::string(1, rep.condition);
                negative = true;
            } else {
                v["kind"] = "no_verdict";
            }
            v["evidence"] = rep.evidence;
            verdicts.push_back(std::move(v));
        }
    } else if (!spec.base.t_prime.is_zero()) {
        nlohmann::ordered_json v;
        v["kind"] = "no_verdict";
        v["evidence"] = "finite-splitting criteria apply to d = d_(u,v) + ad(a*u) with "
                        "polynomial alpha over t' = 1";
        verdicts.push_back(std::move(v));
    }

    nlohmann::ordered_json doc;
    doc["verdicts"] = verdicts;
    doc["status"] = negative ? "negative" : (inconclusive ? "inconclusive" : "done");
    write_out(flags, doc);

    CommandResult res;
    if (flags.json) {
        res.output = doc.dump(2);
    } else {
        std::ostringstream os;
        os << "criteria verdicts:\n";
        for (const auto& v : verdicts) {
            os << "  - " << v.at("kind").get<std::string>();
            if (v.contains("condition")) os << " via condition (" << v["condition"].get<std::string>() << ")";
            if (v.contains("evidence")) os << ": " << v["evidence"].get<std::string>();
            if (v.contains("text")) os << ": " << v["text"].get<std::string>();
            if (v.contains("witness"))
                os << " [gamma0 = " << v["witness"]["gamma0"].get<std::string>() << ", gamma1 = "
                   << v["witness"]["gamma1"].get<std::string>() << ", n = "
                   << v["witness"]["n"].get<int>() << "]";
            os << "\n";
        }
        os << "status: " << doc["status"].get<std::string>() << "\n";
        res.output = os.str();
    }
    res.exit_code = negative ? 1 : 0;
    return res;
}

CommandResult run_command(const std::string& cmd, const std::string& path, const CliFlags& flags) {
    try {
        if (cmd == "verify") return run_verify(path, flags);
        ProblemSpec spec = [&] {
            try {
                return load_problem(path);
            } catch (const MathError& e) {
                throw ParseError(e.what(), 0);
            }
        }();
        if (cmd == "split") return run_split(spec, flags);
        if (cmd == "riccati") return run_riccati(spec, flags);
        if (cmd == "standard") return run_standard(spec, flags);
        if (cmd == "criteria") return run_criteria(spec, flags);
        return {2, "unknown command: " + cmd + "\n"};
    } catch (const ParseError& e) {
        return {2, std::string("input error: ") + e.what() + "\n"};
    } catch (const MathError& e) {
        return {1, std::string("error: ") + e.what() + "\n"};
    }
}

} // namespace diffquat
