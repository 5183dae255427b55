#include "diffquat/problem.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "diffquat/expr.hpp"

namespace diffquat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s, int line_no) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    if (!s.empty() && s.front() != '"') return s; // tolerate unquoted values
    throw MathError("unterminated quoted value on line " + std::to_string(line_no));
}

Hints::RadicalHint parse_radical_hint(const std::string& body, int line_no) {
    auto colon = body.find(':');
    if (colon == std::string::npos)
        throw MathError("radical hint needs the form radical:n:expr (line " +
                        std::to_string(line_no) + ")");
    std::string n_str = body.substr(0, colon);
    int n = 0;
    try {
        n = std::stoi(n_str);
    } catch (...) {
        throw MathError("radical hint index is not an integer (line " + std::to_string(line_no) + ")");
    }
    if (n < 2) throw MathError("radical hint index must be at least 2 (line " + std::to_string(line_no) + ")");
    return {n, parse_ratfunc(body.substr(colon + 1))};
}

} // namespace

ProblemSpec parse_problem_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::vector<std::string> hint_lines;
    std::vector<std::string> seen_sections;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw MathError("malformed section header on line " + std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            seen_sections.push_back(section);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw MathError("expected key = \"value\" on line " + std::to_string(line_no));
        if (section.empty())
            throw MathError("key outside of any section on line " + std::to_string(line_no));
        std::string key = trim(line.substr(0, eq));
        std::string value = unquote(trim(line.substr(eq + 1)), line_no);
        if (section == "hints" && key == "hint") {
            hint_lines.push_back(value);
        } else {
            kv[section + "." + key] = value;
        }
    }

    auto require_section = [&](const std::string& name) {
        for (const auto& s : seen_sections)
            if (s == name) return;
        throw MathError("missing section [" + name + "]");
    };
    require_section("field");
    require_section("algebra");
    require_section("derivation");

    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw MathError("missing key " + key);
        return it->second;
    };

    ProblemSpec spec;
    try {
        spec.base.t_prime = parse_ratfunc(get("field.t_prime"));
        spec.alpha = parse_ratfunc(get("algebra.alpha"));
        spec.beta = parse_ratfunc(get("algebra.beta"));
        spec.derivation.a1 = parse_ratfunc(get("derivation.a1"));
        spec.derivation.a2 = parse_ratfunc(get("derivation.a2"));
        spec.derivation.a3 = parse_ratfunc(get("derivation.a3"));
    } catch (const ParseError& e) {
        throw MathError(std::string("expression error: ") + e.what());
    }
    if (spec.alpha.is_zero()) throw MathError("alpha must be nonzero");
    if (spec.beta.is_zero()) throw MathError("beta must be nonzero");

    for (const std::string& h : hint_lines) {
        auto colon = h.find(':');
        std::string kind = colon == std::string::npos ? h : h.substr(0, colon);
        std::string body = colon == std::string::npos ? "" : h.substr(colon + 1);
        if (kind == "radical") {
            spec.hints.radicals.push_back(parse_radical_hint(body, 0));
        } else if (kind == "primitive") {
            spec.hints.primitives.push_back(parse_ratfunc(body));
        } else if (kind == "hyperexp") {
            spec.hints.hyperexps.push_back(parse_ratfunc(body));
        } else if (kind == "riccati" && body == "auto") {
            spec.hints.riccati_auto = true;
        } else {
            throw MathError("unknown hint directive: " + h);
        }
    }
    return spec;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MathError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

} // namespace diffquat
