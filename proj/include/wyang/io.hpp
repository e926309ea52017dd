#pragma once

#include "wyang/pyramid.hpp"
#include "wyang/yangian.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wyang {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

// {"rows": [{"sign": "+", "length": 2, "left_offset": 1}, ...]}
inline json pyramid_to_json(const SignedPyramid& pi) {
    json rows = json::array();
    for (const auto& r : pi.rows())
        rows.push_back({{"sign", std::string(1, r.sign)}, {"length", r.length}, {"left_offset", r.left_offset}});
    return {{"rows", rows}};
}

inline SignedPyramid pyramid_from_json(const json& j) {
    if (!j.contains("rows") || !j["rows"].is_array()) throw std::invalid_argument("pyramid JSON needs a \"rows\" array");
    std::vector<PyramidRow> rows;
    for (const auto& r : j["rows"]) {
        PyramidRow row;
        const std::string s = r.at("sign").get<std::string>();
        if (s != "+" && s != "-") throw std::invalid_argument("row sign must be \"+\" or \"-\"");
        row.sign = s[0];
        row.length = r.at("length").get<int>();
        row.left_offset = r.at("left_offset").get<int>();
        rows.push_back(row);
    }
    return SignedPyramid::validate(rows);
}

inline json shift_to_json(const ShiftMatrix& s) { return s.s; }

inline ShiftMatrix shift_from_json(const json& j) {
    ShiftMatrix s{j.get<std::vector<std::vector<int>>>()};
    s.validate();
    return s;
}

// {"sigma": [[...]], "level": l}
inline json truncation_to_json(const TruncationSpec& t) { return {{"sigma", shift_to_json(t.sigma)}, {"level", t.level}}; }

inline TruncationSpec truncation_from_json(const json& j) {
    TruncationSpec t{shift_from_json(j.at("sigma")), j.at("level").get<int>()};
    t.validate();
    return t;
}

// A pyramid file holds either rows or a (sigma, level) pair.
inline SignedPyramid load_pyramid(const json& j) {
    if (j.contains("rows")) return pyramid_from_json(j);
    if (j.contains("sigma")) return from_shift_and_level(truncation_from_json(j));
    throw std::invalid_argument("expected a pyramid (\"rows\") or a truncation (\"sigma\", \"level\")");
}

// Terms in monomial order; each term is {"coeff": "p/q", "monomial": [[row, col, exponent], ...]}.
inline json element_to_json(const Element& x, const SuperAlgebra& A) {
    json terms = json::array();
    for (const auto& [m, c] : x.sorted_terms()) {
        json mono = json::array();
        for (std::size_t k = 0; k < m.codes.size();) {
            std::size_t e = k;
            while (e < m.codes.size() && m.codes[e] == m.codes[k]) ++e;
            GeneratorId g = A.generator(m.codes[k]);
            mono.push_back({g.row.str(), g.col.str(), static_cast<int>(e - k)});
            k = e;
        }
        terms.push_back({{"coeff", c.to_fraction()}, {"monomial", mono}});
    }
    return terms;
}

inline Element element_from_json(const json& j, const SuperAlgebra& A) {
    Element out;
    for (const auto& t : j) {
        Element term = Element::scalar(Rational::parse(t.at("coeff").get<std::string>()));
        for (const auto& f : t.at("monomial")) {
            GeneratorId g{BasisIndex::parse(f.at(0).get<std::string>()), BasisIndex::parse(f.at(1).get<std::string>())};
            const int e = f.at(2).get<int>();
            if (e < 1) throw std::invalid_argument("exponent must be positive");
            for (int k = 0; k < e; ++k) term = A.multiply(term, A.unit(g));
        }
        out += term;
    }
    return out;
}

inline json symbol_to_json(const GeneratorSymbol& g) {
    return {{"family", family_name(g.family)}, {"x", g.x}, {"y", g.y}, {"i", g.i}, {"j", g.j}, {"r", g.r}};
}

inline GeneratorSymbol symbol_from_json(const json& j) {
    GeneratorSymbol g;
    g.family = parse_family(j.at("family").get<std::string>());
    g.x = j.at("x").get<int>();
    g.y = j.at("y").get<int>();
    g.i = j.at("i").get<int>();
    g.j = j.at("j").get<int>();
    g.r = j.at("r").get<int>();
    return g;
}

// [{"coeff": "p/q", "word": [symbol, ...]}, ...]
inline json expr_to_json(const YExpr& e) {
    json out = json::array();
    for (const auto& [w, c] : e.terms()) {
        json word = json::array();
        for (const auto& g : w) word.push_back(symbol_to_json(g));
        out.push_back({{"coeff", c.to_fraction()}, {"word", word}});
    }
    return out;
}

inline YExpr expr_from_json(const json& j) {
    YExpr e;
    for (const auto& t : j) {
        Word w;
        for (const auto& g : t.at("word")) w.push_back(symbol_from_json(g));
        e.add(w, Rational::parse(t.at("coeff").get<std::string>()));
    }
    return e;
}

inline json instance_to_json(const RelationInstance& ri) {
    json binding = json::array();
    for (const auto& [n, v] : ri.binding) binding.push_back({n, v});
    return {{"id", ri.id}, {"binding", binding}, {"lhs", expr_to_json(ri.lhs)}, {"rhs", expr_to_json(ri.rhs)},
            {"out_of_window", ri.out_of_window}};
}

inline RelationInstance instance_from_json(const json& j) {
    RelationInstance ri;
    ri.id = j.at("id").get<std::string>();
    for (const auto& b : j.at("binding")) ri.binding.emplace_back(b.at(0).get<std::string>(), b.at(1).get<int>());
    ri.lhs = expr_from_json(j.at("lhs"));
    ri.rhs = expr_from_json(j.at("rhs"));
    ri.out_of_window = j.value("out_of_window", false);
    return ri;
}

// One compact JSON object per line.
inline std::string catalog_jsonl(const std::vector<RelationInstance>& cat) {
    std::ostringstream os;
    for (const auto& ri : cat) os << instance_to_json(ri).dump() << "\n";
    return os.str();
}

}  // namespace wyang
