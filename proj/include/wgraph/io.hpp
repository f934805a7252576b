#pragma once

// Text formats: W-graph JSON and DOT, ideal-table JSON, and the
// c-expansion rendering c_k = b_k - q sum f_{j,k} c_j used by golden files.

#include "wgraph/engine.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgraph {

struct GoldenMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json integer_json(const Integer& v) {
    if (v.fits_int64()) return v.to_int64();
    return v.str();
}

inline Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw ParseError("expected an integer");
}

inline nlohmann::json spec_json(const CoxeterSpec& s) {
    if (s.kind() == CoxeterKind::TypeA) return {{"type", "A"}, {"n", s.param()}};
    return {{"type", "I2"}, {"m", s.param()}};
}

inline CoxeterSpec spec_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "A") return CoxeterSpec::type_a(j.at("n").get<int>());
    if (type == "I2") return CoxeterSpec::dihedral(j.at("m").get<int>());
    throw ParseError("unknown Coxeter type " + type);
}

inline nlohmann::json meta_json(const CoxeterSpec& spec, GenSet J, const IdealMeta& m) {
    nlohmann::json j;
    j["family"] = m.family;
    if (!m.lambda.empty()) j["lambda"] = m.lambda;
    j["J"] = J.to_vector();
    if (!m.variant.empty()) j["variant"] = m.variant;
    if (m.family == "induced" || m.family == "parabolic") j["K"] = m.K.to_vector();
    if (m.family == "onedim") {
        j["J1"] = m.J1.to_vector();
        j["J2"] = m.J2.to_vector();
    }
    j["coxeter"] = spec_json(spec);
    return j;
}

inline void meta_from_json(const nlohmann::json& j, CoxeterSpec& spec, GenSet& J, IdealMeta& m) {
    m.family = j.at("family").get<std::string>();
    if (j.contains("lambda")) m.lambda = j["lambda"].get<std::vector<int>>();
    J = GenSet::from_vector(j.at("J").get<std::vector<int>>());
    if (j.contains("variant")) m.variant = j["variant"].get<std::string>();
    if (j.contains("K")) m.K = GenSet::from_vector(j["K"].get<std::vector<int>>());
    if (j.contains("J1")) m.J1 = GenSet::from_vector(j["J1"].get<std::vector<int>>());
    if (j.contains("J2")) m.J2 = GenSet::from_vector(j["J2"].get<std::vector<int>>());
    spec = spec_from_json(j.at("coxeter"));
}

inline std::string tau_label(GenSet s) {
    std::string out = "{";
    bool first = true;
    for (int x : s.to_vector()) {
        out += (first ? "s" : ",s") + std::to_string(x);
        first = false;
    }
    return out + "}";
}

}  // namespace detail

inline bool operator==(const IdealMeta& a, const IdealMeta& b) {
    return a.family == b.family && a.lambda == b.lambda && a.variant == b.variant && a.K == b.K && a.J1 == b.J1 &&
           a.J2 == b.J2;
}

/// [[exponent, coefficient], ...] in increasing exponent.
inline nlohmann::json laurent_json(const LaurentPoly& f) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : f.terms()) j.push_back({t.exp, detail::integer_json(t.coeff)});
    return j;
}

inline LaurentPoly laurent_from_json(const nlohmann::json& j) {
    try {
        LaurentPoly f;
        for (const auto& t : j) f += LaurentPoly::monomial(detail::integer_from_json(t.at(1)), t.at(0).get<int>());
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

inline std::string tableau_json(const Tableau& t) {
    return nlohmann::json{{"shape", t.shape().parts()}, {"rows", t.rows()}}.dump();
}

inline Tableau parse_tableau_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        return Tableau(Partition(j.at("shape").get<std::vector<int>>()), j.at("rows").get<std::vector<std::vector<int>>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

/// Vertices are numbered from 1 in ideal order; edges are sorted by (u, v).
inline std::string export_json(const WGraphData& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (int v = 0; v < g.size(); ++v)
        j["vertices"].push_back({{"id", v + 1}, {"word", g.words[v]}, {"length", g.lengths[v]}, {"tau", g.tau[v].to_vector()}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges()) j["edges"].push_back({{"u", e.u + 1}, {"v", e.v + 1}, {"mu", detail::integer_json(e.mu)}});
    j["meta"] = detail::meta_json(g.spec, g.J, g.meta);
    return j.dump() + "\n";
}

/// Inverse of export_json. The q- and p-tables are not part of the format.
inline WGraphData parse_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        WGraphData g;
        detail::meta_from_json(j.at("meta"), g.spec, g.J, g.meta);
        const auto& vs = j.at("vertices");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (vs[i].at("id").get<int>() != static_cast<int>(i) + 1) throw ParseError("vertex ids must be 1..d in order");
            g.words.push_back(vs[i].at("word").get<std::vector<int>>());
            g.lengths.push_back(vs[i].value("length", 0));
            g.tau.push_back(GenSet::from_vector(vs[i].at("tau").get<std::vector<int>>()));
        }
        const int d = static_cast<int>(vs.size());
        std::vector<std::vector<MuEntry>> lower(static_cast<std::size_t>(d));
        for (const auto& e : j.at("edges")) {
            int u = e.at("u").get<int>() - 1, v = e.at("v").get<int>() - 1;
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= d || u == v) throw ParseError("edge endpoint out of range");
            lower[v].push_back({u, detail::integer_from_json(e.at("mu"))});
        }
        g.mu = MuTable(d);
        for (int v = 0; v < d; ++v) {
            std::sort(lower[v].begin(), lower[v].end(), [](const MuEntry& a, const MuEntry& b) { return a.y < b.y; });
            g.mu.set_lower(v, std::move(lower[v]));
        }
        g.q = QTable(d);
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
}

/// Undirected graph; vertex label is the id and tau, edge label is mu.
inline std::string export_dot(const WGraphData& g) {
    std::ostringstream os;
    os << "graph wgraph {\n";
    for (int v = 0; v < g.size(); ++v)
        os << "  " << v + 1 << " [label=\"" << v + 1 << ' ' << detail::tau_label(g.tau[v]) << "\"];\n";
    for (const auto& e : g.edges()) os << "  " << e.u + 1 << " -- " << e.v + 1 << " [label=\"" << e.mu << "\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string ideal_json(const IdealTable& t) {
    nlohmann::json j;
    j["meta"] = detail::meta_json(t.spec, t.J, t.meta);
    j["elements"] = nlohmann::json::array();
    for (int k = 0; k < t.size(); ++k) {
        nlohmann::json row;
        for (int s = 1; s <= t.rank(); ++s) row.push_back(t.tab(s, k));
        j["elements"].push_back({{"id", k + 1}, {"word", t.labels[k]}, {"length", t.lengths[k]},
                                 {"descents", t.descents[k].to_vector()}, {"tab", row}});
    }
    return j.dump() + "\n";
}

/// One line "c_h=b_h-qc_j-..." per displayed vertex. order[h] is the vertex
/// shown as number h+1; terms run over earlier displayed vertices in
/// decreasing position. Throws GoldenMismatch if a nonzero entry of q would
/// have to appear after its column.
inline std::vector<std::string> render_c_expansion(const QTable& q, const std::vector<int>& order) {
    const int d = static_cast<int>(order.size());
    std::vector<int> pos(static_cast<std::size_t>(q.size()), -1);
    for (int h = 0; h < d; ++h) pos.at(static_cast<std::size_t>(order[h])) = h;
    auto idx = [](int i) { return i < 10 ? "_" + std::to_string(i) : "_{" + std::to_string(i) + "}"; };
    std::vector<std::string> lines;
    for (int h = 0; h < d; ++h) {
        const int k = order[h];
        std::vector<std::pair<int, LaurentPoly>> terms;
        q.for_column(k, [&](int j, const LaurentPoly& f) {
            if (pos[j] < 0 || pos[j] > h)
                throw GoldenMismatch("display order puts a nonzero q(" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                     ") after its column");
            terms.emplace_back(pos[j], f);
        });
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::string line = "c" + idx(h + 1) + "=b" + idx(h + 1);
        for (const auto& [j, f] : terms) {
            const LaurentPoly qf = f.shifted(1);
            std::string coeff = qf.str();
            if (qf.size() > 1) {
                line += "-(" + coeff + ")";
            } else if (coeff.front() == '-') {
                line += "+" + coeff.substr(1);
            } else {
                line += "-" + coeff;
            }
            line += "c" + idx(j + 1);
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

/// Non-blank lines of a text file.
inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

struct GoldenReport {
    bool ok = true;
    int compared = 0;
    std::vector<std::string> diffs;
};

/// Line-by-line comparison against a fixture file.
inline GoldenReport golden_compare(const std::vector<std::string>& actual, const std::string& path) {
    const auto expected = read_lines(path);
    GoldenReport r;
    const std::size_t n = std::max(actual.size(), expected.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::string a = i < actual.size() ? actual[i] : "<missing>";
        const std::string e = i < expected.size() ? expected[i] : "<missing>";
        ++r.compared;
        if (a != e) r.diffs.push_back("line " + std::to_string(i + 1) + ": expected " + e + ", got " + a);
    }
    r.ok = r.diffs.empty();
    return r;
}

/// Vertex order matching a list of tableaux given as "r1/r2/..." strings.
inline std::vector<int> order_by_tableaux(const IdealTable& t, const Partition& lambda, const std::vector<std::string>& tableaux) {
    std::vector<int> order;
    for (const auto& s : tableaux) {
        int found = -1;
        for (int k = 0; k < t.size(); ++k)
            if (tableau_of(Perm(t.labels[k]), lambda).str() == s) found = k;
        if (found < 0) throw GoldenMismatch("tableau " + s + " is not an ideal element");
        order.push_back(found);
    }
    return order;
}

}  // namespace wgraph
