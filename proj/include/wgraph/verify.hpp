#pragma once

// Oracles that do not share code with the engine recursion: representation
// relations, the bar-involution construction of the c-basis, the seminormal
// form of Specht modules, and structural invariants of computed tables.

#include "wgraph/engine.hpp"

#include <cstdint>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wgraph {

struct SplitFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleEncountered : std::domain_error {
    using std::domain_error::domain_error;
};

/// Square matrix stored by sparse columns.
template <class T>
class SparseMatrix {
public:
    using Column = std::vector<std::pair<int, T>>;

    SparseMatrix() = default;
    explicit SparseMatrix(int n) : cols_(static_cast<std::size_t>(n)) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n);
        for (int i = 0; i < n; ++i) m.cols_[i].push_back({i, T(1)});
        return m;
    }

    int size() const noexcept { return static_cast<int>(cols_.size()); }
    const Column& column(int j) const { return cols_.at(static_cast<std::size_t>(j)); }

    T at(int i, int j) const {
        for (const auto& [r, v] : column(j))
            if (r == i) return v;
        return T();
    }
    /// Adds v to entry (i, j).
    void add(int i, int j, const T& v) {
        auto& c = cols_.at(static_cast<std::size_t>(j));
        auto it = std::lower_bound(c.begin(), c.end(), i, [](const auto& e, int r) { return e.first < r; });
        if (it != c.end() && it->first == i) {
            it->second = it->second + v;
            if (it->second.is_zero()) c.erase(it);
        } else if (!v.is_zero()) {
            c.insert(it, {i, v});
        }
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        const int n = a.size();
        SparseMatrix r(n);
        std::vector<T> acc(static_cast<std::size_t>(n));
        std::vector<char> mark(static_cast<std::size_t>(n), 0);
        std::vector<int> touched;
        for (int j = 0; j < n; ++j) {
            for (const auto& [k, bkj] : b.column(j))
                for (const auto& [i, aik] : a.column(k)) {
                    if (!mark[i]) {
                        mark[i] = 1;
                        touched.push_back(i);
                    }
                    acc[i] = acc[i] + aik * bkj;
                }
            std::sort(touched.begin(), touched.end());
            for (int i : touched) {
                if (!acc[i].is_zero()) r.cols_[j].push_back({i, std::move(acc[i])});
                acc[i] = T();
                mark[i] = 0;
            }
            touched.clear();
        }
        return r;
    }
    friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) {
        for (int j = 0; j < b.size(); ++j)
            for (const auto& [i, v] : b.column(j)) a.add(i, j, v);
        return a;
    }
    /// c * this.
    SparseMatrix scaled(const T& c) const {
        SparseMatrix r(size());
        if (c.is_zero()) return r;
        for (int j = 0; j < size(); ++j)
            for (const auto& [i, v] : column(j)) {
                T x = v * c;
                if (!x.is_zero()) r.cols_[j].push_back({i, std::move(x)});
            }
        return r;
    }
    T trace() const {
        T t;
        for (int j = 0; j < size(); ++j) t = t + at(j, j);
        return t;
    }
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) { return a.cols_ == b.cols_; }

    /// First entry where a and b differ, as (row, column); (-1, -1) if equal.
    friend std::pair<int, int> first_difference(const SparseMatrix& a, const SparseMatrix& b) {
        for (int j = 0; j < a.size(); ++j) {
            if (a.column(j) == b.column(j)) continue;
            for (int i = 0; i < a.size(); ++i)
                if (!(a.at(i, j) == b.at(i, j))) return {i, j};
        }
        return {-1, -1};
    }

private:
    std::vector<Column> cols_;
};

/// One matrix per generator s = 1..rank, in ideal (vertex) order.
template <class T>
struct RepresentationMatrices {
    std::vector<SparseMatrix<T>> gens;
    int rank() const noexcept { return static_cast<int>(gens.size()); }
    int dim() const noexcept { return gens.empty() ? 0 : gens[0].size(); }
    const SparseMatrix<T>& operator[](int s) const { return gens.at(static_cast<std::size_t>(s - 1)); }
};

using RepMatrices = RepresentationMatrices<LaurentPoly>;
using SeminormalRep = RepresentationMatrices<RationalFn>;

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct Report {
    std::vector<Check> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string detail = {}) { checks.push_back({std::move(name), pass, std::move(detail)}); }
    void append(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

namespace detail {

inline std::string gen(int s) { return "s" + std::to_string(s); }
inline std::string cell(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

inline LaurentPoly q_minus_qinv() { return LaurentPoly::q(1) - LaurentPoly::q(-1); }

}  // namespace detail

/// T_s on the c-basis, read off the ideal: for s in D(w) the column is
/// -q^{-1} c_w; otherwise q c_w + sum of mu_{y,w} c_y over y < w with s in
/// D(y), plus c_{sw} when s is a strong ascent.
inline RepMatrices c_basis_matrices(const WGraphData& wg, const IdealTable& t) {
    const int d = t.size();
    RepMatrices m;
    for (int s = 1; s <= t.rank(); ++s) {
        SparseMatrix<LaurentPoly> a(d);
        for (int w = 0; w < d; ++w) {
            const IdealEntry& e = t.entry(s, w);
            if (e.descent()) {
                a.add(w, w, LaurentPoly::monomial(-1, -1));
                continue;
            }
            a.add(w, w, LaurentPoly::q(1));
            if (e.kind == AscentClass::StrongAsc) a.add(e.partner, w, LaurentPoly(1));
            for (const auto& me : wg.mu.lower(w))
                if (t.descents[me.y].contains(s)) a.add(me.y, w, LaurentPoly(me.mu));
        }
        m.gens.push_back(std::move(a));
    }
    return m;
}

/// T_s v = -q^{-1} v if s in tau(v), else q v + sum over u with s in tau(u)
/// of mu(u, v) u.
inline RepMatrices wgraph_matrices(const WGraphData& wg, int rank) {
    const int d = wg.size();
    std::vector<std::vector<std::pair<int, Integer>>> nbrs(static_cast<std::size_t>(d));
    for (const auto& e : wg.edges()) {
        nbrs[e.u].push_back({e.v, e.mu});
        nbrs[e.v].push_back({e.u, e.mu});
    }
    RepMatrices m;
    for (int s = 1; s <= rank; ++s) {
        SparseMatrix<LaurentPoly> a(d);
        for (int v = 0; v < d; ++v) {
            if (wg.tau[v].contains(s)) {
                a.add(v, v, LaurentPoly::monomial(-1, -1));
                continue;
            }
            a.add(v, v, LaurentPoly::q(1));
            for (const auto& [u, mu] : nbrs[v])
                if (wg.tau[u].contains(s)) a.add(u, v, LaurentPoly(mu));
        }
        m.gens.push_back(std::move(a));
    }
    return m;
}

/// T_s^2 = 1 + (q - q^{-1}) T_s for every generator.
template <class T>
Report check_quadratic(const RepresentationMatrices<T>& m) {
    Report r;
    for (int s = 1; s <= m.rank(); ++s) {
        const auto& a = m[s];
        const auto lhs = a * a;
        const auto rhs = SparseMatrix<T>::identity(a.size()) + a.scaled(T(detail::q_minus_qinv()));
        const auto diff = first_difference(lhs, rhs);
        r.add("quadratic(" + detail::gen(s) + ")", diff.first < 0, diff.first < 0 ? "" : "first difference at " + detail::cell(diff.first, diff.second));
    }
    return r;
}

/// T_s T_t T_s ... = T_t T_s T_t ... with m(s,t) factors on each side.
template <class T>
Report check_braid(const RepresentationMatrices<T>& m, const CoxeterSpec& spec, unsigned threads = 1) {
    std::vector<std::pair<int, int>> pairs;
    for (int s = 1; s <= m.rank(); ++s)
        for (int t = s + 1; t <= m.rank(); ++t) pairs.push_back({s, t});
    auto one = [&](int s, int t) {
        const int mst = spec.m(s, t);
        auto l = SparseMatrix<T>::identity(m.dim()), r = l;
        for (int i = 0; i < mst; ++i) {
            l = l * m[i % 2 == 0 ? s : t];
            r = r * m[i % 2 == 0 ? t : s];
        }
        const auto diff = first_difference(l, r);
        return Check{"braid(" + detail::gen(s) + "," + detail::gen(t) + ")", diff.first < 0,
                     diff.first < 0 ? "" : "first difference at " + detail::cell(diff.first, diff.second)};
    };
    Report r;
    if (threads <= 1) {
        for (auto [s, t] : pairs) r.checks.push_back(one(s, t));
        return r;
    }
    std::vector<std::future<Check>> futs;
    for (auto [s, t] : pairs) futs.push_back(std::async(std::launch::async, one, s, t));
    for (auto& f : futs) r.checks.push_back(f.get());
    return r;
}

/// Every generator matrix equals the W-graph template built from (mu, tau).
inline Report wgraphdef_conformance(const WGraphData& wg, const RepMatrices& m) {
    const RepMatrices expect = wgraph_matrices(wg, m.rank());
    Report r;
    for (int s = 1; s <= m.rank(); ++s) {
        const auto diff = first_difference(m[s], expect[s]);
        r.add("conformance(" + detail::gen(s) + ")", diff.first < 0,
              diff.first < 0 ? "" : "column " + std::to_string(diff.second + 1) + " deviates at row " + std::to_string(diff.first + 1));
    }
    return r;
}

/// Quadratic, braid and conformance checks for a built W-graph.
inline Report check_representation(const WGraphData& wg, const IdealTable& t, unsigned threads = 1) {
    const RepMatrices m = c_basis_matrices(wg, t);
    Report r = check_quadratic(m);
    r.append(check_braid(m, t.spec, threads));
    r.append(wgraphdef_conformance(wg, m));
    return r;
}

enum class OracleFamily { Regular, ParabolicPsi, ParabolicPhi };

/// The c-basis by direct construction: bar(b_w) from
/// bar(b_{sw}) = (T_s - (q - q^{-1})) bar(b_w), then the unique split
/// b_w - bar(b_w) = sum (q s_{y,w} - bar(q s_{y,w})) c_y. Returns q_{y,w} = s_{y,w}.
/// Only for ideals whose b-basis action has no correction terms.
inline QTable bar_oracle(const IdealTable& t, OracleFamily family) {
    switch (family) {
        case OracleFamily::Regular:
            if (t.meta.family != "regular") throw std::invalid_argument("bar_oracle: table is not a regular ideal");
            break;
        case OracleFamily::ParabolicPsi:
            if (t.meta.family != "parabolic" || t.meta.variant != "psi") throw std::invalid_argument("bar_oracle: table is not a psi parabolic ideal");
            break;
        case OracleFamily::ParabolicPhi:
            if (t.meta.family != "parabolic" || t.meta.variant != "phi") throw std::invalid_argument("bar_oracle: table is not a phi parabolic ideal");
            break;
    }
    const int d = t.size();
    using Vec = std::vector<LaurentPoly>;
    const LaurentPoly qq = detail::q_minus_qinv();

    // T_s on a vector in b-coordinates.
    auto act = [&](int s, const Vec& v) {
        Vec out(static_cast<std::size_t>(d));
        for (int z = 0; z < d; ++z) {
            if (v[z].is_zero()) continue;
            const IdealEntry& e = t.entry(s, z);
            switch (e.kind) {
                case AscentClass::StrongAsc: out[e.partner] += v[z]; break;
                case AscentClass::StrongDesc:
                    out[e.partner] += v[z];
                    out[z] += qq * v[z];
                    break;
                case AscentClass::WeakAsc: out[z] += v[z].shifted(1); break;
                case AscentClass::WeakDesc: out[z] -= v[z].shifted(-1); break;
            }
        }
        return out;
    };

    std::vector<Vec> barb(static_cast<std::size_t>(d));  // bar(b_w) in b-coordinates
    std::vector<Vec> b_in_c(static_cast<std::size_t>(d)); // b_w in c-coordinates
    QTable out(d);
    for (int w = 0; w < d; ++w) {
        if (w == 0) {
            barb[0].assign(static_cast<std::size_t>(d), LaurentPoly());
            barb[0][0] = LaurentPoly(1);
        } else {
            const auto [s, u] = chosen_descent(t, w, DescentPolicy::First);
            if (s == 0) throw NoStrongDescent("bar_oracle: element " + std::to_string(w + 1) + " has no strong descent");
            Vec v = act(s, barb[u]);
            for (int z = 0; z < d; ++z) v[z] -= qq * barb[u][z];
            barb[w] = std::move(v);
        }
        // r = b_w - bar(b_w), converted to the c-basis through columns y < w.
        Vec rb = barb[w];
        for (auto& x : rb) x = -x;
        rb[w] += LaurentPoly(1);
        Vec rc(static_cast<std::size_t>(d));
        for (int y = 0; y < d; ++y) {
            if (rb[y].is_zero()) continue;
            if (y >= w) throw SplitFailure("b_w - bar(b_w) has a component outside y < w at " + detail::cell(y, w));
            for (int x = 0; x <= y; ++x)
                if (!b_in_c[y][x].is_zero()) rc[x] += b_in_c[y][x] * rb[y];
        }
        std::vector<std::pair<int, LaurentPoly>> col;
        Vec bc(static_cast<std::size_t>(d));
        bc[w] = LaurentPoly(1);
        for (int y = 0; y < w; ++y) {
            const LaurentPoly& r = rc[y];
            if (r.is_zero()) continue;
            if (!r.constant_term().is_zero()) throw SplitFailure("r" + detail::cell(y, w) + " = " + r.str() + " has a nonzero constant term");
            std::vector<std::pair<int, Integer>> pos;
            for (const auto& term : r.terms())
                if (term.exp > 0) pos.emplace_back(term.exp, term.coeff);
            const LaurentPoly qs = LaurentPoly::from_pairs(pos);
            if (!(qs - qs.bar() == r)) throw SplitFailure("r" + detail::cell(y, w) + " = " + r.str() + " is not antisymmetric");
            bc[y] = qs;
            col.emplace_back(y, qs.exact_div_q());
        }
        b_in_c[w] = std::move(bc);
        out.set_column(w, std::move(col));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seminormal form.

/// p1(d; q) = (q^2 - 1) / (q - q^{2d+1}).
inline RationalFn seminormal_p1(int d) {
    const LaurentPoly den = LaurentPoly::q(1) - LaurentPoly::q(2 * d + 1);
    if (den.is_zero()) throw PoleEncountered("p1 has a pole at d = 0");
    return RationalFn(LaurentPoly::q(2) - LaurentPoly(1), den);
}

/// p2(d; q) = (1 - q^{2d+2}) / (q - q^{2d+1}).
inline RationalFn seminormal_p2(int d) {
    const LaurentPoly den = LaurentPoly::q(1) - LaurentPoly::q(2 * d + 1);
    if (den.is_zero()) throw PoleEncountered("p2 has a pole at d = 0");
    return RationalFn(LaurentPoly(1) - LaurentPoly::q(2 * d + 2), den);
}

/// Axial distance (x1 - y1) - (x2 - y2) of i and i+1 in t.
inline int axial_distance(const Tableau& t, int i) {
    return (t.row_of(i) - t.col_of(i)) - (t.row_of(i + 1) - t.col_of(i + 1));
}

/// Seminormal matrices on the basis b'_t, t in enumerate_syt(lambda) order.
///
/// The coefficients are p1(-d), p2(-d) with d = axial_distance(t, i): with
/// the opposite sign the matrices violate the braid relations.
inline SeminormalRep seminormal_matrices(const Partition& lambda) {
    const auto tabs = enumerate_syt(lambda);
    const int d = static_cast<int>(tabs.size());
    const int n = lambda.n();
    SeminormalRep rep;
    for (int i = 1; i < n; ++i) {
        SparseMatrix<RationalFn> a(d);
        for (int c = 0; c < d; ++c) {
            const Tableau& t = tabs[c];
            switch (classify(t, i)) {
                case AscentClass::WeakDesc: a.add(c, c, RationalFn(LaurentPoly::monomial(-1, -1))); break;
                case AscentClass::WeakAsc: a.add(c, c, RationalFn(LaurentPoly::q(1))); break;
                default: {
                    const int dist = -axial_distance(t, i);
                    std::vector<int> sw(static_cast<std::size_t>(n));
                    for (int v = 1; v <= n; ++v) sw[v - 1] = v == i ? i + 1 : v == i + 1 ? i : v;
                    const Tableau st = t.permuted(Perm(sw));
                    int r = -1;
                    for (int k = 0; k < d; ++k)
                        if (tabs[k] == st) r = k;
                    if (r < 0) throw std::logic_error("s_i t is not standard");
                    a.add(c, c, seminormal_p1(dist));
                    a.add(r, c, seminormal_p2(dist));
                }
            }
        }
        rep.gens.push_back(std::move(a));
    }
    return rep;
}

/// All words of length <= max_len over 1..rank, then `random_count`
/// pseudorandom words of length <= random_len from a fixed seed.
inline std::vector<std::vector<int>> default_words(int rank, int max_len = 4, int random_count = 64, int random_len = 10,
                                                   std::uint32_t seed = 0x5eed1234u) {
    std::vector<std::vector<int>> out{{}};
    if (rank <= 0) return out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (static_cast<int>(out[i].size()) == max_len) continue;
        for (int s = 1; s <= rank; ++s) {
            auto w = out[i];
            w.push_back(s);
            out.push_back(std::move(w));
        }
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(1, random_len), gen(1, rank);
    for (int k = 0; k < random_count; ++k) {
        std::vector<int> w(static_cast<std::size_t>(len(rng)));
        for (int& s : w) s = gen(rng);
        out.push_back(std::move(w));
    }
    return out;
}

/// Trace of T_{w_1} ... T_{w_k} in both representations, as rational functions.
inline Report char_compare(const RepMatrices& a, const SeminormalRep& b, const std::vector<std::vector<int>>& words) {
    Report r;
    if (a.dim() != b.dim() || a.rank() != b.rank()) {
        r.add("dimensions", false, std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
        return r;
    }
    int failures = 0;
    for (const auto& w : words) {
        auto pa = SparseMatrix<LaurentPoly>::identity(a.dim());
        auto pb = SparseMatrix<RationalFn>::identity(b.dim());
        for (int s : w) {
            pa = pa * a[s];
            pb = pb * b[s];
        }
        const RationalFn ta(pa.trace()), tb = pb.trace();
        if (!(ta == tb)) {
            std::string name;
            for (int s : w) name += (name.empty() ? "" : ",") + std::to_string(s);
            r.add("trace(" + name + ")", false, ta.str() + " vs " + tb.str());
            ++failures;
        }
    }
    r.add("characters(" + std::to_string(words.size()) + " words)", failures == 0,
          failures ? std::to_string(failures) + " words disagree" : "");
    return r;
}

// ---------------------------------------------------------------------------
// Structural invariants.

struct InvariantOptions {
    bool parity = false;           // regular ideals: mu != 0 only for even l(w)-l(y)-1
    bool singly_generated = false; // check that y < sw implies y <= w for weak ascents
    bool choice_audit = true;
};

/// Checks on a built W-graph that hold for every W-graph ideal.
template <CoxeterGroup G>
Report structural_invariants(const G& g, const IdealTable& t, const WGraphData& wg, const InvariantOptions& opt = {}) {
    Report r;
    const int d = t.size();
    std::vector<typename G::element_type> el;
    for (const auto& lab : t.labels) el.push_back(g.from_label(lab));

    std::string deg, supp, weak;
    wg.q.for_each([&](int y, int w, const LaurentPoly& f) {
        if (deg.empty() && (!f.in_A_plus() || f.max_exp() > t.lengths[w] - t.lengths[y] - 1))
            deg = "q" + detail::cell(y, w) + " = " + f.str();
        if (supp.empty() && !g.bruhat_leq(el[y], el[w])) supp = "q" + detail::cell(y, w) + " nonzero but not y < w";
        if (weak.empty())
            for (int s = 1; s <= t.rank(); ++s)
                if (t.entry(s, w).kind == AscentClass::WeakDesc && !t.descents[y].contains(s))
                    weak = "s" + std::to_string(s) + " weak descent of " + std::to_string(w + 1) + " but not a descent of " + std::to_string(y + 1);
    });
    r.add("degree-bound", deg.empty(), deg);
    r.add("bruhat-support", supp.empty(), supp);
    r.add("weak-descent-triangularity", weak.empty(), weak);

    std::string base, sa;
    for (int w = 0; w < d; ++w)
        for (int s = 1; s <= t.rank(); ++s) {
            const IdealEntry& e = t.entry(s, w);
            if (e.kind != AscentClass::StrongAsc) continue;
            if (base.empty() && !(wg.q.at(w, e.partner) == LaurentPoly(1))) base = "q" + detail::cell(w, e.partner);
            for (int y = w + 1; y < d && sa.empty(); ++y) {
                if (!t.descents[y].contains(s)) continue;
                const Integer mu = wg.mu(y, w);
                if (y == e.partner ? !(mu == Integer(1)) : !mu.is_zero()) sa = "s" + std::to_string(s) + " at " + detail::cell(y, w);
            }
        }
    r.add("base-row", base.empty(), base);
    r.add("strong-ascent-edges", sa.empty(), sa);

    if (opt.parity) {
        std::string par;
        for (const auto& e : wg.edges())
            if (par.empty() && (t.lengths[e.v] - t.lengths[e.u] - 1) % 2 != 0) par = "mu" + detail::cell(e.u, e.v);
        r.add("mu-parity", par.empty(), par);
    }
    if (opt.singly_generated) {
        std::string sd;
        for (int w = 0; w < d && sd.empty(); ++w)
            for (int s = 1; s <= t.rank() && sd.empty(); ++s) {
                if (t.entry(s, w).kind != AscentClass::WeakAsc) continue;
                const auto sw = g.left_mul(s, el[w]);
                for (int y = 0; y < d && sd.empty(); ++y)
                    if (!(el[y] == sw) && g.bruhat_leq(el[y], sw) && !g.bruhat_leq(el[y], el[w]))
                        sd = "y=" + std::to_string(y + 1) + " below s" + std::to_string(s) + "w for w=" + std::to_string(w + 1);
            }
        r.add("weak-ascent-interval", sd.empty(), sd);
    }
    if (opt.choice_audit) {
        try {
            const auto audit = choice_independence_audit(t);
            r.add("choice-independence", true, std::to_string(audit.entries) + " entries");
        } catch (const ChoiceDependence& e) {
            r.add("choice-independence", false, e.what());
        }
    }
    if (wg.p) {
        // (1 - qP)(1 + qQ) = 1 as matrices.
        SparseMatrix<LaurentPoly> P(d), Q(d);
        wg.q.for_each([&](int y, int w, const LaurentPoly& f) { Q.add(y, w, f.shifted(1)); });
        wg.p->for_each([&](int y, int w, const LaurentPoly& f) { P.add(y, w, -f.shifted(1)); });
        const auto I = SparseMatrix<LaurentPoly>::identity(d);
        const auto diff = first_difference((I + P) * (I + Q), I);
        r.add("p-q-inverse", diff.first < 0, diff.first < 0 ? "" : "at " + detail::cell(diff.first, diff.second));
    }
    return r;
}

}  // namespace wgraph
