#pragma once

// The W-graph engine: the q-polynomial table of an ideal, its edge weights,
// the inverse p-table, KL polynomial recovery and cell decomposition.
//
// Columns are evaluated in order of length. A column only reads the column of
// its strong-descent partner (one length lower) and edge weights of strictly
// shorter elements, so all columns of one length can run concurrently.

#include "wgraph/ideal.hpp"
#include "wgraph/laurent.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace wgraph {

struct NoStrongDescent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ChoiceDependence : std::logic_error {
    using std::logic_error::logic_error;
};

struct NotAPolynomial : std::domain_error {
    using std::domain_error::domain_error;
};

/// Strictly upper-triangular sparse table of Laurent polynomials, stored by
/// column. Column k holds the nonzero entries (j, f_{j,k}) with j < k in
/// increasing j.
class PolyTable {
public:
    PolyTable() = default;
    explicit PolyTable(int d) : cols_(static_cast<std::size_t>(d)) {}

    int size() const noexcept { return static_cast<int>(cols_.size()); }

    /// Entry (j, k); zero when absent.
    LaurentPoly at(int j, int k) const {
        const Column& c = col(k);
        auto it = std::lower_bound(c.rows.begin(), c.rows.end(), j);
        if (it == c.rows.end() || *it != j) return {};
        return c.poly(static_cast<std::size_t>(it - c.rows.begin()));
    }
    bool contains(int j, int k) const {
        const Column& c = col(k);
        return std::binary_search(c.rows.begin(), c.rows.end(), j);
    }

    /// Row indices of the nonzero entries in column k.
    const std::vector<std::int32_t>& support(int k) const { return col(k).rows; }

    /// f(j, poly) for every nonzero entry of column k, in increasing j.
    template <class F>
    void for_column(int k, F&& f) const {
        const Column& c = col(k);
        for (std::size_t i = 0; i < c.rows.size(); ++i) f(static_cast<int>(c.rows[i]), c.poly(i));
    }
    /// f(j, k, poly) for every nonzero entry, column by column.
    template <class F>
    void for_each(F&& f) const {
        for (int k = 0; k < size(); ++k) for_column(k, [&](int j, const LaurentPoly& p) { f(j, k, p); });
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : cols_) n += c.rows.size();
        return n;
    }

    /// Replace column k. Entries must have j < k; zero polynomials are dropped.
    void set_column(int k, std::vector<std::pair<int, LaurentPoly>> entries) {
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Column c;
        for (auto& [j, p] : entries) {
            if (p.is_zero()) continue;
            if (j < 0 || j >= k) throw std::out_of_range("PolyTable entries must lie strictly above the diagonal");
            if (!c.rows.empty() && c.rows.back() == j) throw std::invalid_argument("duplicate PolyTable entry");
            c.rows.push_back(j);
            for (const auto& t : p.terms()) c.push_term(t.exp, t.coeff);
            c.start.push_back(static_cast<std::uint32_t>(c.coefs.size()));
        }
        cols_.at(static_cast<std::size_t>(k)) = std::move(c);
    }
    void clear_column(int k) { cols_.at(static_cast<std::size_t>(k)) = Column{}; }

    friend bool operator==(const PolyTable& a, const PolyTable& b) { return a.cols_ == b.cols_; }

private:
    friend struct EngineAccess;

    // Packed storage: term i of entry r lives at [start[r], start[r+1]).
    // Coefficients outside int32 are kept in `big`, marked by kBig.
    struct Column {
        static constexpr std::int32_t kBig = INT32_MIN;

        std::vector<std::int32_t> rows;
        std::vector<std::uint32_t> start{0};
        std::vector<std::int8_t> exps;
        std::vector<std::int32_t> coefs;
        std::vector<std::pair<std::uint32_t, Integer>> big;  // by term index

        void reserve(std::size_t entries, std::size_t terms) {
            rows.reserve(entries);
            start.reserve(entries + 1);
            exps.reserve(terms);
            coefs.reserve(terms);
        }
        void push_term(int e, const Integer& c) {
            if (e < INT8_MIN || e > INT8_MAX) throw std::overflow_error("q-table exponent " + std::to_string(e) + " out of range");
            exps.push_back(static_cast<std::int8_t>(e));
            if (c.fits_int64()) {
                const std::int64_t v = c.to_int64();
                if (v > INT32_MIN && v <= INT32_MAX) {
                    coefs.push_back(static_cast<std::int32_t>(v));
                    return;
                }
            }
            big.emplace_back(static_cast<std::uint32_t>(coefs.size()), c);
            coefs.push_back(kBig);
        }
        Integer coef(std::uint32_t i) const {
            if (coefs[i] != kBig) return Integer(coefs[i]);
            auto it = std::lower_bound(big.begin(), big.end(), i, [](const auto& b, std::uint32_t x) { return b.first < x; });
            return it->second;
        }
        LaurentPoly poly(std::size_t r) const {
            std::vector<std::pair<int, Integer>> pairs;
            for (std::uint32_t t = start[r]; t < start[r + 1]; ++t) pairs.emplace_back(exps[t], coef(t));
            return LaurentPoly::from_pairs(pairs);
        }
        friend bool operator==(const Column&, const Column&) = default;
    };

    const Column& col(int k) const { return cols_.at(static_cast<std::size_t>(k)); }

    std::vector<Column> cols_;
};

using QTable = PolyTable;
using PTable = PolyTable;

/// A nonzero edge weight mu(y, x) with y < x.
struct MuEntry {
    std::int32_t y;
    Integer mu;
    friend bool operator==(const MuEntry&, const MuEntry&) = default;
};

/// Edge weights, stored once per unordered pair under the larger index.
class MuTable {
public:
    MuTable() = default;
    explicit MuTable(int d) : lower_(static_cast<std::size_t>(d)) {}

    int size() const noexcept { return static_cast<int>(lower_.size()); }
    const std::vector<MuEntry>& lower(int x) const { return lower_.at(static_cast<std::size_t>(x)); }
    void set_lower(int x, std::vector<MuEntry> entries) { lower_.at(static_cast<std::size_t>(x)) = std::move(entries); }

    /// Symmetric lookup; zero on the diagonal and for absent pairs.
    Integer operator()(int i, int j) const {
        if (i == j) return {};
        if (i > j) std::swap(i, j);
        const auto& l = lower(j);
        auto it = std::lower_bound(l.begin(), l.end(), i, [](const MuEntry& e, int y) { return e.y < y; });
        return (it != l.end() && it->y == i) ? it->mu : Integer();
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& l : lower_) n += l.size();
        return n;
    }
    /// Largest |mu| over all edges; zero for an edgeless graph.
    Integer max_abs() const {
        Integer m;
        for (const auto& l : lower_)
            for (const auto& e : l)
                if (abs(e.mu) > m) m = abs(e.mu);
        return m;
    }

    friend bool operator==(const MuTable&, const MuTable&) = default;

private:
    std::vector<std::vector<MuEntry>> lower_;
};

enum class DescentPolicy { First, Last };

struct EngineOptions {
    DescentPolicy policy = DescentPolicy::First;
    unsigned threads = 1;
    /// When false only edge weights survive: each column is released once the
    /// next length level is done. Needed for ideals whose q-table does not fit.
    bool keep_q = true;
};

/// Strong descent s of w_k with s w_k = w_m chosen by the policy.
inline std::pair<int, int> chosen_descent(const IdealTable& t, int k, DescentPolicy policy) {
    int best = 0;
    for (int s = 1; s <= t.rank(); ++s)
        if (t.entry(s, k).kind == AscentClass::StrongDesc) {
            best = s;
            if (policy == DescentPolicy::First) break;
        }
    if (best == 0) return {0, -1};
    return {best, t.entry(best, k).partner};
}

struct EngineAccess {
    using Column = PolyTable::Column;

    // Per-thread dense accumulator over row indices.
    struct Accumulator {
        std::vector<std::vector<Integer>> slot;
        std::vector<char> mark;
        std::vector<std::int32_t> touched;

        explicit Accumulator(int d) : slot(static_cast<std::size_t>(d)), mark(static_cast<std::size_t>(d), 0) {}

        void add(int j, int e, const Integer& c) {
            if (!mark[j]) {
                mark[j] = 1;
                touched.push_back(j);
            }
            auto& v = slot[j];
            if (static_cast<int>(v.size()) <= e) v.resize(static_cast<std::size_t>(e) + 1);
            v[e] += c;
        }

        Column flush() {
            std::sort(touched.begin(), touched.end());
            std::size_t entries = 0, terms = 0;
            for (std::int32_t j : touched) {
                std::size_t n = 0;
                for (const auto& c : slot[j]) n += !c.is_zero();
                entries += n > 0;
                terms += n;
            }
            Column c;
            c.reserve(entries, terms);
            for (std::int32_t j : touched) {
                auto& v = slot[j];
                bool any = false;
                for (std::size_t e = 0; e < v.size(); ++e)
                    if (!v[e].is_zero()) {
                        c.push_term(static_cast<int>(e), v[e]);
                        any = true;
                    }
                if (any) {
                    c.rows.push_back(j);
                    c.start.push_back(static_cast<std::uint32_t>(c.coefs.size()));
                }
                v.clear();
                mark[j] = 0;
            }
            touched.clear();
            return c;
        }
    };

    // Column k from column m = s w_k, by the three-case recursion. Every term
    // is driven by an entry (x, q_{x,m}) of column m:
    //   s ascent of x:       q * q_{x,m}                 into row x
    //                        mu(y,x) q_{x,m}             into each y < x with s in D(y)
    //   s descent of x:      (mu_{x,m} - q_{x,m}) / q    into row x
    //   s strong ascent x:   q_{x,m}                     into row s x
    static Column column(const IdealTable& t, const MuTable& mu, const Column& cm, int k, int s, int m,
                         Accumulator& acc) {
        const auto& ent = t.entries[static_cast<std::size_t>(s - 1)];
        std::vector<std::pair<int, Integer>> f;  // terms of q_{x,m}
        for (std::size_t r = 0; r < cm.rows.size(); ++r) {
            const int x = cm.rows[r];
            f.clear();
            for (std::uint32_t i = cm.start[r]; i < cm.start[r + 1]; ++i) f.emplace_back(cm.exps[i], cm.coef(i));
            if (f.front().first < 0) throw NonDivisible("q-table entry outside A+ at (" + std::to_string(x + 1) + "," + std::to_string(m + 1) + ")");
            const IdealEntry& ex = ent[static_cast<std::size_t>(x)];
            if (!ex.descent()) {
                for (const auto& [e, c] : f) acc.add(x, e + 1, c);
                for (const MuEntry& me : mu.lower(x)) {
                    if (!t.descents[static_cast<std::size_t>(me.y)].contains(s)) continue;
                    for (const auto& [e, c] : f) acc.add(me.y, e, me.mu * c);
                }
                if (ex.kind == AscentClass::StrongAsc && ex.partner < k)
                    for (const auto& [e, c] : f) acc.add(ex.partner, e, c);
            } else {
                for (const auto& [e, c] : f)
                    if (e > 0) acc.add(x, e - 1, -c);
            }
        }
        acc.add(m, 0, Integer(1));
        return acc.flush();
    }

    static std::vector<MuEntry> mu_of_column(const Column& c) {
        std::vector<MuEntry> out;
        for (std::size_t r = 0; r < c.rows.size(); ++r)
            if (c.exps[c.start[r]] == 0) out.push_back({c.rows[r], c.coef(c.start[r])});
        return out;
    }

    static void run(const IdealTable& t, const EngineOptions& opt, PolyTable* keep, MuTable& mu) {
        const int d = t.size();
        std::vector<std::pair<int, int>> choice(static_cast<std::size_t>(d), {0, -1});
        for (int k = 1; k < d; ++k) {
            choice[k] = chosen_descent(t, k, opt.policy);
            if (choice[k].first == 0)
                throw NoStrongDescent("element " + std::to_string(k + 1) + " has no strong descent");
            if (choice[k].second >= k) throw std::invalid_argument("ideal elements are not in length order");
        }
        std::vector<Column> cols(static_cast<std::size_t>(d));
        mu = MuTable(d);

        const unsigned nthreads = std::max(1u, opt.threads);
        std::vector<Accumulator> accs;
        accs.reserve(nthreads);
        for (unsigned i = 0; i < nthreads; ++i) accs.emplace_back(d);

        // Column m is read only by the columns k with choice[k] = m, all one
        // length higher. In streaming mode it is released after the last one.
        std::vector<std::atomic<int>> readers(static_cast<std::size_t>(opt.keep_q ? 0 : d));
        for (int k = 1; k < d && !opt.keep_q; ++k) readers[choice[k].second].fetch_add(1, std::memory_order_relaxed);

        std::vector<int> order;
        int lo = 1, prev_lo = 0;
        while (lo < d) {
            int hi = lo;
            while (hi < d && t.lengths[hi] == t.lengths[lo]) ++hi;
            if (!opt.keep_q)
                for (int m = prev_lo; m < lo; ++m)
                    if (readers[m].load(std::memory_order_relaxed) == 0) cols[m] = Column{};
            // Siblings run back to back so their parent can be freed early.
            order.resize(static_cast<std::size_t>(hi - lo));
            std::iota(order.begin(), order.end(), lo);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return choice[a].second < choice[b].second; });
            std::atomic<int> next{0};
            const int count = hi - lo;
            std::exception_ptr err;
            std::mutex err_mu;
            auto work = [&](unsigned id) {
                try {
                    for (int i; (i = next.fetch_add(1)) < count;) {
                        const int k = order[static_cast<std::size_t>(i)];
                        const auto [s, m] = choice[k];
                        cols[k] = column(t, mu, cols[m], k, s, m, accs[id]);
                        if (!opt.keep_q && readers[m].fetch_sub(1, std::memory_order_acq_rel) == 1) cols[m] = Column{};
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                    next.store(count);
                }
            };
            if (nthreads == 1 || count < 2) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(work, i);
                for (auto& th : pool) th.join();
            }
            if (err) std::rethrow_exception(err);
            for (int k = lo; k < hi; ++k) mu.set_lower(k, mu_of_column(cols[k]));
            prev_lo = lo;
            lo = hi;
        }
        if (keep) {
            *keep = PolyTable(d);
            for (int k = 0; k < d; ++k) keep->cols_[k] = std::move(cols[k]);
        }
    }
};

/// q_{y,w} for all pairs of the ideal, with the given strong-descent policy.
inline QTable compute_q_table(const IdealTable& t, const EngineOptions& opt = {}) {
    EngineOptions o = opt;
    o.keep_q = true;
    QTable q;
    MuTable mu;
    EngineAccess::run(t, o, &q, mu);
    return q;
}

/// Edge weights only, releasing q-table columns as soon as they are dead.
inline MuTable compute_mu_streaming(const IdealTable& t, unsigned threads = 1) {
    MuTable mu;
    EngineAccess::run(t, {DescentPolicy::First, threads, false}, nullptr, mu);
    return mu;
}

/// mu_{y,w}: the constant term of q_{min,max}; zero on the diagonal.
inline Integer mu_of(const QTable& q, int i, int j) {
    if (i == j) return {};
    if (i > j) std::swap(i, j);
    return q.at(i, j).constant_term();
}

inline MuTable mu_table(const QTable& q) {
    MuTable mu(q.size());
    for (int k = 0; k < q.size(); ++k) {
        std::vector<MuEntry> l;
        q.for_column(k, [&](int j, const LaurentPoly& p) {
            if (!p.constant_term().is_zero()) l.push_back({j, p.constant_term()});
        });
        mu.set_lower(k, std::move(l));
    }
    return mu;
}

/// p_{y,w} = q_{y,w} - sum_{y<x<w} q p_{y,x} q_{x,w}.
inline PTable compute_p_table(const QTable& q) {
    const int d = q.size();
    PTable p(d);
    std::vector<LaurentPoly> acc(static_cast<std::size_t>(d));
    std::vector<char> mark(static_cast<std::size_t>(d), 0);
    std::vector<int> touched;
    auto slot = [&](int y) -> LaurentPoly& {
        if (!mark[y]) {
            mark[y] = 1;
            touched.push_back(y);
        }
        return acc[y];
    };
    for (int w = 0; w < d; ++w) {
        q.for_column(w, [&](int x, const LaurentPoly& qxw) {
            slot(x) += qxw;
            const LaurentPoly qq = qxw.shifted(1);
            p.for_column(x, [&](int y, const LaurentPoly& pyx) { slot(y) -= pyx * qq; });
        });
        std::vector<std::pair<int, LaurentPoly>> col;
        for (int y : touched) {
            col.emplace_back(y, std::move(acc[y]));
            acc[y] = LaurentPoly();
            mark[y] = 0;
        }
        touched.clear();
        p.set_column(w, std::move(col));
    }
    return p;
}

/// Classical KL (or Deodhar) polynomials P_{y,w} in the variable q_cl = q^2,
/// off the diagonal. P_{w,w} = 1 and P = 0 for pairs without a p entry.
class KLTable {
public:
    KLTable() = default;
    explicit KLTable(PolyTable offdiag) : off_(std::move(offdiag)) {}

    int size() const noexcept { return off_.size(); }
    LaurentPoly at(int y, int w) const {
        if (y == w) return LaurentPoly(1);
        if (y > w) return {};
        return off_.at(y, w);
    }
    const PolyTable& offdiag() const noexcept { return off_; }

private:
    PolyTable off_;
};

/// P*_{y,w} = p_{y,w} / (-q)^{l(w)-l(y)-1}, then q^{-2} -> q_cl.
inline KLTable kl_polynomials(const PTable& p, const std::vector<int>& lengths) {
    PolyTable out(p.size());
    for (int w = 0; w < p.size(); ++w) {
        std::vector<std::pair<int, LaurentPoly>> col;
        p.for_column(w, [&](int y, const LaurentPoly& pyw) {
            const int L = lengths[w] - lengths[y] - 1;
            std::vector<std::pair<int, Integer>> terms;
            for (const auto& t : pyw.terms()) {
                const int e = t.exp - L;
                if (e > 0 || e % 2 != 0)
                    throw NotAPolynomial("p(" + std::to_string(y + 1) + "," + std::to_string(w + 1) + ") = " + pyw.str() +
                                         " is not (-q)^" + std::to_string(L) + " times a polynomial in q^-2");
                terms.emplace_back(-e / 2, L % 2 ? -t.coeff : t.coeff);
            }
            col.emplace_back(y, LaurentPoly::from_pairs(terms));
        });
        out.set_column(w, std::move(col));
    }
    return KLTable(std::move(out));
}

/// The W-graph of an ideal, with the tables it was read from.
struct WGraphData {
    CoxeterSpec spec = CoxeterSpec::type_a(1);
    GenSet J;
    IdealMeta meta;
    std::vector<std::vector<int>> words;  // ideal element labels
    std::vector<int> lengths;
    std::vector<GenSet> tau;
    MuTable mu;
    QTable q;                    // empty in streaming mode
    std::optional<PTable> p;

    int size() const noexcept { return static_cast<int>(tau.size()); }

    struct Edge {
        int u, v;  // u < v
        Integer mu;
        friend bool operator==(const Edge&, const Edge&) = default;
    };
    /// Edges sorted by (u, v).
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int v = 0; v < mu.size(); ++v)
            for (const auto& e : mu.lower(v)) out.push_back({e.y, v, e.mu});
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
        return out;
    }
};

inline WGraphData wgraph_shell(const IdealTable& t) {
    WGraphData g;
    g.spec = t.spec;
    g.J = t.J;
    g.meta = t.meta;
    g.words = t.labels;
    g.lengths = t.lengths;
    g.tau = t.descents;
    return g;
}

/// Vertices, tau = D(w) and mu from the q-table; the p-table is optional.
inline WGraphData build_wgraph(const IdealTable& t, const EngineOptions& opt = {}, bool with_p = false) {
    WGraphData g = wgraph_shell(t);
    EngineOptions o = opt;
    o.keep_q = true;
    EngineAccess::run(t, o, &g.q, g.mu);
    if (with_p) g.p = compute_p_table(g.q);
    return g;
}

/// Strongly connected components of the digraph with an arc u -> v whenever
/// mu(u,v) != 0 and tau(u) is not contained in tau(v). Components are ordered
/// by their smallest vertex and each is sorted.
inline std::vector<std::vector<int>> cell_decomposition(const WGraphData& g) {
    const int n = g.size();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& e : g.edges()) {
        if (!g.tau[e.u].subset_of(g.tau[e.v])) adj[e.u].push_back(e.v);
        if (!g.tau[e.v].subset_of(g.tau[e.u])) adj[e.v].push_back(e.u);
    }
    // Iterative Tarjan.
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0), stack;
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> comps;
    int counter = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < adj[v].size()) {
                const int w = adj[v][i++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const int done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

struct ChoiceAudit {
    bool identical = true;
    std::size_t entries = 0;
    std::string detail;
};

/// Recomputes the q-table with the last strong descent instead of the first.
/// Throws ChoiceDependence if the tables differ.
inline ChoiceAudit choice_independence_audit(const IdealTable& t, unsigned threads = 1) {
    const QTable a = compute_q_table(t, {DescentPolicy::First, threads, true});
    const QTable b = compute_q_table(t, {DescentPolicy::Last, threads, true});
    ChoiceAudit r;
    r.entries = a.nonzeros();
    if (!(a == b)) {
        for (int k = 0; k < a.size() && r.detail.empty(); ++k)
            a.for_column(k, [&](int j, const LaurentPoly& p) {
                if (r.detail.empty() && !(b.at(j, k) == p))
                    r.detail = "q(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + "): " + p.str() + " vs " + b.at(j, k).str();
            });
        if (r.detail.empty()) r.detail = "supports differ";
        throw ChoiceDependence("strong-descent choice changes the q-table: " + r.detail);
    }
    return r;
}

}  // namespace wgraph
