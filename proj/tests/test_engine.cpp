#include "wgraph/io.hpp"
#include "wgraph/verify.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace wgraph;

namespace {

using Dense = std::vector<std::vector<LaurentPoly>>;

// The recursion evaluated literally on a dense d x d array, column by column,
// with the lexicographically first strong descent. `filter` restricts the
// inner sum to x with s not in D(x).
Dense reference_q(const IdealTable& t, bool filter) {
    const int d = t.size();
    Dense Q(static_cast<std::size_t>(d), std::vector<LaurentPoly>(static_cast<std::size_t>(d)));
    auto mu = [&](int a, int b) { return a < b ? Q[a][b].constant_term() : Integer(); };
    for (int k = 1; k < d; ++k) {
        int s = 0;
        for (int r = 1; r <= t.rank() && s == 0; ++r)
            if (t.entry(r, k).kind == AscentClass::StrongDesc) s = r;
        if (s == 0) throw std::logic_error("no strong descent");
        const int m = t.entry(s, k).partner;
        for (int j = 0; j < k; ++j) {
            if (j == m) {
                Q[j][k] = LaurentPoly(1);
                continue;
            }
            const IdealEntry& e = t.entry(s, j);
            if (!e.descent()) {
                Q[j][k] = Q[j][m].shifted(1);
                continue;
            }
            LaurentPoly v = (LaurentPoly(mu(j, m)) - Q[j][m]).exact_div_q();
            if (e.kind == AscentClass::StrongDesc) v += Q[e.partner][m];
            for (int x = j + 1; x < m; ++x)
                if (!filter || !t.descents[x].contains(s)) v += LaurentPoly(mu(j, x)) * Q[x][m];
            Q[j][k] = v;
        }
    }
    return Q;
}

bool same(const Dense& a, const QTable& b) {
    for (int k = 0; k < b.size(); ++k)
        for (int j = 0; j < b.size(); ++j)
            if (!(a[j][k] == b.at(j, k))) return false;
    return true;
}

// Classical Kazhdan-Lusztig polynomials (coefficient vectors in q_cl) from the
// standard recursion over Bruhat order, indexed like the regular ideal.
template <CoxeterGroup G>
std::map<std::pair<int, int>, std::vector<long long>> classical_kl(const G& g, const IdealTable& t) {
    using Poly = std::vector<long long>;
    const int d = t.size();
    std::vector<typename G::element_type> el;
    for (const auto& l : t.labels) el.push_back(g.from_label(l));
    std::map<typename G::element_type, int> idx;
    for (int i = 0; i < d; ++i) idx[el[i]] = i;
    std::vector<std::vector<Poly>> P(static_cast<std::size_t>(d), std::vector<Poly>(static_cast<std::size_t>(d)));
    auto add = [](Poly& a, const Poly& b, int shift, long long c) {
        if (b.empty()) return;
        if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += c * b[i];
    };
    auto trim = [](Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    };
    auto coeff = [](const Poly& a, int i) { return i >= 0 && i < static_cast<int>(a.size()) ? a[i] : 0LL; };
    for (int w = 0; w < d; ++w) {
        P[w][w] = {1};
        if (w == 0) continue;
        int s = 1;
        while (!g.left_descends(s, el[w])) ++s;
        const int v = idx.at(g.left_mul(s, el[w]));
        for (int x = 0; x < d; ++x) {
            if (x == w || !g.bruhat_leq(el[x], el[w])) continue;
            const int sx = idx.at(g.left_mul(s, el[x]));
            const bool c = g.left_descends(s, el[x]);
            Poly r;
            add(r, P[sx][v], c ? 0 : 1, 1);
            add(r, P[x][v], c ? 1 : 0, 1);
            for (int z = 0; z < d; ++z) {
                if (z == v || !g.left_descends(s, el[z]) || !g.bruhat_leq(el[z], el[v])) continue;
                const int gap = t.lengths[v] - t.lengths[z];
                if (gap % 2 == 0) continue;
                const long long mu = coeff(P[z][v], (gap - 1) / 2);
                if (mu != 0) add(r, P[x][z], (t.lengths[w] - t.lengths[z]) / 2, -mu);
            }
            trim(r);
            P[x][w] = r;
        }
    }
    std::map<std::pair<int, int>, std::vector<long long>> out;
    for (int x = 0; x < d; ++x)
        for (int w = x + 1; w < d; ++w)
            if (!P[x][w].empty()) out[{x, w}] = P[x][w];
    return out;
}

std::vector<long long> as_vector(const LaurentPoly& p) {
    std::vector<long long> v;
    for (const auto& t : p.terms()) {
        if (v.size() <= static_cast<std::size_t>(t.exp)) v.resize(static_cast<std::size_t>(t.exp) + 1, 0);
        v[static_cast<std::size_t>(t.exp)] = t.coeff.to_int64();
    }
    return v;
}

template <CoxeterGroup G>
void expect_kl_matches(const G& g) {
    const IdealTable t = regular_ideal(g);
    const QTable q = compute_q_table(t);
    const KLTable kl = kl_polynomials(compute_p_table(q), t.lengths);
    const auto oracle = classical_kl(g, t);
    for (int x = 0; x < t.size(); ++x)
        for (int w = x + 1; w < t.size(); ++w) {
            auto it = oracle.find({x, w});
            const std::vector<long long> expect = it == oracle.end() ? std::vector<long long>{} : it->second;
            EXPECT_EQ(as_vector(kl.at(x, w)), expect) << g.spec().name() << " pair " << x + 1 << "," << w + 1;
        }
}

std::vector<IdealTable> small_families() {
    std::vector<IdealTable> out;
    for (int n = 2; n <= 5; ++n) {
        SymmetricGroup g(n);
        out.push_back(regular_ideal(g));
        for (std::uint64_t b = 0; b < (1ULL << (n - 1)); ++b)
            for (auto v : {ParabolicVariant::Psi, ParabolicVariant::Phi})
                out.push_back(parabolic_ideal(g, GenSet::from_bits(b << 1), v));
    }
    for (int n = 1; n <= 6; ++n)
        for (const auto& lam : partitions_of(n)) out.push_back(specht_ideal(lam));
    for (int m = 3; m <= 7; ++m) {
        DihedralGroup g(m);
        out.push_back(regular_ideal(g));
        for (GenSet J : {GenSet{1}, GenSet{2}})
            for (auto v : {ParabolicVariant::Psi, ParabolicVariant::Phi}) out.push_back(parabolic_ideal(g, J, v));
    }
    out.push_back(induced_ideal(SymmetricGroup(4), GenSet{1, 2}, SymmetricGroup(3), specht_ideal(Partition({2, 1}))));
    out.push_back(induced_ideal(SymmetricGroup(5), GenSet{2, 3, 4}, SymmetricGroup(4), specht_ideal(Partition({2, 2}))));
    return out;
}

std::vector<int> golden_order(const IdealTable& t) {
    return order_by_tableaux(t, Partition({3, 3, 1}), read_lines(std::string(WGRAPH_GOLDEN_DIR) + "/specht_331_tableaux.txt"));
}

}  // namespace

TEST(Engine, MatchesDenseReference) {
    for (const auto& t : small_families()) {
        const QTable q = compute_q_table(t);
        EXPECT_TRUE(same(reference_q(t, true), q)) << t.meta.family << " " << t.spec.name() << " size " << t.size();
    }
}

TEST(Engine, InnerSumNeedsDescentFilter) {
    // Summing over every x between j and m, as a literal reading of the
    // index range suggests, leaves the bar-invariant basis.
    const IdealTable t = regular_ideal(SymmetricGroup(4));
    const QTable oracle = bar_oracle(t, OracleFamily::Regular);
    EXPECT_TRUE(same(reference_q(t, true), oracle));
    EXPECT_FALSE(same(reference_q(t, false), oracle));
}

TEST(Engine, RegularS2) {
    const IdealTable t = regular_ideal(SymmetricGroup(2));
    const WGraphData g = build_wgraph(t, {}, true);
    EXPECT_EQ(g.q.at(0, 1), LaurentPoly(1));
    EXPECT_EQ(g.p->at(0, 1), LaurentPoly(1));
    EXPECT_EQ(g.tau[0], GenSet{});
    EXPECT_EQ(g.tau[1], GenSet{1});
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.edges()[0].mu, Integer(1));
    const auto cells = cell_decomposition(g);
    EXPECT_EQ(cells.size(), 2u);
}

TEST(Engine, SpechtExampleEntries) {
    const IdealTable t = specht_ideal(Partition({3, 3, 1}));
    const QTable q = compute_q_table(t);
    const auto o = golden_order(t);
    auto Q = [&](int a, int b) { return q.at(o[a - 1], o[b - 1]); };
    const auto qq = LaurentPoly::q;
    EXPECT_EQ(Q(4, 21), qq(2) + LaurentPoly(1));
    EXPECT_EQ(Q(20, 21), LaurentPoly(1));
    EXPECT_EQ(Q(2, 21), qq(1));
    EXPECT_EQ(Q(1, 5), LaurentPoly(1));
    EXPECT_EQ(Q(2, 5), qq(1));
    EXPECT_EQ(Q(3, 5), LaurentPoly(1));
    EXPECT_EQ(Q(4, 5), LaurentPoly(1));
    EXPECT_EQ(mu_of(q, o[3], o[20]), Integer(1));
    EXPECT_EQ(mu_of(q, o[1], o[20]), Integer(0));
    EXPECT_EQ(mu_of(q, 5, 5), Integer(0));
    EXPECT_EQ(mu_of(q, o[20], o[3]), Integer(1));
}

TEST(Engine, SpechtGraph) {
    const IdealTable t = specht_ideal(Partition({3, 3, 1}));
    const WGraphData g = build_wgraph(t, {}, true);
    EXPECT_EQ(g.size(), 21);
    EXPECT_EQ(g.tau[0], (GenSet{1, 2, 4, 6}));
    const auto cells = cell_decomposition(g);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].size(), 21u);
    // Constant terms of p are the edge weights.
    for (int w = 0; w < g.size(); ++w)
        for (int y = 0; y < w; ++y) EXPECT_EQ(g.p->at(y, w).constant_term(), g.mu(y, w));
}

TEST(Engine, SingleVertex) {
    const IdealTable t = one_dim_ideal(SymmetricGroup(3), GenSet::all(2), GenSet{});
    const WGraphData g = build_wgraph(t);
    EXPECT_EQ(g.size(), 1);
    EXPECT_EQ(g.tau[0], GenSet::all(2));
    EXPECT_TRUE(g.edges().empty());
    EXPECT_EQ(cell_decomposition(g).size(), 1u);
    EXPECT_TRUE(choice_independence_audit(t).identical);
}

TEST(Engine, KLRecoveryS3AllOne) {
    const IdealTable t = regular_ideal(SymmetricGroup(3));
    const KLTable kl = kl_polynomials(compute_p_table(compute_q_table(t)), t.lengths);
    SymmetricGroup g(3);
    for (int x = 0; x < 6; ++x)
        for (int w = 0; w < 6; ++w) {
            const bool leq = g.bruhat_leq(Perm(t.labels[x]), Perm(t.labels[w]));
            EXPECT_EQ(kl.at(x, w), leq ? LaurentPoly(1) : LaurentPoly());
        }
}

TEST(Engine, KLRecoveryS4) {
    SymmetricGroup g(4);
    const IdealTable t = regular_ideal(g);
    const KLTable kl = kl_polynomials(compute_p_table(compute_q_table(t)), t.lengths);
    int nontrivial = 0;
    const LaurentPoly one_plus_q = LaurentPoly(1) + LaurentPoly::q(1);
    for (int x = 0; x < 24; ++x)
        for (int w = x + 1; w < 24; ++w) {
            const LaurentPoly P = kl.at(x, w);
            const bool leq = g.bruhat_leq(Perm(t.labels[x]), Perm(t.labels[w]));
            if (!leq) {
                EXPECT_TRUE(P.is_zero());
            } else if (!(P == LaurentPoly(1))) {
                EXPECT_EQ(P, one_plus_q);
                ++nontrivial;
            }
        }
    EXPECT_EQ(nontrivial, 6);
    auto index = [&](const Perm& p) {
        for (int i = 0; i < 24; ++i)
            if (t.labels[i] == p.images()) return i;
        return -1;
    };
    EXPECT_EQ(kl.at(index(g.from_word({2})), index(g.from_word({2, 1, 3, 2}))), one_plus_q);
}

TEST(Engine, KLAgainstClassicalRecursion) {
    expect_kl_matches(SymmetricGroup(4));
    expect_kl_matches(SymmetricGroup(5));
    expect_kl_matches(DihedralGroup(5));
    expect_kl_matches(DihedralGroup(6));
}

TEST(Engine, KLRejectsNonKLTables) {
    PTable positive(2);
    positive.set_column(1, {{0, LaurentPoly::q(1)}});
    EXPECT_THROW(kl_polynomials(positive, {0, 1}), NotAPolynomial);
    PTable odd(2);
    odd.set_column(1, {{0, LaurentPoly::q(1)}});
    EXPECT_THROW(kl_polynomials(odd, {0, 3}), NotAPolynomial);
    PTable fine(2);
    fine.set_column(1, {{0, LaurentPoly::q(2) - LaurentPoly(1)}});
    // p = q^2 - 1 with l(w) - l(y) - 1 = 2 gives P = 1 - q_cl.
    EXPECT_EQ(kl_polynomials(fine, {0, 3}).at(0, 1), LaurentPoly(1) - LaurentPoly::q(1));
}

TEST(Engine, PTableInvertsQTable) {
    for (const auto& t : small_families()) {
        if (t.size() > 120) continue;
        const QTable q = compute_q_table(t);
        const PTable p = compute_p_table(q);
        // B = I + q Q and C = I - q P must be mutually inverse.
        const int d = t.size();
        for (int w = 0; w < d; ++w)
            for (int y = 0; y < w; ++y) {
                LaurentPoly s = q.at(y, w) - p.at(y, w);
                for (int x = y + 1; x < w; ++x) s -= p.at(y, x) * q.at(x, w) * LaurentPoly::q(1);
                EXPECT_TRUE(s.is_zero());
            }
    }
}

TEST(Engine, ChoiceIndependence) {
    for (const auto& t : small_families()) EXPECT_NO_THROW(choice_independence_audit(t)) << t.meta.family << " " << t.spec.name();
    EXPECT_TRUE(choice_independence_audit(specht_ideal(Partition({3, 3, 1}))).identical);
}

TEST(Engine, ThreadCountAndStreamingAgree) {
    const IdealTable t = specht_ideal(Partition({4, 3, 1}));
    const QTable q1 = compute_q_table(t, {DescentPolicy::First, 1, true});
    const QTable q3 = compute_q_table(t, {DescentPolicy::First, 3, true});
    EXPECT_TRUE(q1 == q3);
    EXPECT_TRUE(mu_table(q1) == compute_mu_streaming(t, 2));
    EXPECT_TRUE(mu_table(q1) == compute_mu_streaming(t, 1));
}

TEST(Engine, NoStrongDescentOnCorruptTable) {
    IdealTable t = regular_ideal(SymmetricGroup(3));
    for (auto& row : t.entries) row[3] = {AscentClass::WeakAsc, -1};
    EXPECT_THROW(compute_q_table(t), NoStrongDescent);
}

TEST(Engine, SpechtMaxEdgeWeightSmall) {
    // Every edge weight is 1 for partitions of n <= 6.
    for (int n = 1; n <= 6; ++n)
        for (const auto& lam : partitions_of(n)) {
            const MuTable mu = compute_mu_streaming(specht_ideal(lam));
            if (mu.edge_count() > 0) {
                EXPECT_EQ(mu.max_abs(), Integer(1)) << lam.str();
            }
        }
}
