#include "wgraph/io.hpp"
#include "wgraph/verify.hpp"

#include <gtest/gtest.h>

using namespace wgraph;

namespace {

std::vector<GenSet> all_subsets(int rank) {
    std::vector<GenSet> out;
    for (std::uint64_t b = 0; b < (1ULL << rank); ++b) out.push_back(GenSet::from_bits(b << 1));
    return out;
}

std::string failures(const Report& r) {
    std::string s;
    for (const auto& c : r.checks)
        if (!c.pass) s += c.name + " " + c.detail + "; ";
    return s;
}

LaurentPoly neg_qinv() { return LaurentPoly::monomial(-1, -1); }

}  // namespace

TEST(Verify, RegularS2Matrices) {
    const IdealTable t = regular_ideal(SymmetricGroup(2));
    const RepMatrices m = c_basis_matrices(build_wgraph(t), t);
    ASSERT_EQ(m.dim(), 2);
    EXPECT_EQ(m[1].at(0, 0), LaurentPoly::q(1));
    EXPECT_EQ(m[1].at(1, 0), LaurentPoly(1));
    EXPECT_EQ(m[1].at(0, 1), LaurentPoly());
    EXPECT_EQ(m[1].at(1, 1), neg_qinv());
}

TEST(Verify, SingleVertexMatrices) {
    const IdealTable t = one_dim_ideal(SymmetricGroup(3), GenSet::all(2), GenSet{});
    const WGraphData g = build_wgraph(t);
    const RepMatrices m = c_basis_matrices(g, t);
    EXPECT_EQ(m[1].at(0, 0), neg_qinv());
    EXPECT_TRUE(check_representation(g, t).ok());
    const IdealTable u = one_dim_ideal(SymmetricGroup(3), GenSet{}, GenSet::all(2));
    EXPECT_EQ(c_basis_matrices(build_wgraph(u), u)[2].at(0, 0), LaurentPoly::q(1));
    EXPECT_TRUE(check_representation(build_wgraph(u), u).ok());
}

TEST(Verify, SpechtT3OnC20) {
    // Rearranging the c_21 expansion: T_3 c_20 = q c_20 + c_21 + sum mu(y,20) c_y
    // over y < 20 with s3 in D(y).
    const Partition lam({3, 3, 1});
    const IdealTable t = specht_ideal(lam);
    const WGraphData g = build_wgraph(t);
    const auto o = order_by_tableaux(t, lam, read_lines(std::string(WGRAPH_GOLDEN_DIR) + "/specht_331_tableaux.txt"));
    const RepMatrices m = c_basis_matrices(g, t);
    const int c20 = o[19], c21 = o[20];
    ASSERT_EQ(t.entry(3, c20).kind, AscentClass::StrongAsc);
    EXPECT_EQ(t.entry(3, c20).partner, c21);
    EXPECT_EQ(m[3].at(c20, c20), LaurentPoly::q(1));
    EXPECT_EQ(m[3].at(c21, c20), LaurentPoly(1));
    for (int y = 0; y < t.size(); ++y) {
        if (y == c20 || y == c21) continue;
        const LaurentPoly expect = t.descents[y].contains(3) && t.lengths[y] < t.lengths[c20] ? LaurentPoly(g.mu(y, c20)) : LaurentPoly();
        EXPECT_EQ(m[3].at(y, c20), expect);
    }
}

TEST(Verify, RelationsHoldForAllFamilies) {
    std::vector<IdealTable> tables;
    for (int n = 2; n <= 5; ++n) {
        SymmetricGroup g(n);
        tables.push_back(regular_ideal(g));
        for (GenSet J : all_subsets(n - 1))
            for (auto v : {ParabolicVariant::Psi, ParabolicVariant::Phi}) tables.push_back(parabolic_ideal(g, J, v));
    }
    for (int m = 3; m <= 7; ++m) tables.push_back(regular_ideal(DihedralGroup(m)));
    for (int n = 1; n <= 5; ++n)
        for (const auto& lam : partitions_of(n)) tables.push_back(specht_ideal(lam));
    for (const auto& t : tables) {
        const WGraphData g = build_wgraph(t);
        const Report r = check_representation(g, t, 2);
        EXPECT_TRUE(r.ok()) << t.meta.family << " " << t.spec.name() << ": " << failures(r);
    }
}

TEST(Verify, PerturbedMuBreaksBraid) {
    const IdealTable t = regular_ideal(SymmetricGroup(4));
    WGraphData g = build_wgraph(t);
    ASSERT_TRUE(check_representation(g, t).ok());
    // Add one to mu at a pair some T_s reads that is not a strong-ascent pair.
    int u = -1, v = -1;
    for (int w = 0; w < t.size() && u < 0; ++w)
        for (int y = 0; y < w && u < 0; ++y)
            for (int s = 1; s <= t.rank(); ++s)
                if (t.descents[y].contains(s) && !t.descents[w].contains(s) && t.entry(s, w).partner != y) {
                    u = y;
                    v = w;
                    break;
                }
    ASSERT_GE(u, 0);
    auto lower = g.mu.lower(v);
    bool found = false;
    for (auto& me : lower)
        if (me.y == u) {
            me.mu += Integer(1);
            found = true;
        }
    if (!found) lower.push_back({u, Integer(1)});
    g.mu.set_lower(v, lower);
    const Report braid = check_braid(c_basis_matrices(g, t), t.spec);
    EXPECT_FALSE(braid.ok());
}

TEST(Verify, PerturbedTauBreaksConformance) {
    const IdealTable t = regular_ideal(SymmetricGroup(3));
    WGraphData g = build_wgraph(t);
    const RepMatrices m = c_basis_matrices(g, t);
    EXPECT_TRUE(wgraphdef_conformance(g, m).ok());
    g.tau[2] = g.tau[2].contains(1) ? GenSet{2} : GenSet{1, 2};
    const Report r = wgraphdef_conformance(g, m);
    EXPECT_FALSE(r.ok());
}

TEST(Verify, QuadraticHoldsForScalars) {
    for (const LaurentPoly& v : {LaurentPoly::q(1), neg_qinv()}) {
        RepMatrices m;
        SparseMatrix<LaurentPoly> a(1);
        a.add(0, 0, v);
        m.gens.push_back(a);
        EXPECT_TRUE(check_quadratic(m).ok());
    }
    RepMatrices bad;
    SparseMatrix<LaurentPoly> a(1);
    a.add(0, 0, LaurentPoly(1));
    bad.gens.push_back(a);
    EXPECT_FALSE(check_quadratic(bad).ok());
}

TEST(Verify, BarOracleS2) {
    const QTable q = bar_oracle(regular_ideal(SymmetricGroup(2)), OracleFamily::Regular);
    EXPECT_EQ(q.at(0, 1), LaurentPoly(1));
}

TEST(Verify, BarOracleAgreesWithEngine) {
    for (int n = 2; n <= 4; ++n) {
        SymmetricGroup g(n);
        const IdealTable reg = regular_ideal(g);
        EXPECT_TRUE(bar_oracle(reg, OracleFamily::Regular) == compute_q_table(reg)) << n;
        for (GenSet J : all_subsets(n - 1)) {
            const IdealTable psi = parabolic_ideal(g, J, ParabolicVariant::Psi);
            const IdealTable phi = parabolic_ideal(g, J, ParabolicVariant::Phi);
            EXPECT_TRUE(bar_oracle(psi, OracleFamily::ParabolicPsi) == compute_q_table(psi)) << n << J.str();
            EXPECT_TRUE(bar_oracle(phi, OracleFamily::ParabolicPhi) == compute_q_table(phi)) << n << J.str();
        }
    }
    for (int m = 3; m <= 6; ++m) {
        const IdealTable reg = regular_ideal(DihedralGroup(m));
        EXPECT_TRUE(bar_oracle(reg, OracleFamily::Regular) == compute_q_table(reg)) << m;
    }
}

TEST(Verify, BarOracleS4ComparablePairs) {
    SymmetricGroup g(4);
    const IdealTable t = regular_ideal(g);
    const QTable a = bar_oracle(t, OracleFamily::Regular), b = compute_q_table(t);
    int comparable = 0;
    for (int w = 0; w < 24; ++w)
        for (int y = 0; y < 24; ++y) {
            if (y == w || !g.bruhat_leq(Perm(t.labels[y]), Perm(t.labels[w]))) continue;
            ++comparable;
            EXPECT_EQ(a.at(y, w), b.at(y, w));
        }
    EXPECT_GT(comparable, 0);
}

TEST(Verify, ParabolicVariantsDifferOnlyAtWeakVertices) {
    SymmetricGroup g(4);
    const IdealTable psi = parabolic_ideal(g, GenSet{2}, ParabolicVariant::Psi);
    const IdealTable phi = parabolic_ideal(g, GenSet{2}, ParabolicVariant::Phi);
    const WGraphData a = build_wgraph(psi), b = build_wgraph(phi);
    ASSERT_EQ(a.size(), b.size());
    for (int v = 0; v < a.size(); ++v) {
        const GenSet weak = psi.class_set(v, AscentClass::WeakAsc) | phi.class_set(v, AscentClass::WeakDesc);
        EXPECT_EQ(a.tau[v] - weak, b.tau[v] - weak);
    }
    EXPECT_FALSE(a.tau == b.tau);
}

TEST(Verify, BarOracleRejectsOtherFamilies) {
    EXPECT_THROW(bar_oracle(specht_ideal(Partition({2, 1})), OracleFamily::Regular), std::invalid_argument);
    EXPECT_THROW(bar_oracle(parabolic_ideal(SymmetricGroup(3), GenSet{1}, ParabolicVariant::Psi), OracleFamily::ParabolicPhi),
                 std::invalid_argument);
}

TEST(Verify, SeminormalIdentities) {
    const auto inv = [](const RationalFn& r) { return r.bar(); };
    for (int d = -8; d <= 8; ++d) {
        if (d == 0) {
            EXPECT_THROW(seminormal_p1(d), PoleEncountered);
            continue;
        }
        const RationalFn p1 = seminormal_p1(d), p2 = seminormal_p2(d);
        EXPECT_EQ(p1 + RationalFn(LaurentPoly::q(-1) - LaurentPoly::q(1)), inv(p1)) << d;
        EXPECT_EQ(p2, inv(p2)) << d;
    }
}

TEST(Verify, SeminormalSmallShapes) {
    const SeminormalRep row = seminormal_matrices(Partition({4}));
    ASSERT_EQ(row.dim(), 1);
    for (int s = 1; s <= 3; ++s) EXPECT_EQ(row[s].at(0, 0), RationalFn(LaurentPoly::q(1)));
    const SeminormalRep col = seminormal_matrices(Partition({1, 1, 1}));
    for (int s = 1; s <= 2; ++s) EXPECT_EQ(col[s].at(0, 0), RationalFn(neg_qinv()));

    // 1 at (1,1), 2 at (2,1).
    const Tableau t(Partition({2, 1}), {{1, 3}, {2}});
    EXPECT_EQ(axial_distance(t, 1), -1);
    EXPECT_EQ(axial_distance(t, 2), 2);
    const int d = axial_distance(t, 1);
    EXPECT_EQ(seminormal_p1(d) + RationalFn(LaurentPoly::q(-1) - LaurentPoly::q(1)), seminormal_p1(d).bar());
}

TEST(Verify, SeminormalIsARepresentation) {
    for (int n = 2; n <= 5; ++n)
        for (const auto& lam : partitions_of(n)) {
            const SeminormalRep m = seminormal_matrices(lam);
            EXPECT_TRUE(check_quadratic(m).ok()) << lam.str();
            EXPECT_TRUE(check_braid(m, CoxeterSpec::type_a(n)).ok()) << lam.str();
        }
}

TEST(Verify, PositiveAxialSignIsNotARepresentation) {
    // Evaluating at +d keeps the quadratic relation but breaks
    // the braid relation already for (2,1).
    const Partition lam({2, 1});
    const auto tabs = enumerate_syt(lam);
    SeminormalRep rep;
    for (int i = 1; i <= 2; ++i) {
        SparseMatrix<RationalFn> a(2);
        for (int c = 0; c < 2; ++c) {
            const Tableau& t = tabs[c];
            const AscentClass k = classify(t, i);
            if (k == AscentClass::WeakDesc) {
                a.add(c, c, RationalFn(neg_qinv()));
            } else if (k == AscentClass::WeakAsc) {
                a.add(c, c, RationalFn(LaurentPoly::q(1)));
            } else {
                const int d = axial_distance(t, i);
                a.add(c, c, seminormal_p1(d));
                a.add(1 - c, c, seminormal_p2(d));
            }
        }
        rep.gens.push_back(a);
    }
    EXPECT_TRUE(check_quadratic(rep).ok());
    EXPECT_FALSE(check_braid(rep, CoxeterSpec::type_a(3)).ok());
}

TEST(Verify, CharactersMatchSeminormal) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& lam : partitions_of(n)) {
            const IdealTable t = specht_ideal(lam);
            const Report r = char_compare(c_basis_matrices(build_wgraph(t), t), seminormal_matrices(lam), default_words(n - 1));
            EXPECT_TRUE(r.ok()) << lam.str() << ": " << failures(r);
        }
}

TEST(Verify, CharactersSingleGenerators331) {
    const Partition lam({3, 3, 1});
    const IdealTable t = specht_ideal(lam);
    std::vector<std::vector<int>> words{{}};
    for (int s = 1; s <= 6; ++s) words.push_back({s});
    const Report r = char_compare(c_basis_matrices(build_wgraph(t), t), seminormal_matrices(lam), words);
    EXPECT_TRUE(r.ok()) << failures(r);
}

TEST(Verify, EmptyWordTraceIsDimension) {
    const Partition lam({3, 2});
    const SeminormalRep m = seminormal_matrices(lam);
    EXPECT_EQ(SparseMatrix<RationalFn>::identity(m.dim()).trace(), RationalFn(5));
    EXPECT_EQ(m.dim(), 5);
}

TEST(Verify, CharacterMismatchDetected) {
    const IdealTable t = specht_ideal(Partition({3, 2}));
    const Report r = char_compare(c_basis_matrices(build_wgraph(t), t), seminormal_matrices(Partition({2, 2, 1})), default_words(4, 2, 0));
    EXPECT_FALSE(r.ok());
}

TEST(Verify, DefaultWords) {
    const auto w = default_words(3);
    EXPECT_EQ(w.size(), 1u + 3 + 9 + 27 + 81 + 64);
    EXPECT_EQ(w, default_words(3));
    EXPECT_TRUE(w.front().empty());
}

TEST(Verify, StructuralInvariants) {
    for (int n = 2; n <= 5; ++n) {
        SymmetricGroup g(n);
        const IdealTable reg = regular_ideal(g);
        const WGraphData wg = build_wgraph(reg, {}, true);
        InvariantOptions opt;
        opt.parity = n <= 4;
        opt.singly_generated = true;
        const Report r = structural_invariants(g, reg, wg, opt);
        EXPECT_TRUE(r.ok()) << failures(r);
        for (const auto& lam : partitions_of(n)) {
            const IdealTable t = specht_ideal(lam);
            const Report s = structural_invariants(g, t, build_wgraph(t, {}, true), {false, true, true});
            EXPECT_TRUE(s.ok()) << lam.str() << ": " << failures(s);
        }
    }
    for (int n = 2; n <= 4; ++n) {
        SymmetricGroup g(n);
        for (GenSet J : all_subsets(n - 1))
            for (auto v : {ParabolicVariant::Psi, ParabolicVariant::Phi}) {
                const IdealTable t = parabolic_ideal(g, J, v);
                EXPECT_TRUE(structural_invariants(g, t, build_wgraph(t, {}, true)).ok());
            }
    }
}

TEST(Verify, StructuralInvariantsCatchCorruption) {
    SymmetricGroup g(4);
    const IdealTable t = regular_ideal(g);
    WGraphData wg = build_wgraph(t);
    std::vector<std::pair<int, LaurentPoly>> col;
    wg.q.for_column(23, [&](int j, const LaurentPoly& p) { col.emplace_back(j, p); });
    col.front().second = col.front().second.shifted(9);
    wg.q.set_column(23, col);
    const Report r = structural_invariants(g, t, wg, {true, false, false});
    EXPECT_FALSE(r.ok());
}

TEST(Verify, ReportHelpers) {
    Report r;
    r.add("a", true);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.first_failure(), nullptr);
    r.add("b", false, "why");
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.first_failure()->name, "b");
}
