#pragma once

// W-graph ideals: suffix-closed subsets of D_J, stored as the index tables
// that drive the W-graph recursion. The engine never sees group elements,
// only indices, so any Coxeter backend can feed it.

#include "wgraph/coxeter.hpp"
#include "wgraph/tableaux.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wgraph {

struct JNotInPos : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConjugacyViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Classification of generator s at element w_j. For strong entries partner
/// is the index k with s w_j = w_k; it is -1 for weak entries.
struct IdealEntry {
    AscentClass kind = AscentClass::WeakAsc;
    int partner = -1;

    bool strong() const noexcept { return kind == AscentClass::StrongAsc || kind == AscentClass::StrongDesc; }
    bool descent() const noexcept { return kind == AscentClass::StrongDesc || kind == AscentClass::WeakDesc; }
    friend bool operator==(const IdealEntry&, const IdealEntry&) = default;
};

/// Provenance carried into exports.
struct IdealMeta {
    std::string family;        // regular | parabolic | specht | induced | onedim | custom
    std::vector<int> lambda;   // specht
    std::string variant;       // parabolic: psi | phi
    GenSet K;                  // induced
    GenSet J1, J2;             // onedim
};

/// Element list w_1..w_d (here 0-indexed) in length order, with the
/// classification of every (s, j) and the descent sets.
struct IdealTable {
    CoxeterSpec spec = CoxeterSpec::type_a(1);
    GenSet J;
    std::vector<std::vector<int>> labels;         // one-line notation, or reduced word for dihedral
    std::vector<int> lengths;
    std::vector<std::vector<IdealEntry>> entries; // entries[s-1][j]
    std::vector<GenSet> descents;                 // SD(w_j) | WD(w_j)
    IdealMeta meta;

    int size() const noexcept { return static_cast<int>(labels.size()); }
    int rank() const noexcept { return spec.rank(); }
    const IdealEntry& entry(int s, int j) const {
        return entries.at(static_cast<std::size_t>(s - 1)).at(static_cast<std::size_t>(j));
    }

    /// The signed 1-based encoding: k for a strong entry with partner w_k,
    /// +j for a weak ascent and -j for a weak descent of w_j.
    int tab(int s, int j) const {
        const IdealEntry& e = entry(s, j);
        if (e.strong()) return e.partner + 1;
        return e.kind == AscentClass::WeakAsc ? j + 1 : -(j + 1);
    }

    /// Generators by class at w_j.
    GenSet class_set(int j, AscentClass c) const {
        GenSet g;
        for (int s = 1; s <= rank(); ++s)
            if (entry(s, j).kind == c) g.insert(s);
        return g;
    }
};

namespace detail {

template <CoxeterGroup G>
IdealTable tabulate(const G& g, GenSet J, std::vector<typename G::element_type> elems) {
    std::vector<std::pair<std::pair<int, std::vector<int>>, std::size_t>> keys;
    keys.reserve(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) keys.push_back({{g.length(elems[i]), g.label(elems[i])}, i});
    std::sort(keys.begin(), keys.end());

    IdealTable t;
    t.spec = g.spec();
    t.J = J;
    const int d = static_cast<int>(elems.size());
    std::vector<typename G::element_type> sorted;
    sorted.reserve(elems.size());
    std::unordered_map<typename G::element_type, int> index;
    index.reserve(elems.size() * 2);
    for (const auto& [key, i] : keys) {
        index.emplace(elems[i], static_cast<int>(sorted.size()));
        t.labels.push_back(key.second);
        t.lengths.push_back(key.first);
        sorted.push_back(std::move(elems[i]));
    }
    elems.clear();

    t.entries.assign(static_cast<std::size_t>(g.rank()), std::vector<IdealEntry>(static_cast<std::size_t>(d)));
    t.descents.assign(static_cast<std::size_t>(d), GenSet{});
    for (int j = 0; j < d; ++j) {
        const auto& w = sorted[j];
        for (int s = 1; s <= g.rank(); ++s) {
            IdealEntry e;
            auto x = g.left_mul(s, w);
            auto it = index.find(x);
            if (g.left_descends(s, w)) {
                if (it == index.end()) throw std::logic_error("element list is not suffix-closed");
                e = {AscentClass::StrongDesc, it->second};
            } else if (it != index.end()) {
                e = {AscentClass::StrongAsc, it->second};
            } else if (!in_min_coset_reps(g, x, J)) {
                e = {AscentClass::WeakDesc, -1};
            } else {
                e = {AscentClass::WeakAsc, -1};
            }
            if (e.descent()) t.descents[j].insert(s);
            t.entries[s - 1][j] = e;
        }
    }
    return t;
}

template <CoxeterGroup G>
typename G::element_type element_from_word(const G& g, const std::vector<int>& word) {
    auto w = g.identity();
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = g.left_mul(*it, w);
    return w;
}

}  // namespace detail

/// Suffix closure of the generators, tabulated with respect to J.
///
/// Throws JNotInPos if some element of the closure has a right descent in J.
template <CoxeterGroup G>
IdealTable build_from_elements(const G& g, GenSet J, const std::vector<typename G::element_type>& generators) {
    if (!J.subset_of(GenSet::all(g.rank()))) throw std::invalid_argument("J contains generators outside S");
    std::vector<typename G::element_type> elems;
    std::unordered_map<typename G::element_type, int> seen;
    auto add = [&](const typename G::element_type& w) {
        if (seen.emplace(w, static_cast<int>(elems.size())).second) elems.push_back(w);
    };
    add(g.identity());
    for (const auto& w : generators) add(w);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (int s = 1; s <= g.rank(); ++s)
            if (g.left_descends(s, elems[i])) add(g.left_mul(s, elems[i]));
    seen.clear();

    for (const auto& x : elems)
        for (int s : J.to_vector())
            if (g.right_descends(x, s))
                throw JNotInPos("generator s" + std::to_string(s) + " of J is a right descent of an ideal element");
    IdealTable t = detail::tabulate(g, J, std::move(elems));
    t.meta.family = "custom";
    return t;
}

/// The whole group with J empty.
template <CoxeterGroup G>
IdealTable regular_ideal(const G& g) {
    IdealTable t = build_from_elements(g, GenSet{}, {g.longest()});
    t.meta.family = "regular";
    return t;
}

enum class ParabolicVariant { Psi, Phi };

inline const char* to_string(ParabolicVariant v) { return v == ParabolicVariant::Psi ? "psi" : "phi"; }

/// D_J, as an ideal with respect to the empty set (psi) or to J (phi).
template <CoxeterGroup G>
IdealTable parabolic_ideal(const G& g, GenSet J, ParabolicVariant variant) {
    const GenSet respect = variant == ParabolicVariant::Psi ? GenSet{} : J;
    IdealTable t = build_from_elements(g, respect, {min_coset_rep_longest(g, J)});
    t.meta.family = "parabolic";
    t.meta.variant = to_string(variant);
    t.meta.K = J;
    return t;
}

/// The ideal generated by v_lambda with respect to J_lambda; its elements
/// correspond to the standard lambda-tableaux.
inline IdealTable specht_ideal(const Partition& lambda) {
    SymmetricGroup g(lambda.n());
    IdealTable t = build_from_elements(g, j_lambda(lambda), {v_lambda(lambda)});
    t.meta.family = "specht";
    t.meta.lambda = lambda.parts();
    return t;
}

/// {1} as an ideal of W with WD(1) = J1 and WA(1) = J2, where J1 and J2
/// partition S and no element of J1 is conjugate to an element of J2.
template <CoxeterGroup G>
IdealTable one_dim_ideal(const G& g, GenSet J1, GenSet J2) {
    if (!(J1 & J2).empty()) throw std::invalid_argument("J1 and J2 must be disjoint");
    if (!((J1 | J2) == GenSet::all(g.rank()))) throw std::invalid_argument("J1 and J2 must cover all generators");
    // s and s' are conjugate in W_J iff joined by a path of odd-m edges inside J.
    const int r = g.rank();
    std::vector<int> parent(static_cast<std::size_t>(r) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 1; a <= r; ++a)
        for (int b = a + 1; b <= r; ++b)
            if (g.spec().m(a, b) % 2 == 1) parent[find(a)] = find(b);
    for (int a : J1.to_vector())
        for (int b : J2.to_vector())
            if (find(a) == find(b))
                throw ConjugacyViolation("s" + std::to_string(a) + " in J1 is conjugate to s" + std::to_string(b) + " in J2");
    IdealTable t = build_from_elements(g, J1, {g.identity()});
    t.meta.family = "onedim";
    t.meta.J1 = J1;
    t.meta.J2 = J2;
    return t;
}

/// D_K * I_0 for an ideal I_0 of W_K. The i-th generator of the inner group
/// is identified with the i-th smallest element of K; the Coxeter matrices
/// must agree under that identification.
template <CoxeterGroup G, CoxeterGroup G0>
IdealTable induced_ideal(const G& g, GenSet K, const G0& inner_group, const IdealTable& inner) {
    const std::vector<int> kgens = K.to_vector();
    const int r0 = inner_group.rank();
    if (static_cast<int>(kgens.size()) != r0 || !(inner.spec == inner_group.spec()))
        throw std::invalid_argument("inner ideal does not match W_K");
    if (!K.subset_of(GenSet::all(g.rank()))) throw std::invalid_argument("K contains generators outside S");
    for (int i = 1; i <= r0; ++i)
        for (int j = 1; j <= r0; ++j)
            if (g.spec().m(kgens[i - 1], kgens[j - 1]) != inner_group.spec().m(i, j))
                throw std::invalid_argument("W_K is not isomorphic to the inner group under the generator map");

    auto lift = [&](const std::vector<int>& inner_label) {
        std::vector<int> word = inner_group.reduced_word(inner_group.from_label(inner_label));
        for (int& s : word) s = kgens[s - 1];
        return detail::element_from_word(g, word);
    };
    GenSet J;
    for (int s : inner.J.to_vector()) J.insert(kgens[s - 1]);

    std::vector<typename G::element_type> inner_elems;
    for (const auto& lab : inner.labels) inner_elems.push_back(lift(lab));
    std::vector<typename G::element_type> elems;
    for (const auto& d : min_coset_reps(g, K))
        for (const auto& z : inner_elems) elems.push_back(g.mul(d, z));

    IdealTable t = build_from_elements(g, J, elems);
    if (t.size() != static_cast<int>(elems.size())) throw std::logic_error("D_K I_0 is not suffix-closed");
    t.meta = inner.meta;
    t.meta.family = "induced";
    t.meta.K = K;
    return t;
}

/// Outcome of validate(): "OK" or the first violated invariant.
struct ValidationReport {
    bool ok = true;
    std::string code = "OK";
    std::string detail;
};

/// Checks every IdealTable invariant against the group itself.
template <CoxeterGroup G>
ValidationReport validate(const G& g, const IdealTable& t) {
    auto fail = [](std::string code, std::string detail) { return ValidationReport{false, std::move(code), std::move(detail)}; };
    const int d = t.size();
    if (!(t.spec == g.spec())) return fail("SpecMismatch", "table was built for " + t.spec.name());
    if (d == 0) return fail("Empty", "ideal has no elements");
    if (static_cast<int>(t.lengths.size()) != d || static_cast<int>(t.descents.size()) != d ||
        static_cast<int>(t.entries.size()) != g.rank())
        return fail("Malformed", "array sizes disagree");

    std::vector<typename G::element_type> elems;
    std::unordered_map<typename G::element_type, int> index;
    for (int j = 0; j < d; ++j) {
        auto w = g.from_label(t.labels[j]);
        if (!index.emplace(w, j).second) return fail("Duplicate", "element " + std::to_string(j + 1) + " repeated");
        if (g.length(w) != t.lengths[j]) return fail("BadLength", "element " + std::to_string(j + 1));
        if (j > 0 && t.lengths[j] < t.lengths[j - 1]) return fail("NotLengthOrdered", "at element " + std::to_string(j + 1));
        elems.push_back(std::move(w));
    }
    if (t.lengths[0] != 0) return fail("NoIdentity", "first element is not the identity");
    for (int j = 0; j < d; ++j)
        for (int s : t.J.to_vector())
            if (g.right_descends(elems[j], s))
                return fail("JNotInPos", "s" + std::to_string(s) + " is a right descent of element " + std::to_string(j + 1));
    for (int j = 0; j < d; ++j)
        for (int s = 1; s <= g.rank(); ++s)
            if (g.left_descends(s, elems[j]) && !index.count(g.left_mul(s, elems[j])))
                return fail("NotSuffixClosed", "s" + std::to_string(s) + " times element " + std::to_string(j + 1) + " is missing");
    for (int j = 0; j < d; ++j) {
        GenSet desc;
        for (int s = 1; s <= g.rank(); ++s) {
            const IdealEntry& e = t.entry(s, j);
            const auto x = g.left_mul(s, elems[j]);
            const auto it = index.find(x);
            const std::string where = "(s" + std::to_string(s) + ", element " + std::to_string(j + 1) + ")";
            IdealEntry expect;
            if (g.left_descends(s, elems[j]))
                expect = {AscentClass::StrongDesc, it->second};
            else if (it != index.end())
                expect = {AscentClass::StrongAsc, it->second};
            else if (!in_min_coset_reps(g, x, t.J))
                expect = {AscentClass::WeakDesc, -1};
            else
                expect = {AscentClass::WeakAsc, -1};
            if (!(e == expect)) return fail("BadClassification", where);
            if (e.strong() && !(t.entry(s, e.partner).partner == j)) return fail("PartnerMismatch", where);
            if (e.descent()) desc.insert(s);
        }
        if (!(desc == t.descents[j])) return fail("BadDescents", "element " + std::to_string(j + 1));
    }
    if (!(t.descents[0] == t.J)) return fail("BadDescents", "descents of the identity differ from J");
    return {};
}

/// validate() with the group reconstructed from the table's Coxeter spec.
inline ValidationReport validate(const IdealTable& t) {
    if (t.spec.kind() == CoxeterKind::TypeA) return validate(SymmetricGroup(t.spec.param()), t);
    return validate(DihedralGroup(t.spec.param()), t);
}

}  // namespace wgraph
