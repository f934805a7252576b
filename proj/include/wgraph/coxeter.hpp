#pragma once

// Coxeter-group backends: the symmetric group S_n (type A_{n-1}) in one-line
// notation, and the dihedral group I_2(m) as alternating reduced words.
//
// Both backends expose the same member interface (see the CoxeterGroup
// concept below) so the ideal constructors can be written once. Generators
// are numbered from 1, as s_1, ..., s_r.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wgraph {

struct UnsupportedType : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Set of simple reflections {s_i}, stored as a bitmask over i in [1, 63].
class GenSet {
public:
    constexpr GenSet() = default;
    GenSet(std::initializer_list<int> gens) {
        for (int s : gens) insert(s);
    }
    static GenSet from_vector(const std::vector<int>& gens) {
        GenSet g;
        for (int s : gens) g.insert(s);
        return g;
    }
    /// {s_1, ..., s_rank}.
    static GenSet all(int rank) {
        GenSet g;
        g.bits_ = rank >= 63 ? ~std::uint64_t{1} : ((std::uint64_t{1} << (rank + 1)) - 2);
        return g;
    }
    static constexpr GenSet from_bits(std::uint64_t bits) {
        GenSet g;
        g.bits_ = bits;
        return g;
    }

    void insert(int s) {
        if (s < 1 || s > 63) throw std::out_of_range("generator index out of range: " + std::to_string(s));
        bits_ |= std::uint64_t{1} << s;
    }
    void erase(int s) { bits_ &= ~(std::uint64_t{1} << s); }
    constexpr bool contains(int s) const noexcept { return s >= 1 && s <= 63 && ((bits_ >> s) & 1U); }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    int size() const noexcept { return std::popcount(bits_); }
    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool subset_of(GenSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }
    /// Largest generator index present, or 0.
    int max() const noexcept { return bits_ == 0 ? 0 : 63 - std::countl_zero(bits_); }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) v.push_back(std::countr_zero(b));
        return v;
    }
    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (int i : to_vector()) {
            if (!first) s += ',';
            s += 's' + std::to_string(i);
            first = false;
        }
        return s + "}";
    }

    friend constexpr GenSet operator|(GenSet a, GenSet b) noexcept { return from_bits(a.bits_ | b.bits_); }
    friend constexpr GenSet operator&(GenSet a, GenSet b) noexcept { return from_bits(a.bits_ & b.bits_); }
    friend constexpr GenSet operator-(GenSet a, GenSet b) noexcept { return from_bits(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(GenSet a, GenSet b) noexcept { return a.bits_ == b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

enum class CoxeterKind { TypeA, Dihedral };

/// Coxeter system description: kind, rank and Coxeter matrix m(s, s').
class CoxeterSpec {
public:
    static CoxeterSpec type_a(int n) {
        if (n < 1) throw std::invalid_argument("type A requires n >= 1");
        if (n > 64) throw std::invalid_argument("type A supports n <= 64");
        CoxeterSpec c;
        c.kind_ = CoxeterKind::TypeA;
        c.param_ = n;
        c.rank_ = n - 1;
        c.fill([](int i, int j) { return std::abs(i - j) == 1 ? 3 : 2; });
        return c;
    }
    static CoxeterSpec dihedral(int m) {
        if (m < 3) throw std::invalid_argument("dihedral backend requires 3 <= m");
        CoxeterSpec c;
        c.kind_ = CoxeterKind::Dihedral;
        c.param_ = m;
        c.rank_ = 2;
        c.fill([m](int, int) { return m; });
        return c;
    }
    /// Recognizes a Coxeter matrix (1-indexed rows given 0-indexed here) as one
    /// of the supported backends; anything else is rejected.
    static CoxeterSpec from_matrix(const std::vector<std::vector<int>>& m) {
        const int r = static_cast<int>(m.size());
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(m[i].size()) != r) throw std::invalid_argument("Coxeter matrix is not square");
            if (m[i][i] != 1) throw std::invalid_argument("Coxeter matrix needs m(s,s) = 1");
            for (int j = 0; j < r; ++j)
                if (i != j && (m[i][j] != m[j][i] || m[i][j] < 2))
                    throw std::invalid_argument("Coxeter matrix must be symmetric with off-diagonal >= 2");
        }
        if (r == 2 && m[0][1] >= 4) return dihedral(m[0][1]);
        bool path = true;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (i != j && m[i][j] != (std::abs(i - j) == 1 ? 3 : 2)) path = false;
        if (path) return type_a(r + 1);
        throw UnsupportedType("only type A and dihedral Coxeter matrices are supported");
    }

    CoxeterKind kind() const noexcept { return kind_; }
    /// n for type A, m for dihedral.
    int param() const noexcept { return param_; }
    int rank() const noexcept { return rank_; }
    /// m(s_i, s_j) for 1 <= i, j <= rank.
    int m(int i, int j) const { return matrix_.at(static_cast<std::size_t>((i - 1) * rank_ + (j - 1))); }
    std::string name() const {
        return kind_ == CoxeterKind::TypeA ? "A" + std::to_string(rank_) + " (S" + std::to_string(param_) + ")"
                                           : "I2(" + std::to_string(param_) + ")";
    }
    friend bool operator==(const CoxeterSpec& a, const CoxeterSpec& b) {
        return a.kind_ == b.kind_ && a.param_ == b.param_;
    }

private:
    template <class F>
    void fill(F f) {
        matrix_.assign(static_cast<std::size_t>(rank_ * rank_), 1);
        for (int i = 1; i <= rank_; ++i)
            for (int j = 1; j <= rank_; ++j)
                if (i != j) matrix_[static_cast<std::size_t>((i - 1) * rank_ + (j - 1))] = f(i, j);
    }

    CoxeterKind kind_ = CoxeterKind::TypeA;
    int param_ = 1;
    int rank_ = 0;
    std::vector<int> matrix_;
};

/// Permutation of [1, n] in one-line notation: images()[i-1] = w(i).
///
/// Products use the left-operator convention, (uw)(i) = u(w(i)).
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images) : images_(std::move(images)) {
        const int n = size();
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (int v : images_) {
            if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
            seen[v] = true;
        }
    }
    static Perm identity(int n) {
        Perm p;
        p.images_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p.images_[i] = i + 1;
        return p;
    }

    int size() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<int>& images() const noexcept { return images_; }

    /// Position of value v, i.e. w^{-1}(v).
    int preimage(int v) const {
        for (int i = 0; i < size(); ++i)
            if (images_[i] == v) return i + 1;
        throw std::out_of_range("value not in permutation");
    }
    Perm inverse() const {
        Perm r;
        r.images_.resize(images_.size());
        for (int i = 0; i < size(); ++i) r.images_[images_[i] - 1] = i + 1;
        return r;
    }
    friend Perm operator*(const Perm& u, const Perm& w) {
        Perm r;
        r.images_.resize(w.images_.size());
        for (int i = 0; i < w.size(); ++i) r.images_[i] = u.images_[w.images_[i] - 1];
        return r;
    }

    int inversions() const {
        int c = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (images_[i] > images_[j]) ++c;
        return c;
    }

    friend bool operator==(const Perm& a, const Perm& b) = default;
    friend auto operator<=>(const Perm& a, const Perm& b) = default;

private:
    friend class SymmetricGroup;
    std::vector<int> images_;
};

/// Element of I_2(m): an alternating reduced word of length len beginning
/// with generator first (1 or 2). The identity has len 0 and first 0; the
/// longest element is stored with first 1.
struct DihedralElement {
    int len = 0;
    int first = 0;
    friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
    friend auto operator<=>(const DihedralElement&, const DihedralElement&) = default;
};

}  // namespace wgraph

template <>
struct std::hash<wgraph::Perm> {
    std::size_t operator()(const wgraph::Perm& p) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (int v : p.images()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
        return h;
    }
};

template <>
struct std::hash<wgraph::DihedralElement> {
    std::size_t operator()(const wgraph::DihedralElement& e) const noexcept {
        return static_cast<std::size_t>(e.len) * 4 + static_cast<std::size_t>(e.first);
    }
};

namespace wgraph {

/// Member interface shared by the group backends.
template <class G>
concept CoxeterGroup = requires(const G& g, const typename G::element_type& w, int s) {
    { g.spec() } -> std::convertible_to<CoxeterSpec>;
    { g.rank() } -> std::convertible_to<int>;
    { g.identity() } -> std::same_as<typename G::element_type>;
    { g.longest() } -> std::same_as<typename G::element_type>;
    { g.left_mul(s, w) } -> std::same_as<typename G::element_type>;
    { g.right_mul(w, s) } -> std::same_as<typename G::element_type>;
    { g.mul(w, w) } -> std::same_as<typename G::element_type>;
    { g.inverse(w) } -> std::same_as<typename G::element_type>;
    { g.length(w) } -> std::convertible_to<int>;
    { g.left_descends(s, w) } -> std::convertible_to<bool>;
    { g.right_descends(w, s) } -> std::convertible_to<bool>;
    { g.bruhat_leq(w, w) } -> std::convertible_to<bool>;
    { g.elements() } -> std::same_as<std::vector<typename G::element_type>>;
    { g.label(w) } -> std::same_as<std::vector<int>>;
    { g.reduced_word(w) } -> std::same_as<std::vector<int>>;
};

/// S_n with generators s_i = (i, i+1), i = 1..n-1.
class SymmetricGroup {
public:
    using element_type = Perm;

    explicit SymmetricGroup(int n) : spec_(CoxeterSpec::type_a(n)) {}

    const CoxeterSpec& spec() const noexcept { return spec_; }
    int n() const noexcept { return spec_.param(); }
    int rank() const noexcept { return spec_.rank(); }

    Perm identity() const { return Perm::identity(n()); }
    Perm longest() const {
        Perm p;
        for (int i = n(); i >= 1; --i) p.images_.push_back(i);
        return p;
    }

    /// s_s * w: swaps the values s and s+1.
    Perm left_mul(int s, const Perm& w) const {
        check_gen(s);
        Perm r = w;
        for (int& v : r.images_) {
            if (v == s)
                v = s + 1;
            else if (v == s + 1)
                v = s;
        }
        return r;
    }
    /// w * s_s: swaps the positions s and s+1.
    Perm right_mul(const Perm& w, int s) const {
        check_gen(s);
        Perm r = w;
        std::swap(r.images_[s - 1], r.images_[s]);
        return r;
    }
    Perm mul(const Perm& u, const Perm& w) const { return u * w; }
    Perm inverse(const Perm& w) const { return w.inverse(); }

    int length(const Perm& w) const { return w.inversions(); }

    /// l(s w) < l(w) iff w^{-1}(s) > w^{-1}(s+1).
    bool left_descends(int s, const Perm& w) const {
        check_gen(s);
        for (int v : w.images_) {
            if (v == s) return false;
            if (v == s + 1) return true;
        }
        return false;
    }
    /// l(w s) < l(w) iff w(s) > w(s+1).
    bool right_descends(const Perm& w, int s) const {
        check_gen(s);
        return w.images_[s - 1] > w.images_[s];
    }

    /// Bruhat order by the rank-matrix criterion: u <= w iff for every prefix
    /// [1, i] and threshold j, u has no more values >= j in the prefix than w.
    bool bruhat_leq(const Perm& u, const Perm& w) const {
        const int N = n();
        if (u.size() != N || w.size() != N) throw std::invalid_argument("bruhat_leq: size mismatch");
        std::vector<int> cu(static_cast<std::size_t>(N) + 2, 0), cw(static_cast<std::size_t>(N) + 2, 0);
        for (int i = 0; i < N; ++i) {
            for (int j = 1; j <= u.images_[i]; ++j) ++cu[j];
            for (int j = 1; j <= w.images_[i]; ++j) ++cw[j];
            for (int j = 1; j <= N; ++j)
                if (cu[j] > cw[j]) return false;
        }
        return true;
    }

    /// All n! permutations in lexicographic order.
    std::vector<Perm> elements() const {
        std::vector<Perm> out;
        Perm p = identity();
        do {
            out.push_back(p);
        } while (std::next_permutation(p.images_.begin(), p.images_.end()));
        return out;
    }

    std::vector<int> label(const Perm& w) const { return w.images(); }
    Perm from_label(const std::vector<int>& images) const {
        Perm p(images);
        if (p.size() != n()) throw std::invalid_argument("permutation has wrong degree");
        return p;
    }

    /// A reduced word s_{a_1} ... s_{a_k} for w (leftmost letter first).
    std::vector<int> reduced_word(Perm w) const {
        std::vector<int> word;
        for (;;) {
            int s = 0;
            for (int i = 1; i <= rank() && s == 0; ++i)
                if (left_descends(i, w)) s = i;
            if (s == 0) break;
            word.push_back(s);
            w = left_mul(s, w);
        }
        return word;
    }
    Perm from_word(const std::vector<int>& word) const {
        Perm w = identity();
        for (auto it = word.rbegin(); it != word.rend(); ++it) w = left_mul(*it, w);
        return w;
    }

private:
    void check_gen(int s) const {
        if (s < 1 || s > rank()) throw std::out_of_range("generator s" + std::to_string(s) + " out of range");
    }
    CoxeterSpec spec_;
};

/// I_2(m) with generators s_1, s_2 and (s_1 s_2)^m = 1.
class DihedralGroup {
public:
    using element_type = DihedralElement;

    explicit DihedralGroup(int m) : spec_(CoxeterSpec::dihedral(m)) {}

    const CoxeterSpec& spec() const noexcept { return spec_; }
    int m() const noexcept { return spec_.param(); }
    int rank() const noexcept { return 2; }

    DihedralElement identity() const { return {}; }
    DihedralElement longest() const { return {m(), 1}; }

    DihedralElement left_mul(int s, const DihedralElement& w) const {
        check_gen(s);
        if (w.len == 0) return make(1, s);
        if (left_descends(s, w)) return make(w.len - 1, other(s));
        return make(w.len + 1, s);
    }
    DihedralElement right_mul(const DihedralElement& w, int s) const {
        check_gen(s);
        if (w.len == 0) return make(1, s);
        if (right_descends(w, s)) {
            // Drop the last letter; for the longest element pick the word ending in s.
            const int first = w.len == m() ? (m() % 2 == 1 ? s : other(s)) : w.first;
            return make(w.len - 1, first);
        }
        return make(w.len + 1, w.first);
    }
    DihedralElement mul(const DihedralElement& u, const DihedralElement& w) const {
        DihedralElement r = w;
        const auto word = reduced_word(u);
        for (auto it = word.rbegin(); it != word.rend(); ++it) r = left_mul(*it, r);
        return r;
    }
    DihedralElement inverse(const DihedralElement& w) const {
        if (w.len == 0 || w.len == m()) return w;
        return make(w.len, last(w));
    }

    int length(const DihedralElement& w) const { return w.len; }
    bool left_descends(int s, const DihedralElement& w) const {
        check_gen(s);
        return w.len > 0 && (w.len == m() || w.first == s);
    }
    bool right_descends(const DihedralElement& w, int s) const {
        check_gen(s);
        return w.len > 0 && (w.len == m() || last(w) == s);
    }
    /// In a finite dihedral group u <= w iff u = w or l(u) < l(w).
    bool bruhat_leq(const DihedralElement& u, const DihedralElement& w) const { return u == w || u.len < w.len; }

    std::vector<DihedralElement> elements() const {
        std::vector<DihedralElement> out{identity()};
        for (int k = 1; k < m(); ++k) {
            out.push_back({k, 1});
            out.push_back({k, 2});
        }
        out.push_back(longest());
        return out;
    }

    std::vector<int> label(const DihedralElement& w) const { return reduced_word(w); }
    DihedralElement from_label(const std::vector<int>& word) const { return from_word(word); }

    std::vector<int> reduced_word(const DihedralElement& w) const {
        std::vector<int> word;
        int s = w.first;
        for (int i = 0; i < w.len; ++i) {
            word.push_back(s);
            s = other(s);
        }
        return word;
    }
    DihedralElement from_word(const std::vector<int>& word) const {
        DihedralElement w;
        for (auto it = word.rbegin(); it != word.rend(); ++it) w = left_mul(*it, w);
        return w;
    }

private:
    static int other(int s) noexcept { return 3 - s; }
    int last(const DihedralElement& w) const noexcept { return w.len % 2 == 1 ? w.first : other(w.first); }
    DihedralElement make(int len, int first) const {
        if (len == 0) return {};
        if (len == m()) return longest();
        return {len, first};
    }
    void check_gen(int s) const {
        if (s != 1 && s != 2) throw std::out_of_range("dihedral generator must be 1 or 2");
    }
    CoxeterSpec spec_;
};

static_assert(CoxeterGroup<SymmetricGroup>);
static_assert(CoxeterGroup<DihedralGroup>);

// ---------------------------------------------------------------------------
// Backend-independent order and coset machinery.

template <CoxeterGroup G>
typename G::element_type apply_gen(const G& g, int s, const typename G::element_type& w) {
    return g.left_mul(s, w);
}

/// u <=_L w (u is a suffix of w): l(w u^{-1}) = l(w) - l(u).
template <CoxeterGroup G>
bool suffix_leq(const G& g, const typename G::element_type& u, const typename G::element_type& w) {
    return g.length(g.mul(w, g.inverse(u))) == g.length(w) - g.length(u);
}

/// w is in D_J: no s in J is a right descent.
template <CoxeterGroup G>
bool in_min_coset_reps(const G& g, const typename G::element_type& w, GenSet J) {
    for (int s : J.to_vector())
        if (g.right_descends(w, s)) return false;
    return true;
}

/// w = d u with d in D_J, u in W_J and l(w) = l(d) + l(u).
template <CoxeterGroup G>
std::pair<typename G::element_type, typename G::element_type> coset_decompose(const G& g,
                                                                             const typename G::element_type& w,
                                                                             GenSet J) {
    auto d = w;
    auto u = g.identity();
    const auto gens = J.to_vector();
    for (bool again = true; again;) {
        again = false;
        for (int s : gens) {
            if (g.right_descends(d, s)) {
                d = g.right_mul(d, s);
                u = g.left_mul(s, u);
                again = true;
            }
        }
    }
    return {d, u};
}

/// Pos(X): generators that are right ascents of every element of X.
template <CoxeterGroup G>
GenSet pos_set(const G& g, const std::vector<typename G::element_type>& xs) {
    if (xs.empty()) throw std::invalid_argument("pos_set requires a nonempty set");
    GenSet out;
    for (int s = 1; s <= g.rank(); ++s) {
        bool ok = true;
        for (const auto& x : xs)
            if (g.right_descends(x, s)) {
                ok = false;
                break;
            }
        if (ok) out.insert(s);
    }
    return out;
}

/// w_J, the longest element of W_J.
template <CoxeterGroup G>
typename G::element_type longest_element(const G& g, GenSet J) {
    auto w = g.identity();
    const auto gens = J.to_vector();
    for (bool again = true; again;) {
        again = false;
        for (int s : gens)
            if (!g.left_descends(s, w)) {
                w = g.left_mul(s, w);
                again = true;
            }
    }
    return w;
}

/// d_J, the unique element of D_J in the coset w_S W_J.
template <CoxeterGroup G>
typename G::element_type min_coset_rep_longest(const G& g, GenSet J) {
    return coset_decompose(g, g.longest(), J).first;
}

/// D_J, in the group's enumeration order.
template <CoxeterGroup G>
std::vector<typename G::element_type> min_coset_reps(const G& g, GenSet J) {
    std::vector<typename G::element_type> out;
    for (const auto& w : g.elements())
        if (in_min_coset_reps(g, w, J)) out.push_back(w);
    return out;
}

/// Elements of W_J, generated from the identity by left multiplication.
template <CoxeterGroup G>
std::vector<typename G::element_type> parabolic_subgroup(const G& g, GenSet J) {
    std::vector<typename G::element_type> out{g.identity()};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int s : J.to_vector()) {
            auto x = g.left_mul(s, out[i]);
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
    return out;
}

}  // namespace wgraph
