#pragma once

// Exact arithmetic in Z[q, q^-1] and in its field of fractions.

#include "wgraph/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wgraph {

/// Raised by LaurentPoly::exact_div_q when the argument is not q times an
/// element of Z[q]. Inside the engine this means the q-table is corrupt.
struct NonDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

/// Sparse integer Laurent polynomial in q.
///
/// Terms are kept sorted by exponent with no zero coefficients, so two equal
/// polynomials always have identical term lists.
class LaurentPoly {
public:
    struct Term {
        Integer coeff;
        std::int32_t exp;
        friend bool operator==(const Term& a, const Term& b) { return a.exp == b.exp && a.coeff == b.coeff; }
    };

    LaurentPoly() = default;
    LaurentPoly(int c) : LaurentPoly(Integer(c)) {}
    LaurentPoly(const Integer& c) {
        if (!c.is_zero()) terms_.push_back({c, 0});
    }

    static LaurentPoly monomial(const Integer& c, int exp) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_.push_back({c, exp});
        return p;
    }
    static LaurentPoly q(int exp = 1) { return monomial(1, exp); }

    /// Builds from (exponent, coefficient) pairs in any order; duplicates add up.
    static LaurentPoly from_pairs(const std::vector<std::pair<int, Integer>>& pairs) {
        LaurentPoly p;
        for (const auto& [e, c] : pairs) p += monomial(c, e);
        return p;
    }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    int min_exp() const { return terms_.empty() ? 0 : terms_.front().exp; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.back().exp; }

    Integer coeff(int exp) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                                   [](const Term& t, int e) { return t.exp < e; });
        return (it != terms_.end() && it->exp == exp) ? it->coeff : Integer();
    }
    Integer constant_term() const { return coeff(0); }

    /// True iff every exponent is at least 1 (the zero polynomial qualifies).
    bool in_qA_plus() const { return terms_.empty() || terms_.front().exp >= 1; }
    /// True iff no exponent is negative.
    bool in_A_plus() const { return terms_.empty() || terms_.front().exp >= 0; }

    /// q -> q^-1.
    LaurentPoly bar() const {
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.push_back({it->coeff, -it->exp});
        return r;
    }

    /// Multiplication by q^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.exp += k;
        return r;
    }

    /// p / q for p in qZ[q]; throws NonDivisible otherwise.
    LaurentPoly exact_div_q() const {
        if (!in_qA_plus()) throw NonDivisible("exact_div_q: polynomial " + str() + " is not in qZ[q]");
        return shifted(-1);
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        if (o.terms_.empty()) return *this;
        if (terms_.empty()) return *this = o;
        *this = merge(*this, o, false);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        if (o.terms_.empty()) return *this;
        *this = merge(*this, o, true);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.size() == 1) return b.scaled_shift(a.terms_[0].coeff, a.terms_[0].exp);
        if (b.size() == 1) return a.scaled_shift(b.terms_[0].coeff, b.terms_[0].exp);
        // Dense accumulation over the exponent window; degrees here are small.
        const int lo = a.min_exp() + b.min_exp();
        const int hi = a.max_exp() + b.max_exp();
        std::vector<Integer> acc(static_cast<std::size_t>(hi - lo + 1));
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) acc[x.exp + y.exp - lo] += x.coeff * y.coeff;
        LaurentPoly r;
        for (int e = lo; e <= hi; ++e)
            if (!acc[e - lo].is_zero()) r.terms_.push_back({std::move(acc[e - lo]), e});
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    /// c * q^k * this.
    LaurentPoly scaled_shift(const Integer& c, int k) const {
        if (c.is_zero()) return {};
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.exp + k});
        return r;
    }

    /// this += c * q^k * o, without building the temporary product.
    void add_scaled(const Integer& c, int k, const LaurentPoly& o) {
        if (c.is_zero() || o.is_zero()) return;
        *this += o.scaled_shift(c, k);
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Human-readable form, highest power first: "q^3+q", "-q^-1", "q^2-2+q^-2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Integer c = it->coeff;
            const bool neg = c.sign() < 0;
            if (neg) c = -c;
            if (neg)
                os << '-';
            else if (!first)
                os << '+';
            const bool unit = c == Integer(1);
            if (it->exp == 0) {
                os << c;
            } else {
                if (!unit) os << c;
                os << 'q';
                if (it->exp != 1) os << '^' << it->exp;
            }
            first = false;
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

private:
    static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
        LaurentPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->exp < j->exp)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->exp < i->exp) {
                r.terms_.push_back({subtract ? -j->coeff : j->coeff, j->exp});
                ++j;
            } else {
                Integer c = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
                if (!c.is_zero()) r.terms_.push_back({std::move(c), i->exp});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

namespace detail {

// Dense polynomial in Z[q] with ascending coefficients and no trailing zeros.
using Dense = std::vector<Integer>;

inline void trim(Dense& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Splits p = q^shift * dense with dense(0) != 0.
inline std::pair<int, Dense> to_dense(const LaurentPoly& p) {
    Dense d;
    if (p.is_zero()) return {0, d};
    const int lo = p.min_exp();
    d.resize(static_cast<std::size_t>(p.max_exp() - lo + 1));
    for (const auto& t : p.terms()) d[t.exp - lo] = t.coeff;
    return {lo, d};
}

inline LaurentPoly from_dense(const Dense& d, int shift) {
    std::vector<std::pair<int, Integer>> pairs;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) pairs.emplace_back(static_cast<int>(i) + shift, d[i]);
    return LaurentPoly::from_pairs(pairs);
}

inline Integer content(const Dense& p) {
    Integer g;
    for (const auto& c : p) {
        g = gcd(g, c);
        if (g == Integer(1)) break;
    }
    return g;
}

inline Dense divide_scalar(Dense p, const Integer& c) {
    for (auto& x : p) x = x / c;
    return p;
}

inline Dense primitive(const Dense& p) {
    if (p.empty()) return p;
    Integer c = content(p);
    if (p.back().sign() < 0) c = -c;
    return divide_scalar(p, c);
}

// Pseudo-remainder of a by b (b nonzero).
inline Dense prem(Dense a, const Dense& b) {
    const Integer& lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        const Integer la = a.back();
        const std::size_t off = a.size() - b.size();
        for (auto& x : a) x *= lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + off] -= la * b[i];
        trim(a);
    }
    return a;
}

// Exact division a / b over Z[q]; throws if b does not divide a.
inline Dense exact_divide(Dense a, const Dense& b) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    if (a.size() < b.size()) {
        if (a.empty()) return {};
        throw std::logic_error("exact_divide: not divisible");
    }
    Dense quot(a.size() - b.size() + 1);
    const Integer& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t off = a.size() - b.size();
        if (!(a.back() % lb).is_zero()) throw std::logic_error("exact_divide: not divisible");
        Integer c = a.back() / lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + off] -= c * b[i];
        quot[off] = c;
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("exact_divide: not divisible");
    return quot;
}

// gcd over Z[q], normalized with positive leading coefficient.
inline Dense gcd(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) {
        Dense r = a.empty() ? b : a;
        if (!r.empty() && r.back().sign() < 0)
            for (auto& x : r) x = -x;
        return r;
    }
    const Integer c = gcd(content(a), content(b));
    Dense x = primitive(a), y = primitive(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        Dense r = prem(x, y);
        x = std::move(y);
        y = primitive(r);
    }
    x = primitive(x);
    for (auto& v : x) v *= c;
    return x;
}

}  // namespace detail

/// Element of the fraction field of Z[q, q^-1].
///
/// Canonical form: gcd(num, den) is a unit, den has minimal exponent 0 and a
/// positive leading coefficient. Equal values therefore compare equal
/// member-wise.
class RationalFn {
public:
    RationalFn() : num_(), den_(1) {}
    RationalFn(int c) : num_(c), den_(1) {}
    RationalFn(const LaurentPoly& p) : num_(p), den_(1) {}
    RationalFn(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) { normalize(); }

    const LaurentPoly& num() const noexcept { return num_; }
    const LaurentPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    RationalFn inv() const {
        if (num_.is_zero()) throw DivisionByZero("RationalFn::inv of zero");
        return RationalFn(den_, num_);
    }
    RationalFn bar() const { return RationalFn(num_.bar(), den_.bar()); }
    RationalFn operator-() const {
        RationalFn r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
        return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.den_ == LaurentPoly(1) && b.den_ == LaurentPoly(1)) return RationalFn(a.num_ * b.num_);
        return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inv(); }
    RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
    RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }

    friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

    std::string str() const {
        if (den_ == LaurentPoly(1)) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const RationalFn& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("RationalFn with zero denominator");
        if (num_.is_zero()) {
            den_ = LaurentPoly(1);
            return;
        }
        auto [ns, nd] = detail::to_dense(num_);
        auto [ds, dd] = detail::to_dense(den_);
        detail::Dense g = detail::gcd(nd, dd);
        if (dd.back().sign() < 0)
            for (auto& x : g) x = -x;
        nd = detail::exact_divide(nd, g);
        dd = detail::exact_divide(dd, g);
        num_ = detail::from_dense(nd, ns - ds);
        den_ = detail::from_dense(dd, 0);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

}  // namespace wgraph
