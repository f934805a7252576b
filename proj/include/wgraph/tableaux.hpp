#pragma once

// Partitions, Young tableaux and the bijection w <-> w * tab_lambda between
// S_n and lambda-tableaux. Boxes are 1-indexed (row, column).

#include "wgraph/coxeter.hpp"
#include "wgraph/integer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wgraph {

struct ShapeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("partition needs at least one part");
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    int rows() const noexcept { return static_cast<int>(parts_.size()); }
    int row_length(int i) const { return parts_.at(static_cast<std::size_t>(i - 1)); }
    int n() const {
        int s = 0;
        for (int p : parts_) s += p;
        return s;
    }
    /// Length of column j.
    int column_length(int j) const {
        int c = 0;
        for (int p : parts_)
            if (p >= j) ++c;
        return c;
    }
    Partition conjugate() const {
        std::vector<int> c;
        for (int j = 1; j <= parts_.front(); ++j) c.push_back(column_length(j));
        return Partition(c);
    }
    /// Number of standard tableaux, by the hook-length formula.
    Integer hook_length_count() const {
        Integer num = 1, den = 1;
        for (int k = 2; k <= n(); ++k) num *= Integer(k);
        for (int i = 1; i <= rows(); ++i)
            for (int j = 1; j <= row_length(i); ++j)
                den *= Integer(row_length(i) - j + column_length(j) - i + 1);
        return num / den;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + ")";
    }
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// All partitions of n, in reverse lexicographic order ((n) first).
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    if (n >= 1) rec(rec, n, n);
    return out;
}

/// A lambda-tableau: a bijection from the boxes of [lambda] to [1, n].
class Tableau {
public:
    Tableau() = default;
    Tableau(Partition shape, std::vector<std::vector<int>> rows) : shape_(std::move(shape)), rows_(std::move(rows)) {
        if (static_cast<int>(rows_.size()) != shape_.rows()) throw ShapeMismatch("tableau rows do not match shape");
        const int n = shape_.n();
        row_of_.assign(static_cast<std::size_t>(n) + 1, 0);
        col_of_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 1; i <= shape_.rows(); ++i) {
            if (static_cast<int>(rows_[i - 1].size()) != shape_.row_length(i))
                throw ShapeMismatch("tableau row length does not match shape");
            for (int j = 1; j <= shape_.row_length(i); ++j) {
                const int v = rows_[i - 1][j - 1];
                if (v < 1 || v > n || row_of_[v] != 0) throw std::invalid_argument("tableau entries must be a bijection onto [1,n]");
                row_of_[v] = i;
                col_of_[v] = j;
            }
        }
    }

    const Partition& shape() const noexcept { return shape_; }
    const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }
    int n() const { return shape_.n(); }
    int at(int i, int j) const { return rows_.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1)); }
    int row_of(int v) const { return row_of_.at(static_cast<std::size_t>(v)); }
    int col_of(int v) const { return col_of_.at(static_cast<std::size_t>(v)); }

    bool is_row_standard() const {
        for (const auto& r : rows_)
            for (std::size_t j = 1; j < r.size(); ++j)
                if (r[j - 1] > r[j]) return false;
        return true;
    }
    bool is_column_standard() const {
        for (std::size_t i = 1; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < rows_[i].size(); ++j)
                if (rows_[i - 1][j] > rows_[i][j]) return false;
        return true;
    }
    bool is_standard() const { return is_row_standard() && is_column_standard(); }

    /// (w t)(b) = w(t(b)).
    Tableau permuted(const Perm& w) const {
        if (w.size() != n()) throw ShapeMismatch("permutation degree does not match tableau");
        auto r = rows_;
        for (auto& row : r)
            for (int& v : row) v = w(v);
        return Tableau(shape_, std::move(r));
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i) os << '/';
            for (std::size_t j = 0; j < rows_[i].size(); ++j) os << (j ? "," : "") << rows_[i][j];
        }
        return os.str();
    }
    friend bool operator==(const Tableau& a, const Tableau& b) { return a.shape_ == b.shape_ && a.rows_ == b.rows_; }

private:
    Partition shape_;
    std::vector<std::vector<int>> rows_;
    std::vector<int> row_of_;
    std::vector<int> col_of_;
};

/// tab^lambda: rows filled with consecutive numbers.
inline Tableau tab_sup_lambda(const Partition& lambda) {
    std::vector<std::vector<int>> rows;
    int v = 1;
    for (int len : lambda.parts()) {
        rows.emplace_back();
        for (int j = 0; j < len; ++j) rows.back().push_back(v++);
    }
    return Tableau(lambda, rows);
}

/// tab_lambda: columns filled with consecutive numbers.
inline Tableau tab_lambda(const Partition& lambda) {
    std::vector<std::vector<int>> rows;
    for (int len : lambda.parts()) rows.emplace_back(static_cast<std::size_t>(len), 0);
    int v = 1;
    for (int j = 1; j <= lambda.row_length(1); ++j)
        for (int i = 1; i <= lambda.column_length(j); ++i) rows[i - 1][j - 1] = v++;
    return Tableau(lambda, rows);
}

/// The permutation w with w * tab_lambda = t.
inline Perm word_of(const Tableau& t) {
    const Tableau base = tab_lambda(t.shape());
    std::vector<int> images(static_cast<std::size_t>(t.n()));
    for (int i = 1; i <= t.shape().rows(); ++i)
        for (int j = 1; j <= t.shape().row_length(i); ++j) images[base.at(i, j) - 1] = t.at(i, j);
    return Perm(images);
}

/// w * tab_lambda.
inline Tableau tableau_of(const Perm& w, const Partition& lambda) {
    if (w.size() != lambda.n()) throw ShapeMismatch("permutation degree does not match partition");
    return tab_lambda(lambda).permuted(w);
}

/// v_lambda, defined by tab^lambda = v_lambda * tab_lambda.
inline Perm v_lambda(const Partition& lambda) { return word_of(tab_sup_lambda(lambda)); }

/// J_lambda: s_i with i and i+1 in the same column of tab_lambda.
inline GenSet j_lambda(const Partition& lambda) {
    const Tableau t = tab_lambda(lambda);
    GenSet J;
    for (int i = 1; i < lambda.n(); ++i)
        if (t.col_of(i) == t.col_of(i + 1)) J.insert(i);
    return J;
}

/// All standard lambda-tableaux, ordered by length of word_of and then by the
/// one-line notation of word_of.
inline std::vector<Tableau> enumerate_syt(const Partition& lambda) {
    const int n = lambda.n();
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(lambda.rows()));
    std::vector<Tableau> out;
    // Place 1..n one at a time into an addable corner.
    auto rec = [&](auto& self, int v) -> void {
        if (v > n) {
            out.emplace_back(lambda, rows);
            return;
        }
        for (int i = 0; i < lambda.rows(); ++i) {
            const int len = static_cast<int>(rows[i].size());
            if (len == lambda.row_length(i + 1)) continue;
            if (i > 0 && static_cast<int>(rows[i - 1].size()) <= len) continue;
            rows[i].push_back(v);
            self(self, v + 1);
            rows[i].pop_back();
        }
    };
    rec(rec, 1);
    std::vector<std::pair<std::pair<int, Perm>, std::size_t>> keyed;
    for (std::size_t k = 0; k < out.size(); ++k) {
        Perm w = word_of(out[k]);
        keyed.push_back({{w.inversions(), w}, k});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Tableau> sorted;
    for (const auto& kv : keyed) sorted.push_back(out[kv.second]);
    return sorted;
}

enum class AscentClass { StrongAsc, StrongDesc, WeakAsc, WeakDesc };

inline const char* to_string(AscentClass c) {
    switch (c) {
        case AscentClass::StrongAsc: return "SA";
        case AscentClass::StrongDesc: return "SD";
        case AscentClass::WeakAsc: return "WA";
        case AscentClass::WeakDesc: return "WD";
    }
    return "?";
}

/// Position of i+1 relative to i in a standard tableau.
inline AscentClass classify(const Tableau& t, int i) {
    if (i < 1 || i >= t.n()) throw std::out_of_range("classify: index out of range");
    const int r1 = t.row_of(i), c1 = t.col_of(i);
    const int r2 = t.row_of(i + 1), c2 = t.col_of(i + 1);
    if (r1 == r2) return AscentClass::WeakAsc;
    if (c1 == c2) return AscentClass::WeakDesc;
    return c1 < c2 ? AscentClass::StrongAsc : AscentClass::StrongDesc;
}

}  // namespace wgraph
