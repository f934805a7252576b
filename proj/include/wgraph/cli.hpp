#pragma once

// Job runner behind the `wgraph` command: build an ideal, run the engine,
// verify and export. Argument parsing lives in tools/wgraph_cli.cpp.

#include "wgraph/io.hpp"
#include "wgraph/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgraph {

/// Bad or incomplete job parameters; the CLI exits with status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Family { Regular, Parabolic, Specht, Induced, OneDim };
enum class ExportFormat { Json, Dot, Table, None };
enum class VerifyLevel { None, Relations, Full };

struct JobSpec {
    Family family = Family::Regular;
    std::optional<int> n;   // S_n
    std::optional<int> m;   // I_2(m)
    std::vector<int> lambda;
    std::vector<int> J;
    std::vector<int> K;
    ParabolicVariant variant = ParabolicVariant::Psi;
    ExportFormat format = ExportFormat::Json;
    VerifyLevel verify = VerifyLevel::None;
    bool slow_ok = false;
    unsigned threads = 1;
    std::string out;          // empty: stdout
    std::string report;       // verification report JSON; empty: none
    bool stat_max_mu = false;
};

inline constexpr long long kSlowThreshold = 5000;

inline Family parse_family(const std::string& s) {
    if (s == "regular") return Family::Regular;
    if (s == "parabolic") return Family::Parabolic;
    if (s == "specht") return Family::Specht;
    if (s == "induced") return Family::Induced;
    if (s == "onedim") return Family::OneDim;
    throw UsageError("unknown family " + s);
}

/// "3,3,1" -> {3, 3, 1}.
inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: " + s);
        }
        if (used != tok.size()) throw UsageError("not an integer list: " + s);
        out.push_back(v);
    }
    return out;
}

/// WGRAPH_THREADS, or 1.
inline unsigned threads_from_env() {
    if (const char* e = std::getenv("WGRAPH_THREADS")) {
        try {
            const int v = std::stoi(e);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

namespace detail {

inline GenSet genset_checked(const std::vector<int>& v, int rank, const char* what) {
    for (int s : v)
        if (s < 1 || s > rank) throw UsageError(std::string(what) + " contains s" + std::to_string(s) + ", outside 1.." + std::to_string(rank));
    return GenSet::from_vector(v);
}

inline long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

/// |W_J| for J a set of generators of S_n: a product over runs of
/// consecutive generators.
inline long long type_a_parabolic_order(const std::vector<int>& J) {
    std::vector<int> v = J;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    long long order = 1;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t k = i + 1;
        while (k < v.size() && v[k] == v[k - 1] + 1) ++k;
        order *= detail::factorial(static_cast<int>(k - i) + 1);
        i = k;
    }
    return order;
}

/// Ideal size estimate used for the slow-job gate. Exact except for the
/// induced family, where the inner ideal is bounded by its group order.
inline long long estimated_size(const JobSpec& j) {
    if (j.family == Family::OneDim) return 1;
    if (j.family == Family::Specht) {
        const Integer c = Partition(j.lambda).hook_length_count();
        return c.fits_int64() ? c.to_int64() : (1LL << 62);
    }
    if (j.m) {
        if (j.family != Family::Parabolic) return 2LL * *j.m;
        const long long wj = j.J.empty() ? 1 : j.J.size() == 1 ? 2 : 2LL * *j.m;
        return 2LL * *j.m / wj;
    }
    if (j.n.value_or(1) > 18) return 1LL << 62;
    const long long all = detail::factorial(j.n.value_or(1));
    if (j.family == Family::Parabolic) return all / type_a_parabolic_order(j.J);
    if (j.family == Family::Induced) {
        long long inner = 1;
        if (!j.lambda.empty()) {
            const Integer c = Partition(j.lambda).hook_length_count();
            inner = c.fits_int64() ? c.to_int64() : (1LL << 40);
        }
        return all / type_a_parabolic_order(j.K) * inner;
    }
    return all;
}

struct JobResult {
    int exit_code = 0;
    IdealTable table;
    WGraphData graph;
    Report report;
};

namespace detail {

inline std::string report_json(const Report& r) {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json e{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        j["checks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

template <CoxeterGroup G>
IdealTable build_family(const G& g, const JobSpec& j) {
    const int r = g.rank();
    switch (j.family) {
        case Family::Regular: return regular_ideal(g);
        case Family::Parabolic: return parabolic_ideal(g, genset_checked(j.J, r, "--J"), j.variant);
        case Family::OneDim: {
            const GenSet J1 = genset_checked(j.J, r, "--J");
            return one_dim_ideal(g, J1, GenSet::all(r) - J1);
        }
        default: throw UsageError("family not available for this group");
    }
}

template <CoxeterGroup G>
Report full_checks(const G& g, const IdealTable& t, const WGraphData& wg, const JobSpec& j) {
    InvariantOptions opt;
    opt.parity = j.family == Family::Regular;
    opt.singly_generated = j.family != Family::Induced;
    Report r = structural_invariants(g, t, wg, opt);
    r.add("validate", validate(g, t).ok, validate(g, t).code);
    if (j.family == Family::Regular || j.family == Family::Parabolic) {
        const OracleFamily f = j.family == Family::Regular ? OracleFamily::Regular
                               : j.variant == ParabolicVariant::Psi ? OracleFamily::ParabolicPsi
                                                                    : OracleFamily::ParabolicPhi;
        bool same = false;
        std::string detail;
        try {
            same = bar_oracle(t, f) == wg.q;
        } catch (const SplitFailure& e) {
            detail = e.what();
        }
        r.add("bar-oracle", same, detail);
    }
    return r;
}

}  // namespace detail

/// Builds the ideal and W-graph for a job, verifies and writes the export.
/// Throws UsageError for invalid parameters.
inline JobResult run_job(const JobSpec& j, std::ostream& out, std::ostream& err) {
    if (j.n && j.m) throw UsageError("--n and --m are mutually exclusive");
    if (j.family == Family::Specht) {
        if (j.lambda.empty()) throw UsageError("specht needs --lambda");
        if (j.m) throw UsageError("specht is only defined for S_n");
        try {
            Partition lam(j.lambda);
            if (j.n && *j.n != lam.n()) throw UsageError("--n does not match |lambda|");
        } catch (const UsageError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (j.family == Family::Induced) {
        if (!j.n) throw UsageError("induced needs --n");
        if (j.K.empty() && !j.lambda.empty()) throw UsageError("induced needs --K");
    } else if (!j.n && !j.m) {
        throw UsageError("this family needs --n or --m");
    }
    if (j.n && *j.n < 1) throw UsageError("--n must be positive");
    if (j.m && *j.m < 3) throw UsageError("--m must be at least 3");

    JobSpec job = j;
    if (job.family == Family::Specht && !job.n) job.n = Partition(job.lambda).n();
    const long long est = estimated_size(job);
    if (est > kSlowThreshold && !job.slow_ok)
        throw UsageError("estimated ideal size " + std::to_string(est) + " exceeds " + std::to_string(kSlowThreshold) +
                         "; pass --slow-ok to run anyway");

    JobResult res;
    try {
        if (job.m) {
            DihedralGroup g(*job.m);
            res.table = detail::build_family(g, job);
        } else {
            SymmetricGroup g(*job.n);
            switch (job.family) {
                case Family::Specht: res.table = specht_ideal(Partition(job.lambda)); break;
                case Family::Induced: {
                    const GenSet K = detail::genset_checked(job.K, g.rank(), "--K");
                    const auto kv = K.to_vector();
                    for (std::size_t i = 1; i < kv.size(); ++i)
                        if (kv[i] != kv[i - 1] + 1) throw UsageError("--K must be consecutive generators (a type A parabolic)");
                    SymmetricGroup inner(static_cast<int>(kv.size()) + 1);
                    IdealTable inner_table;
                    if (!job.lambda.empty()) {
                        if (Partition(job.lambda).n() != inner.n()) throw UsageError("|lambda| must be |K| + 1");
                        inner_table = specht_ideal(Partition(job.lambda));
                    } else {
                        GenSet J1;
                        for (int s : job.J) {
                            auto it = std::find(kv.begin(), kv.end(), s);
                            if (it == kv.end()) throw UsageError("--J must be a subset of --K");
                            J1.insert(static_cast<int>(it - kv.begin()) + 1);
                        }
                        inner_table = one_dim_ideal(inner, J1, GenSet::all(inner.rank()) - J1);
                    }
                    res.table = induced_ideal(g, K, inner, inner_table);
                    break;
                }
                default: res.table = detail::build_family(g, job);
            }
        }
    } catch (const UsageError&) {
        throw;
    } catch (const JNotInPos& e) {
        throw UsageError(e.what());
    } catch (const ConjugacyViolation& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const bool need_q = job.format == ExportFormat::Table || job.verify == VerifyLevel::Full;
    if (need_q) {
        res.graph = build_wgraph(res.table, {DescentPolicy::First, job.threads, true}, job.verify == VerifyLevel::Full);
    } else {
        res.graph = wgraph_shell(res.table);
        res.graph.mu = compute_mu_streaming(res.table, job.threads);
    }

    if (job.verify != VerifyLevel::None) {
        res.report = check_representation(res.graph, res.table, job.threads);
        if (job.verify == VerifyLevel::Full) {
            if (job.m)
                res.report.append(detail::full_checks(DihedralGroup(*job.m), res.table, res.graph, job));
            else
                res.report.append(detail::full_checks(SymmetricGroup(*job.n), res.table, res.graph, job));
            if (job.family == Family::Specht && res.table.size() <= 500) {
                res.report.append(char_compare(c_basis_matrices(res.graph, res.table), seminormal_matrices(Partition(job.lambda)),
                                               default_words(res.table.rank())));
            }
        }
        if (!job.report.empty()) {
            std::ofstream rf(job.report);
            if (!rf) throw UsageError("cannot write " + job.report);
            rf << detail::report_json(res.report);
        }
        for (const auto& c : res.report.checks)
            if (!c.pass) err << "verification failed: " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        if (!res.report.ok()) res.exit_code = 1;
    }

    std::string text;
    switch (job.format) {
        case ExportFormat::Json: text = export_json(res.graph); break;
        case ExportFormat::Dot: text = export_dot(res.graph); break;
        case ExportFormat::Table: {
            std::vector<int> order(static_cast<std::size_t>(res.table.size()));
            for (int i = 0; i < res.table.size(); ++i) order[i] = i;
            for (const auto& line : render_c_expansion(res.graph.q, order)) text += line + "\n";
            break;
        }
        case ExportFormat::None: break;
    }
    if (!text.empty()) {
        if (job.out.empty()) {
            out << text;
        } else {
            std::ofstream f(job.out);
            if (!f) throw UsageError("cannot write " + job.out);
            f << text;
        }
    }
    if (job.stat_max_mu) err << "vertices " << res.graph.size() << ", edges " << res.graph.mu.edge_count() << ", max |mu| = " << res.graph.mu.max_abs() << "\n";
    return res;
}

}  // namespace wgraph
