// wgraph <family> [options]: build a W-graph ideal, compute its W-graph,
// optionally verify it, and export JSON, DOT or the c-expansion table.

#include "wgraph/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Construct W-graphs from W-graph ideals"};
    app.require_subcommand(1);

    std::optional<int> n, m;
    std::string lambda, J, K, variant = "psi", format = "json", verify = "none", out, report, stat;
    bool slow_ok = false;
    unsigned threads = 0;

    const std::pair<const char*, const char*> families[] = {
        {"regular", "the whole group"},
        {"parabolic", "the parabolic module for W_J (--J, --variant)"},
        {"specht", "the Specht module of a partition (--lambda)"},
        {"induced", "an ideal induced from S_{|K|+1} over K (--K, with --lambda or --J)"},
        {"onedim", "the one-dimensional ideal with J1 = --J"},
    };
    for (const auto& [name, help] : families) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--n", n, "symmetric group S_n");
        sub->add_option("--m", m, "dihedral group I_2(m)");
        sub->add_option("--lambda", lambda, "partition, comma separated");
        sub->add_option("--J", J, "generator indices, comma separated");
        sub->add_option("--K", K, "generator indices, comma separated");
        sub->add_option("--variant", variant, "parabolic variant")->check(CLI::IsMember({"psi", "phi"}));
        sub->add_option("--export", format, "output format")->check(CLI::IsMember({"json", "dot", "table", "none"}));
        sub->add_option("--verify", verify, "verification level")->check(CLI::IsMember({"none", "relations", "full"}));
        sub->add_flag("--slow-ok", slow_ok, "allow ideals larger than 5000 elements");
        sub->add_option("--threads", threads, "worker threads (default: WGRAPH_THREADS or 1)");
        sub->add_option("--out", out, "output path (default: stdout)");
        sub->add_option("--report", report, "write the verification report JSON here");
        sub->add_option("--stat", stat, "print a statistic to stderr")->check(CLI::IsMember({"max-mu"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        wgraph::JobSpec job;
        job.family = wgraph::parse_family(app.get_subcommands().front()->get_name());
        job.n = n;
        job.m = m;
        job.lambda = wgraph::parse_int_list(lambda);
        job.J = wgraph::parse_int_list(J);
        job.K = wgraph::parse_int_list(K);
        job.variant = variant == "phi" ? wgraph::ParabolicVariant::Phi : wgraph::ParabolicVariant::Psi;
        job.format = format == "dot"     ? wgraph::ExportFormat::Dot
                     : format == "table" ? wgraph::ExportFormat::Table
                     : format == "none"  ? wgraph::ExportFormat::None
                                         : wgraph::ExportFormat::Json;
        job.verify = verify == "full"        ? wgraph::VerifyLevel::Full
                     : verify == "relations" ? wgraph::VerifyLevel::Relations
                                             : wgraph::VerifyLevel::None;
        job.slow_ok = slow_ok;
        job.threads = threads > 0 ? threads : wgraph::threads_from_env();
        job.out = out;
        job.report = report;
        job.stat_max_mu = stat == "max-mu";
        return wgraph::run_job(job, std::cout, std::cerr).exit_code;
    } catch (const wgraph::UsageError& e) {
        std::cerr << "wgraph: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "wgraph: " << e.what() << "\n";
        return 1;
    }
}
