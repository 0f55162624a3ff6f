// Command-line front end: dataset generation, one-shot runs, tradeoff
// sweeps, exact baselines and the VC shattering check.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pivotcc/pivotcc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitIo = 4;

int cmd_gen(const std::string& dataset, const std::string& out,
            const std::string& gt_out, const std::string& format,
            std::optional<pivotcc::Seed> seed) {
    auto spec = pivotcc::parse_dataset_spec(dataset);
    if (seed) spec.gen_seed = *seed;
    auto ds = pivotcc::materialize_dataset(spec);
    pivotcc::save_instance(ds.instance, out, pivotcc::parse_instance_format(format));
    if (!gt_out.empty()) {
        if (!ds.ground_truth)
            throw pivotcc::parameter_error("dataset has no ground truth to write");
        pivotcc::save_ground_truth(*ds.ground_truth, gt_out);
    }
    std::printf("dataset=%s\nn=%u\npositive_edges=%llu\nout=%s\n", ds.id.c_str(),
                ds.instance.num_nodes(),
                static_cast<unsigned long long>(ds.instance.positive_edge_count()),
                out.c_str());
    return kExitOk;
}

int cmd_run(const std::string& dataset, const std::string& gt_path,
            const pivotcc::RunOnceParams& params) {
    auto ds = pivotcc::materialize_dataset(pivotcc::parse_dataset_spec(dataset));
    if (!gt_path.empty())
        ds.ground_truth = pivotcc::load_ground_truth(gt_path, ds.instance.num_nodes());
    auto report = pivotcc::run_once(ds, params);
    std::fputs(report.to_text().c_str(), stdout);
    return kExitOk;
}

int cmd_sweep(const pivotcc::ExperimentConfig& config) {
    auto records = pivotcc::run_sweep(config);
    if (config.out_path.empty())
        pivotcc::emit_csv(records, std::cout);
    else
        std::printf("wrote %zu records to %s\n", records.size(), config.out_path.c_str());
    return kExitOk;
}

int cmd_opt(const std::string& dataset, pivotcc::NodeId max_n) {
    auto ds = pivotcc::materialize_dataset(pivotcc::parse_dataset_spec(dataset));
    auto result = pivotcc::exact_opt(ds.instance, max_n);
    std::printf("dataset=%s\nn=%u\nopt=%llu\nclusters=%zu\n", ds.id.c_str(),
                ds.instance.num_nodes(), static_cast<unsigned long long>(result.opt_cost),
                result.argmin.clusters.size());
    for (std::size_t i = 0; i < result.argmin.clusters.size(); ++i) {
        std::printf("cluster_%zu=", i);
        const auto& members = result.argmin.clusters[i];
        for (std::size_t j = 0; j < members.size(); ++j)
            std::printf(j ? " %u" : "%u", members[j]);
        std::printf("\n");
    }
    return kExitOk;
}

int cmd_vc_check(pivotcc::NodeId n, pivotcc::NodeId max_n) {
    std::printf("n=%u\nmax_shattered_edge_set=%u\n", n, pivotcc::vc_shattering_check(n, max_n));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active correlation clustering under a pairwise-query budget"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a dataset and write it to a file");
    std::string gen_dataset, gen_out, gen_gt_out, gen_format = "edges";
    std::optional<pivotcc::Seed> gen_seed;
    gen->add_option("--dataset", gen_dataset, "Dataset spec (see README)")->required();
    gen->add_option("--out", gen_out, "Instance file path")->required();
    gen->add_option("--gt-out", gen_gt_out, "Ground-truth file path");
    gen->add_option("--format", gen_format, "Instance file format (edges)");
    gen->add_option("--seed", gen_seed, "Override the generator seed");

    // run
    auto* run = app.add_subcommand("run", "One seeded algorithm run, report to stdout");
    std::string run_dataset, run_gt;
    std::string run_algo = "acc";
    pivotcc::RunOnceParams params;
    std::optional<std::uint64_t> run_budget;
    run->add_option("--dataset", run_dataset, "Dataset spec")->required();
    run->add_option("--algo", run_algo, "kwik|acc|access|acr|erm");
    run->add_option("--alpha", params.alpha, "Query rate exponent, f(x)=x^alpha")
        ->check(CLI::Range(0.0, 1.0));
    run->add_option("--eta", params.eta, "Perturbation intensity");
    run->add_option("--seed", params.seed, "Master seed");
    run->add_option("--budget", run_budget, "Hard query budget");
    run->add_option("--acr-runs", params.acr_runs, "ACR runs (0 = 48*ceil(ln(10n)))");
    run->add_option("--erm-samples", params.erm_samples, "ERM samples (0 = n*ceil(f(n)))");
    run->add_option("--gt", run_gt, "Ground-truth file for recovery reporting");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Full (eta x alpha) tradeoff grid, CSV out");
    pivotcc::ExperimentConfig config;
    std::string sweep_algo = "acc";
    sweep->add_option("--dataset", config.dataset, "Dataset spec")->required();
    sweep->add_option("--algo", sweep_algo, "kwik|acc|access|acr|erm");
    sweep->add_option("--eta", config.etas, "Eta grid (default 0 0.1 0.5 1)")
        ->delimiter(',');
    sweep->add_option("--alpha", config.alphas, "Alpha grid (default 0,0.05,...,1)")
        ->delimiter(',');
    sweep->add_option("--reps", config.repetitions, "Repetitions per grid point");
    sweep->add_option("--seed", config.master_seed, "Master seed");
    sweep->add_option("--out", config.out_path, "CSV path (default: stdout)");
    sweep->add_option("--acr-runs", config.acr_runs, "ACR runs override");
    sweep->add_option("--erm-samples", config.erm_samples, "ERM samples override");

    // opt
    auto* opt = app.add_subcommand("opt", "Exact optimum by partition enumeration");
    std::string opt_dataset;
    pivotcc::NodeId opt_max_n = pivotcc::kMaxExactNodes;
    opt->add_option("--dataset", opt_dataset, "Dataset spec")->required();
    opt->add_option("--max-n", opt_max_n, "Raise the enumeration cap (warns)");

    // vc-check
    auto* vc = app.add_subcommand("vc-check", "Brute-force shattering dimension");
    pivotcc::NodeId vc_n = 4;
    pivotcc::NodeId vc_max_n = pivotcc::kMaxVcNodes;
    vc->add_option("--n", vc_n, "Node count (3..6)")->required();
    vc->add_option("--max-n", vc_max_n, "Raise the enumeration cap (warns)");

    try {
        app.parse(argc, argv);
        if (*gen) return cmd_gen(gen_dataset, gen_out, gen_gt_out, gen_format, gen_seed);
        if (*run) {
            params.algo = pivotcc::parse_algo(run_algo);
            params.budget = run_budget;
            return cmd_run(run_dataset, run_gt, params);
        }
        if (*sweep) {
            config.algo = pivotcc::parse_algo(sweep_algo);
            return cmd_sweep(config);
        }
        if (*opt) return cmd_opt(opt_dataset, opt_max_n);
        if (*vc) return cmd_vc_check(vc_n, vc_max_n);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParameter;
    } catch (const pivotcc::parameter_error& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return kExitParameter;
    } catch (const pivotcc::capacity_error& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return kExitCapacity;
    } catch (const pivotcc::io_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
