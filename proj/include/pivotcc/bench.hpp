#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pivotcc/algorithms.hpp"
#include "pivotcc/exact.hpp"
#include "pivotcc/instance.hpp"
#include "pivotcc/metrics.hpp"
#include "pivotcc/oracle.hpp"

namespace pivotcc {

// ---------------------------------------------------------------------------
// The skew fixture: 900 nodes in 30 clusters with geometric-decay sizes
// (ratio 0.9, normalized to 900). Sizes and membership seed are frozen so
// that "skew" always denotes the same instance.
// ---------------------------------------------------------------------------

inline constexpr std::array<NodeId, 30> kSkewClusterSizes = {
    95, 86, 76, 69, 62, 55, 50, 45, 40, 36, 33, 29, 27, 24, 22,
    19, 17, 16, 14, 13, 11, 10, 9,  8,  7,  7,  6,  5,  5,  4};

inline constexpr Seed kSkewMembershipSeed = 0;

inline std::pair<LabeledInstance, GroundTruthPartition> make_skew_instance() {
    std::vector<NodeId> sizes(kSkewClusterSizes.begin(), kSkewClusterSizes.end());
    return generate_clique_union(sizes, kSkewMembershipSeed);
}

// ---------------------------------------------------------------------------
// Dataset specs. Comma-free grammar so the spec string doubles as the CSV
// dataset id:
//   skew                        the fixture above
//   cliques:<sizes>[@seed]      sizes as '+'-joined items, each "S" or "CxS"
//                               (C cliques of S nodes), e.g. cliques:30x30
//   lb-cliques:<n>x<d>[@seed]   random assignment of n nodes to d cliques
//   lb-planted:<n>x<k>[x<alpha>][@seed]   planted construction, k = 1/eps
//   file:<path>                 instance file (External Interfaces format)
// The optional @seed pins the generator stream; default 0. Dataset identity
// is a pure function of the spec string, never of the experiment seed.
// ---------------------------------------------------------------------------

enum class DatasetKind { cliques, skew, lb_cliques, lb_planted, file };

struct DatasetSpec {
    std::string id;  // the original spec string (commas replaced by ';')
    DatasetKind kind = DatasetKind::skew;
    std::vector<NodeId> sizes;  // cliques
    NodeId n = 0;               // lb generators
    NodeId d = 0;               // lb-cliques
    NodeId k = 0;               // lb-planted
    double alpha = 0.9;         // lb-planted
    std::string path;           // file
    Seed gen_seed = 0;
};

namespace detail {

inline std::uint64_t parse_uint(const std::string& text, const std::string& what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw parameter_error("bad " + what + ": '" + text + "'");
    return value;
}

inline double parse_double(const std::string& text, const std::string& what) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw parameter_error("bad " + what + ": '" + text + "'");
    return value;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace detail

inline DatasetSpec parse_dataset_spec(const std::string& text) {
    DatasetSpec spec;
    spec.id = text;
    std::replace(spec.id.begin(), spec.id.end(), ',', ';');

    std::string body = text;
    if (body.rfind("file:", 0) == 0) {
        spec.kind = DatasetKind::file;
        spec.path = body.substr(5);
        if (spec.path.empty()) throw parameter_error("file: dataset needs a path");
        return spec;
    }
    if (auto at = body.find('@'); at != std::string::npos) {
        spec.gen_seed = detail::parse_uint(body.substr(at + 1), "dataset seed");
        body = body.substr(0, at);
    }
    if (body == "skew") {
        spec.kind = DatasetKind::skew;
        return spec;
    }
    auto colon = body.find(':');
    std::string head = body.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : body.substr(colon + 1);
    if (head == "cliques") {
        spec.kind = DatasetKind::cliques;
        for (const auto& item : detail::split(args, '+')) {
            auto x = item.find('x');
            if (x == std::string::npos) {
                spec.sizes.push_back(
                    static_cast<NodeId>(detail::parse_uint(item, "clique size")));
            } else {
                auto count = detail::parse_uint(item.substr(0, x), "clique count");
                auto size = detail::parse_uint(item.substr(x + 1), "clique size");
                for (std::uint64_t i = 0; i < count; ++i)
                    spec.sizes.push_back(static_cast<NodeId>(size));
            }
        }
        if (spec.sizes.empty()) throw parameter_error("cliques: dataset needs sizes");
        return spec;
    }
    if (head == "lb-cliques") {
        spec.kind = DatasetKind::lb_cliques;
        auto parts = detail::split(args, 'x');
        if (parts.size() != 2) throw parameter_error("lb-cliques:<n>x<d> expected");
        spec.n = static_cast<NodeId>(detail::parse_uint(parts[0], "n"));
        spec.d = static_cast<NodeId>(detail::parse_uint(parts[1], "d"));
        return spec;
    }
    if (head == "lb-planted") {
        spec.kind = DatasetKind::lb_planted;
        auto parts = detail::split(args, 'x');
        if (parts.size() != 2 && parts.size() != 3)
            throw parameter_error("lb-planted:<n>x<k>[x<alpha>] expected");
        spec.n = static_cast<NodeId>(detail::parse_uint(parts[0], "n"));
        spec.k = static_cast<NodeId>(detail::parse_uint(parts[1], "k"));
        if (spec.k < 1) throw parameter_error("lb-planted needs k >= 1");
        if (parts.size() == 3) spec.alpha = detail::parse_double(parts[2], "alpha");
        return spec;
    }
    throw parameter_error("unknown dataset spec: '" + text + "'");
}

struct Dataset {
    std::string id;
    LabeledInstance instance;
    std::optional<GroundTruthPartition> ground_truth;
};

inline Dataset materialize_dataset(const DatasetSpec& spec) {
    Dataset ds;
    ds.id = spec.id;
    switch (spec.kind) {
        case DatasetKind::skew: {
            auto [inst, gt] = make_skew_instance();
            ds.instance = std::move(inst);
            ds.ground_truth = std::move(gt);
            break;
        }
        case DatasetKind::cliques: {
            auto [inst, gt] = generate_clique_union(spec.sizes, spec.gen_seed);
            ds.instance = std::move(inst);
            ds.ground_truth = std::move(gt);
            break;
        }
        case DatasetKind::lb_cliques: {
            auto [inst, gt] = generate_lb_cliques(spec.n, spec.d, spec.gen_seed);
            ds.instance = std::move(inst);
            ds.ground_truth = std::move(gt);
            break;
        }
        case DatasetKind::lb_planted: {
            auto [inst, gt] =
                generate_lb_planted(spec.n, 1.0 / spec.k, spec.alpha, spec.gen_seed);
            ds.instance = std::move(inst);
            ds.ground_truth = std::move(gt);
            break;
        }
        case DatasetKind::file:
            ds.instance = load_instance(spec.path);
            break;
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Experiment harness.
// ---------------------------------------------------------------------------

enum class Algo { kwik, acc, access, acr, erm };

inline Algo parse_algo(const std::string& name) {
    if (name == "kwik") return Algo::kwik;
    if (name == "acc") return Algo::acc;
    if (name == "access") return Algo::access;
    if (name == "acr") return Algo::acr;
    if (name == "erm") return Algo::erm;
    throw parameter_error("unknown algorithm: '" + name + "' (want kwik|acc|access|acr|erm)");
}

inline const char* to_string(Algo a) {
    switch (a) {
        case Algo::kwik: return "kwik";
        case Algo::acc: return "acc";
        case Algo::access: return "access";
        case Algo::acr: return "acr";
        case Algo::erm: return "erm";
    }
    return "?";
}

inline std::vector<double> default_alpha_grid() {
    std::vector<double> alphas(21);
    for (int i = 0; i <= 20; ++i) alphas[i] = static_cast<double>(i) / 20.0;
    return alphas;
}

struct ExperimentConfig {
    std::string dataset = "skew";
    std::vector<double> etas = {0.0, 0.1, 0.5, 1.0};
    std::vector<double> alphas = default_alpha_grid();
    std::uint32_t repetitions = 20;
    Seed master_seed = 0;
    Algo algo = Algo::acc;
    std::string out_path;        // empty: no CSV written
    std::uint32_t acr_runs = 0;  // 0: 48*ceil(ln(n/0.1))
    std::uint64_t erm_samples = 0;  // 0: n*ceil(f(n)) per grid point

    void validate() const {
        if (repetitions < 1) throw parameter_error("repetitions must be >= 1");
        for (double a : alphas)
            if (a < 0 || a > 1) throw parameter_error("alpha values must lie in [0,1]");
        for (double e : etas)
            if (e < 0) throw parameter_error("eta values must be nonnegative");
    }
};

/// One grid point of a sweep: mean and sample variance of the query count
/// and the clustering cost over the repetitions.
struct TradeoffRecord {
    std::string dataset;
    double eta;
    double alpha;
    std::uint32_t repetitions;
    double mu_q;
    double var_q;
    double mu_delta;
    double var_delta;
    Seed seed;

    bool operator==(const TradeoffRecord&) const = default;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    assert(ec == std::errc{});
    return std::string(buf, ptr);
}

struct SampleStats {
    double mean = 0;
    double variance = 0;  // sample variance, n-1 denominator
};

inline SampleStats summarize(const std::vector<double>& xs) {
    SampleStats s;
    if (xs.empty()) return s;
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.variance = ss / static_cast<double>(xs.size() - 1);
    }
    return s;
}

struct SingleRun {
    std::uint64_t queries;
    std::uint64_t cost;
    Clustering clustering;
    std::optional<RunTrace> trace;
};

inline SingleRun execute(const LabeledInstance& instance, Algo algo,
                         const QueryRateFunction& f, Seed run_seed,
                         std::uint32_t acr_runs, std::uint64_t erm_samples,
                         std::optional<std::uint64_t> budget = std::nullopt) {
    SingleRun out{};
    switch (algo) {
        case Algo::kwik: {
            QueryOracle oracle(instance, budget);
            RunResult r = kwikcluster(oracle, run_seed);
            out = {oracle.queries_issued(), 0, std::move(r.clustering), std::move(r.trace)};
            break;
        }
        case Algo::acc: {
            QueryOracle oracle(instance, budget);
            RunResult r = acc(oracle, f, run_seed);
            out = {oracle.queries_issued(), 0, std::move(r.clustering), std::move(r.trace)};
            break;
        }
        case Algo::access: {
            QueryOracle oracle(instance, budget);
            RunResult r = pivotcc::access(oracle, f, run_seed);
            out = {oracle.queries_issued(), 0, std::move(r.clustering), std::move(r.trace)};
            break;
        }
        case Algo::acr: {
            std::uint32_t runs =
                acr_runs > 0 ? acr_runs : acr_default_runs(instance.num_nodes());
            AcrResult r = acr(instance, f, runs, run_seed);
            out = {r.total_queries, 0, std::move(r.clustering), std::nullopt};
            break;
        }
        case Algo::erm: {
            const NodeId n = instance.num_nodes();
            std::uint64_t samples =
                erm_samples > 0
                    ? erm_samples
                    : static_cast<std::uint64_t>(n) * f.sample_count(std::max<NodeId>(n, 1));
            QueryOracle oracle(instance, budget);
            Clustering c = erm_cc(oracle, samples, run_seed);
            out = {oracle.queries_issued(), 0, std::move(c), std::nullopt};
            break;
        }
    }
    out.cost = cost(instance, out.clustering);
    return out;
}

} // namespace detail

inline void emit_csv(const std::vector<TradeoffRecord>& records, std::ostream& out) {
    out << "dataset,eta,alpha,reps,mu_q,var_q,mu_delta,var_delta,seed\n";
    for (const auto& r : records)
        out << r.dataset << ',' << detail::format_double(r.eta) << ','
            << detail::format_double(r.alpha) << ',' << r.repetitions << ','
            << detail::format_double(r.mu_q) << ',' << detail::format_double(r.var_q) << ','
            << detail::format_double(r.mu_delta) << ',' << detail::format_double(r.var_delta)
            << ',' << r.seed << '\n';
}

inline void emit_csv(const std::vector<TradeoffRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    emit_csv(records, out);
    if (!out) throw io_error("write failed: " + path);
}

inline std::vector<TradeoffRecord> parse_tradeoff_csv(std::istream& in) {
    std::vector<TradeoffRecord> records;
    std::string line;
    if (!std::getline(in, line) || line != "dataset,eta,alpha,reps,mu_q,var_q,mu_delta,var_delta,seed")
        throw io_error("bad tradeoff CSV header");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = detail::split(line, ',');
        if (fields.size() != 9)
            throw io_error("tradeoff CSV line " + std::to_string(lineno) +
                           ": expected 9 fields");
        TradeoffRecord r;
        r.dataset = fields[0];
        r.eta = detail::parse_double(fields[1], "eta");
        r.alpha = detail::parse_double(fields[2], "alpha");
        r.repetitions = static_cast<std::uint32_t>(detail::parse_uint(fields[3], "reps"));
        r.mu_q = detail::parse_double(fields[4], "mu_q");
        r.var_q = detail::parse_double(fields[5], "var_q");
        r.mu_delta = detail::parse_double(fields[6], "mu_delta");
        r.var_delta = detail::parse_double(fields[7], "var_delta");
        r.seed = detail::parse_uint(fields[8], "seed");
        records.push_back(std::move(r));
    }
    return records;
}

inline std::vector<TradeoffRecord> parse_tradeoff_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    return parse_tradeoff_csv(in);
}

/**
 * Runs the full (eta x alpha) grid: one perturbed instance per eta (fixed
 * perturbation stream), `repetitions` seeded runs per grid point, aggregated
 * into TradeoffRecords sorted by (eta, alpha). Byte-identical CSV for equal
 * (config, master seed); every per-run seed is derived from the master seed
 * and the grid coordinates, so aggregation order is immaterial.
 */
inline std::vector<TradeoffRecord> run_sweep(const ExperimentConfig& config) {
    config.validate();
    Dataset base = materialize_dataset(parse_dataset_spec(config.dataset));
    [[maybe_unused]] const NodeId n = base.instance.num_nodes();

    std::vector<TradeoffRecord> records;
    for (std::size_t ie = 0; ie < config.etas.size(); ++ie) {
        const double eta = config.etas[ie];
        LabeledInstance instance =
            perturb(base.instance, eta, derive_seed(config.master_seed, kStreamPerturb, ie));
        for (std::size_t ia = 0; ia < config.alphas.size(); ++ia) {
            const double alpha = config.alphas[ia];
            QueryRateFunction f = QueryRateFunction::power_law(alpha);
            std::vector<double> qs, deltas;
            qs.reserve(config.repetitions);
            deltas.reserve(config.repetitions);
            for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
                Seed run_seed = derive_seed(config.master_seed, kStreamRun,
                                            (ie << 20) | ia, rep);
                detail::SingleRun run = detail::execute(instance, config.algo, f, run_seed,
                                                        config.acr_runs, config.erm_samples);
                if (config.algo == Algo::acc)
                    assert(run.queries <=
                           static_cast<std::uint64_t>(n) * f.sample_count(std::max<NodeId>(n, 1)));
                qs.push_back(static_cast<double>(run.queries));
                deltas.push_back(static_cast<double>(run.cost));
            }
            auto q_stats = detail::summarize(qs);
            auto d_stats = detail::summarize(deltas);
            records.push_back({base.id, eta, alpha, config.repetitions, q_stats.mean,
                               q_stats.variance, d_stats.mean, d_stats.variance,
                               config.master_seed});
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.eta != b.eta ? a.eta < b.eta : a.alpha < b.alpha;
    });
    if (!config.out_path.empty()) emit_csv(records, config.out_path);
    return records;
}

// ---------------------------------------------------------------------------
// One-shot runs.
// ---------------------------------------------------------------------------

struct RunOnceParams {
    Algo algo = Algo::acc;
    double alpha = 1.0;
    double eta = 0.0;
    Seed seed = 0;
    std::optional<std::uint64_t> budget;
    std::uint32_t acr_runs = 0;     // 0: default formula
    std::uint64_t erm_samples = 0;  // 0: n*ceil(f(n))
};

/// Flat key-value report of a single seeded run.
struct RunReport {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(const std::string& key, const std::string& value) {
        fields.emplace_back(key, value);
    }

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& [k, v] : fields) out << k << "=" << v << "\n";
        return out.str();
    }
};

inline RunReport run_once(const Dataset& dataset, const RunOnceParams& params) {
    LabeledInstance instance =
        perturb(dataset.instance, params.eta, derive_seed(params.seed, kStreamPerturb, 0));
    QueryRateFunction f = QueryRateFunction::power_law(params.alpha);
    detail::SingleRun run =
        detail::execute(instance, params.algo, f, derive_seed(params.seed, kStreamRun),
                        params.acr_runs, params.erm_samples, params.budget);

    RunReport report;
    report.add("algo", to_string(params.algo));
    report.add("dataset", dataset.id);
    report.add("n", std::to_string(instance.num_nodes()));
    report.add("positive_edges", std::to_string(instance.positive_edge_count()));
    report.add("eta", detail::format_double(params.eta));
    report.add("alpha", detail::format_double(params.alpha));
    report.add("seed", std::to_string(params.seed));
    if (params.algo == Algo::acr)
        report.add("acr_runs",
                   std::to_string(params.acr_runs > 0
                                      ? params.acr_runs
                                      : acr_default_runs(instance.num_nodes())));
    report.add("queries", std::to_string(run.queries));
    report.add("cost", std::to_string(run.cost));
    report.add("clusters", std::to_string(run.clustering.clusters.size()));
    if (run.trace) {
        report.add("rounds", std::to_string(run.trace->rounds.size()));
        report.add("leftover_singletons", std::to_string(run.trace->leftover_singletons));
        report.add("stop_reason", to_string(run.trace->stopped_by));
    }
    if (dataset.ground_truth) {
        auto latents = dataset.ground_truth->clusters();
        for (NodeId c = 0; c < latents.size(); ++c) {
            auto match = recovery_distance(latents[c], run.clustering);
            report.add("recovery_" + std::to_string(c), std::to_string(match.distance));
        }
    }
    return report;
}

} // namespace pivotcc
