#include "commands.hpp"

#include "run_report.hpp"

#include "logdet/errors.hpp"
#include "logdet/estimator.hpp"
#include "logdet/gmrf.hpp"
#include "logdet/matrix_market.hpp"
#include "logdet/oracle.hpp"
#include "logdet/spanning.hpp"
#include "logdet/spectral.hpp"
#include "logdet/synthetic.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace logdet::cli {

namespace {

using steady = std::chrono::steady_clock;

enum class Format { json, csv };

const std::map<std::string, Format> format_names{{"json", Format::json}, {"csv", Format::csv}};

struct Output {
    std::ostream& out;
    Format format;
    bool header_written = false;

    void emit(const RunReport& r) {
        if (format == Format::json) {
            out << to_json(r).dump() << '\n';
        } else {
            if (!header_written) out << csv_header() << '\n';
            header_written = true;
            out << to_csv(r) << '\n';
        }
    }
};

std::string join(const std::vector<std::string>& args) {
    std::string s = "logdet";
    for (const auto& a : args) s += ' ' + a;
    return s;
}

InputDescriptor describe(const std::string& path, const SparseMatrix& m) {
    return {path, m.rows(), m.cols(), m.nnz()};
}

double seconds_since(steady::time_point start) {
    return std::chrono::duration<double>(steady::now() - start).count();
}

void fill_params(ReportParams& p, const LogDetEstimate& est, const SpectrumBounds& b) {
    p.m = est.params.m;
    p.n = est.params.n;
    p.delta = est.delta;
    p.sigma_min = b.sigma_min;
    p.sigma_max = b.sigma_max;
    p.kappa = b.kappa();
    p.seed = est.params.seed;
}

void warn(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

// ---- logdet ---------------------------------------------------------------

struct LogdetOptions {
    std::string path;
    std::size_t m = 30;
    std::size_t n = 15;
    std::uint64_t seed = 0;
    std::optional<double> sigma_min, sigma_max, lambda_min, lambda_max, eps, zeta;
    bool pd = false;
    bool auto_bounds = false;
    bool oracle = false;
    std::size_t threads = 0;
    Format format = Format::json;
};

SpectrumBounds auto_bounds_pd(const SparseMatrix& b, std::uint64_t seed) {
    IterativeConfig cfg;
    cfg.seed = seed;
    const auto hi = power_iteration(b, cfg);
    const auto lo = sigma_min_inverse_power(b, cfg);
    const auto [g_lo, g_hi] = gershgorin_interval(b);
    return {std::max(lo.value, g_lo), std::min(hi.value, g_hi)};
}

SpectrumBounds auto_bounds_general(const SparseMatrix& c, std::uint64_t seed) {
    IterativeConfig cfg;
    cfg.seed = seed;
    const auto ctc = normal_operator(c);
    const double hi = std::min(std::sqrt(power_iteration(ctc, cfg).value), sigma_max_norm_bound(c));
    const double lo = std::sqrt(sigma_min_inverse_power(ctc, cfg, cg_defaults(c.rows())).value);
    return {lo, hi};
}

void cmd_logdet(const LogdetOptions& o, const std::string& command, Output& output, std::ostream& err) {
    const auto start = steady::now();
    const auto matrix = read_matrix_market(o.path);
    if (!matrix.is_square()) throw PreconditionError("log-determinant needs a square matrix");
    if (o.eps.has_value() != o.zeta.has_value())
        throw PreconditionError("--eps and --zeta must be given together");

    SpectrumBounds bounds;
    if (o.pd) {
        if (o.auto_bounds)
            bounds = auto_bounds_pd(matrix, o.seed);
        else if (o.lambda_min && o.lambda_max)
            bounds = {*o.lambda_min, *o.lambda_max};
        else
            throw PreconditionError("--pd needs --lambda-min and --lambda-max, or --auto-bounds");
        if (!matrix.is_symmetric(1e-12)) throw PreconditionError("--pd needs a symmetric matrix");
    } else {
        if (o.auto_bounds)
            bounds = auto_bounds_general(matrix, o.seed);
        else if (o.sigma_min && o.sigma_max)
            bounds = {*o.sigma_min, *o.sigma_max};
        else
            throw PreconditionError("need --sigma-min and --sigma-max, or --auto-bounds");
    }
    bounds.validate();

    EstimatorParams params{o.m, o.n, o.seed, o.threads};
    if (o.eps) {
        if (o.pd) {
            const double delta = std::min(bounds.sigma_min / (bounds.sigma_min + bounds.sigma_max), max_delta);
            params = theorem1_params(delta, *o.eps, *o.zeta);
        } else {
            params = theorem2_params(*o.eps, bounds.kappa(), *o.zeta);
        }
        params.seed = o.seed;
        params.threads = o.threads;
    }

    const auto est = o.pd ? logdet_pd(matrix, bounds, params) : logdet_general(matrix, bounds, params);
    warn(err, est.warnings);

    RunReport r;
    r.command = command;
    r.input = describe(o.path, matrix);
    r.gamma = est.gamma;
    fill_params(r.params, est, bounds);
    r.details["path"] = o.pd ? "pd" : "general";
    r.details["auto_bounds"] = o.auto_bounds;
    if (o.oracle) {
        double exact;
        if (matrix.rows() <= dense_oracle_limit)
            exact = exact_logdet_dense(matrix, o.pd ? DenseMode::cholesky_pd : DenseMode::lu_abs);
        else if (o.pd)
            exact = exact_logdet_sparse(matrix);
        else
            throw PreconditionError("exact oracle for non-symmetric input limited to dimension 4096");
        r.oracle = exact;
        r.relative_error = std::abs(est.gamma - exact) / std::abs(exact);
    }
    r.elapsed_seconds = seconds_since(start);
    output.emit(r);
}

// ---- exact ----------------------------------------------------------------

struct ExactOptions {
    std::string path;
    std::string mode = "cholesky";
    bool allow_large = false;
    Format format = Format::json;
};

void cmd_exact(const ExactOptions& o, const std::string& command, Output& output) {
    const auto start = steady::now();
    const auto matrix = read_matrix_market(o.path);
    const bool cholesky = o.mode == "cholesky";
    if (matrix.rows() > dense_oracle_limit && !o.allow_large)
        throw PreconditionError("dimension " + std::to_string(matrix.rows()) + " exceeds the dense oracle limit " +
                                std::to_string(dense_oracle_limit) + "; pass --allow-large to override");
    double value;
    std::string method;
    if (matrix.rows() > dense_oracle_limit && cholesky) {
        value = exact_logdet_sparse(matrix);
        method = "sparse_cholesky";
    } else {
        value = exact_logdet_dense(to_dense(matrix), cholesky ? DenseMode::cholesky_pd : DenseMode::lu_abs);
        method = cholesky ? "dense_cholesky" : "dense_lu";
    }
    RunReport r;
    r.command = command;
    r.input = describe(o.path, matrix);
    r.gamma = value;
    r.oracle = value;
    r.relative_error = 0.0;
    r.details["method"] = method;
    r.elapsed_seconds = seconds_since(start);
    output.emit(r);
}

// ---- spanning -------------------------------------------------------------

struct SpanningOptions {
    std::string path;
    double eps = 0.3;
    double zeta = 0.2;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    Format format = Format::json;
};

void cmd_spanning(const SpanningOptions& o, const std::string& command, Output& output) {
    const auto start = steady::now();
    const auto graph = read_graph(o.path);
    if (!graph.connected()) throw PreconditionError("graph is disconnected: it has no spanning tree");
    const auto est = count_spanning_trees(graph, o.eps, o.zeta, o.seed, o.threads);

    RunReport r;
    r.command = command;
    const auto reduced = reduced_laplacian(graph, est.hub);
    r.input = InputDescriptor{o.path, reduced.rows(), reduced.cols(), reduced.nnz()};
    r.details["vertices"] = graph.vertices();
    r.details["edges"] = graph.edges().size();
    r.gamma = est.log_tau;
    fill_params(r.params, est.estimate, est.bounds);
    r.details["hub"] = est.hub;
    r.details["eps"] = o.eps;
    r.details["zeta"] = o.zeta;
    r.details["eps0"] = est.eps0;
    r.details["exact_count"] = nullptr;
    if (graph.vertices() <= determinant_limit) {
        const auto exact = count_exact(graph);
        r.oracle = exact.log_tau;
        if (exact.count) r.details["exact_count"] = *exact.count;
        r.relative_error = exact.log_tau == 0.0 ? std::abs(est.log_tau)
                                                : std::abs(est.log_tau - exact.log_tau) / std::abs(exact.log_tau);
    }
    r.elapsed_seconds = seconds_since(start);
    output.emit(r);
}

// ---- gmrf-scan ------------------------------------------------------------

struct GmrfOptions {
    std::size_t rows = 100;
    std::size_t cols = 100;
    double true_rho = -0.22;
    std::size_t sweeps = 500;
    double rho_min = -0.24;
    double rho_max = 0.24;
    double rho_step = 0.02;
    std::size_t m = 30;
    std::size_t n = 40;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    Format format = Format::csv;
};

void cmd_gmrf_scan(const GmrfOptions& o, const std::string& command, std::ostream& out) {
    const auto start = steady::now();
    const LatticeSpec spec{o.rows, o.cols, o.true_rho};
    const auto sample = gibbs_sample(spec, o.sweeps, o.seed);
    const auto grid = rho_grid(o.rho_min, o.rho_max, o.rho_step);
    for (double rho : grid) LatticeSpec{o.rows, o.cols, rho}.validate();
    const EstimatorParams params{o.m, o.n, o.seed, o.threads};
    const auto scan = loglik_scan(sample, o.rows, o.cols, grid, params);

    if (o.format == Format::csv) {
        out << "rho,loglik\n" << std::setprecision(17);
        for (const auto& p : scan) out << p.rho << ',' << p.loglik << '\n';
        return;
    }
    RunReport r;
    r.command = command;
    r.input = InputDescriptor{"lattice", o.rows * o.cols, o.rows * o.cols,
                              lattice_precision(spec).nnz()};
    r.params.m = o.m;
    r.params.n = o.n;
    r.params.seed = o.seed;
    r.gamma = argmax_rho(scan);
    r.details["true_rho"] = o.true_rho;
    r.details["argmax_rho"] = argmax_rho(scan);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& p : scan) rows.push_back({{"rho", p.rho}, {"loglik", p.loglik}});
    r.details["scan"] = rows;
    r.elapsed_seconds = seconds_since(start);
    out << to_json(r).dump() << '\n';
}

// ---- bench ----------------------------------------------------------------

struct BenchOptions {
    std::vector<double> sizes{1e4, 2e4, 4e4};
    std::size_t nnz_per_row = 10;
    std::size_t m = 10;
    std::size_t n = 15;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    Format format = Format::csv;
};

void cmd_bench(const BenchOptions& o, const std::string& command, std::ostream& out) {
    if (o.nnz_per_row < 2) throw PreconditionError("--nnz-per-row must be at least 2");
    if (o.format == Format::csv) out << "d,nnz,elapsed_seconds,gamma\n";
    for (double size : o.sizes) {
        if (!(size >= 2.0) || size != std::floor(size))
            throw PreconditionError("sizes must be integers >= 2");
        const auto d = static_cast<std::size_t>(size);
        const auto c = random_sparse_pd(d, o.seed, o.nnz_per_row / 2);
        const SpectrumBounds bounds{1e-3, norm(c, NormKind::one)};
        const EstimatorParams params{o.m, o.n, o.seed, o.threads};
        const auto est = logdet_general(c, bounds, params);
        if (o.format == Format::csv) {
            out << d << ',' << c.nnz() << ',' << std::setprecision(6) << est.elapsed.count() << ','
                << std::setprecision(17) << est.gamma << '\n';
        } else {
            RunReport r;
            r.command = command;
            r.input = InputDescriptor{"synthetic", d, d, c.nnz()};
            r.gamma = est.gamma;
            fill_params(r.params, est, bounds);
            r.elapsed_seconds = est.elapsed.count();
            out << to_json(r).dump() << '\n';
        }
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic log-determinant estimation for large sparse matrices"};
    app.name("logdet");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    const std::string command = join(args);
    std::size_t threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (0 = LOGDET_NUM_THREADS or all cores); never changes results");

    LogdetOptions lo;
    auto* logdet_cmd = app.add_subcommand("logdet", "estimate log|det C| of a Matrix Market file");
    logdet_cmd->add_option("matrix", lo.path, "Matrix Market file")->required();
    logdet_cmd->add_option("--m", lo.m, "sample count")->check(CLI::PositiveNumber);
    logdet_cmd->add_option("--n", lo.n, "Chebyshev degree")->check(CLI::PositiveNumber);
    logdet_cmd->add_option("--seed", lo.seed, "64-bit RNG seed");
    logdet_cmd->add_option("--sigma-min", lo.sigma_min, "lower bound on singular values");
    logdet_cmd->add_option("--sigma-max", lo.sigma_max, "upper bound on singular values");
    logdet_cmd->add_flag("--pd", lo.pd, "symmetric positive definite input, use eigenvalue bounds");
    logdet_cmd->add_option("--lambda-min", lo.lambda_min, "lower eigenvalue bound (with --pd)");
    logdet_cmd->add_option("--lambda-max", lo.lambda_max, "upper eigenvalue bound (with --pd)");
    logdet_cmd->add_flag("--auto-bounds", lo.auto_bounds, "estimate bounds by (inverse) power iteration");
    logdet_cmd->add_option("--eps", lo.eps, "target accuracy; derives m and n from the error bounds");
    logdet_cmd->add_option("--zeta", lo.zeta, "failure probability for --eps");
    logdet_cmd->add_flag("--oracle", lo.oracle, "also compute the exact value and the relative error");
    logdet_cmd->add_option("--format", lo.format, "json or csv")
        ->transform(CLI::CheckedTransformer(format_names));

    ExactOptions eo;
    auto* exact_cmd = app.add_subcommand("exact", "exact log-determinant by factorization");
    exact_cmd->add_option("matrix", eo.path, "Matrix Market file")->required();
    exact_cmd->add_option("--mode", eo.mode, "cholesky (symmetric PD) or lu (log|det|)")
        ->check(CLI::IsMember({"cholesky", "lu"}));
    exact_cmd->add_flag("--allow-large", eo.allow_large, "allow dimensions above 4096");
    exact_cmd->add_option("--format", eo.format, "json or csv")->transform(CLI::CheckedTransformer(format_names));

    SpanningOptions so;
    auto* spanning_cmd = app.add_subcommand(
        "spanning",
        "estimate log(#spanning trees). Graph file: 'p <nvertices> <nedges>' then 'e <u> <v>' per "
        "edge, 0-indexed; the graph needs a vertex adjacent to all others");
    spanning_cmd->add_option("graph", so.path, "graph file")->required();
    spanning_cmd->add_option("--eps", so.eps, "multiplicative accuracy");
    spanning_cmd->add_option("--zeta", so.zeta, "failure probability");
    spanning_cmd->add_option("--seed", so.seed, "64-bit RNG seed");
    spanning_cmd->add_option("--format", so.format, "json or csv")->transform(CLI::CheckedTransformer(format_names));

    GmrfOptions go;
    auto* gmrf_cmd = app.add_subcommand("gmrf-scan", "Gibbs-sample a lattice GMRF and scan the rho log-likelihood");
    gmrf_cmd->add_option("--rows", go.rows)->check(CLI::PositiveNumber);
    gmrf_cmd->add_option("--cols", go.cols)->check(CLI::PositiveNumber);
    gmrf_cmd->add_option("--true-rho", go.true_rho, "coupling used to draw the sample (J = I + rho*Adj)");
    gmrf_cmd->add_option("--sweeps", go.sweeps, "Gibbs sweeps")->check(CLI::PositiveNumber);
    gmrf_cmd->add_option("--rho-min", go.rho_min);
    gmrf_cmd->add_option("--rho-max", go.rho_max);
    gmrf_cmd->add_option("--rho-step", go.rho_step);
    gmrf_cmd->add_option("--m", go.m)->check(CLI::PositiveNumber);
    gmrf_cmd->add_option("--n", go.n)->check(CLI::PositiveNumber);
    gmrf_cmd->add_option("--seed", go.seed, "64-bit seed for the sampler and the estimator");
    gmrf_cmd->add_option("--format", go.format, "csv (default) or json")->transform(CLI::CheckedTransformer(format_names));

    BenchOptions bo;
    auto* bench_cmd = app.add_subcommand("bench", "time the estimator on synthetic sparse PD matrices");
    bench_cmd->add_option("--sizes", bo.sizes, "comma-separated dimensions, e.g. 1e4,2e4")->delimiter(',');
    bench_cmd->add_option("--nnz-per-row", bo.nnz_per_row)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--m", bo.m)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--n", bo.n)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bo.seed);
    bench_cmd->add_option("--format", bo.format, "csv (default) or json")->transform(CLI::CheckedTransformer(format_names));

    // The estimator is the default command: `logdet file.mtx ...` means `logdet logdet file.mtx ...`.
    std::vector<std::string> argv = args;
    auto first = argv.begin();
    while (first != argv.end() && first->starts_with('-')) {
        const bool takes_value = *first == "--threads" && first + 1 != argv.end();
        first += takes_value ? 2 : 1;
    }
    if (first != argv.end() && !app.get_subcommand_no_throw(*first)) argv.insert(first, "logdet");

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_parse;
    }

    try {
        if (*logdet_cmd) {
            lo.threads = threads;
            Output o{out, lo.format};
            cmd_logdet(lo, command, o, err);
        } else if (*exact_cmd) {
            Output o{out, eo.format};
            cmd_exact(eo, command, o);
        } else if (*spanning_cmd) {
            so.threads = threads;
            Output o{out, so.format};
            cmd_spanning(so, command, o);
        } else if (*gmrf_cmd) {
            go.threads = threads;
            cmd_gmrf_scan(go, command, out);
        } else if (*bench_cmd) {
            bo.threads = threads;
            cmd_bench(bo, command, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return exit_precondition;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_ok;
}

} // namespace logdet::cli
